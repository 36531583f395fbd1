#pragma once

#include "ndstc/cmatrix.hpp"
#include "ndstc/rng.hpp"

namespace ndstc {

/// Entries i.i.d. circularly symmetric CN(0, variance), drawn row-major.
CMatrix gaussian_matrix(RngStream& rng, std::size_t rows, std::size_t cols,
                        double variance = 1.0);

/// First `cols` columns of a random unitary: Gram-Schmidt on a Gaussian
/// matrix. cols <= rows required.
CMatrix random_unitary_columns(RngStream& rng, std::size_t rows,
                               std::size_t cols);

}  // namespace ndstc
