#include "ndstc/rng.hpp"

#include <cmath>

#include "ndstc/errors.hpp"
#include "ndstc/random_matrix.hpp"

namespace ndstc {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed),
      stream_id_(stream_id),
      state_(mix64(master_seed ^ mix64(stream_id * kGolden + 1))) {}

RngStream RngStream::derive(std::uint64_t child_id) const {
  return RngStream(master_seed_, mix64(stream_id_ + kGolden) ^ (child_id + 1));
}

std::uint64_t RngStream::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double RngStream::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller; u strictly positive so log is finite.
  double u = 0.0;
  do {
    u = next_double();
  } while (u <= 0.0);
  const double v = next_double();
  const double radius = std::sqrt(-2.0 * std::log(u));
  const double angle = 2.0 * M_PI * v;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::complex<double> RngStream::next_cgaussian(double variance) {
  const double scale = std::sqrt(variance / 2.0);
  const double re = next_gaussian();
  const double im = next_gaussian();
  return {scale * re, scale * im};
}

std::uint64_t RngStream::next_below(std::uint64_t n) {
  // Rejection sampling over the widest multiple of n.
  const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
  std::uint64_t x = next_u64();
  while (x >= limit) x = next_u64();
  return x % n;
}

CMatrix gaussian_matrix(RngStream& rng, std::size_t rows, std::size_t cols,
                        double variance) {
  CMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.next_cgaussian(variance);
  return m;
}

CMatrix random_unitary_columns(RngStream& rng, std::size_t rows,
                               std::size_t cols) {
  if (cols > rows) throw ParamError("random_unitary_columns: cols > rows");
  CMatrix g = gaussian_matrix(rng, rows, cols);
  // Modified Gram-Schmidt, re-orthogonalized once ("twice is enough").
  for (std::size_t j = 0; j < cols; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < j; ++i) {
        cplx proj = 0.0;
        for (std::size_t r = 0; r < rows; ++r)
          proj += std::conj(g(r, i)) * g(r, j);
        for (std::size_t r = 0; r < rows; ++r) g(r, j) -= proj * g(r, i);
      }
    }
    double nrm = 0.0;
    for (std::size_t r = 0; r < rows; ++r) nrm += std::norm(g(r, j));
    nrm = std::sqrt(nrm);
    if (nrm < 1e-12)
      throw NumericalError("random_unitary_columns: rank-deficient draw");
    for (std::size_t r = 0; r < rows; ++r) g(r, j) /= nrm;
  }
  return g;
}

}  // namespace ndstc
