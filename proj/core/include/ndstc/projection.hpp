#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ndstc/cmatrix.hpp"
#include "ndstc/rng.hpp"

namespace ndstc {

/// theta -> [exp(j*theta_0), ..., exp(j*theta_{M-1})]^T / sqrt(M).
/// The gauge theta_0 = 0 is the caller's convention; this does not enforce it.
std::vector<cplx> e1_from_theta(const std::vector<double>& theta);

/// inner_n = e^H M^n e for n = 1..floor(M/2), where M is the ADSM cyclic
/// shift whose wrapped entries carry `corner` (= exp(j*2*pi/L)). O(M) per n.
std::vector<cplx> shift_inner_products(const std::vector<cplx>& e, cplx corner);

/// Self-interference objective f = sum_n |inner_n| and its smoothed variant
/// f_mu = sum_n sqrt(|inner_n|^2 + mu^2), with analytic gradient in theta.
/// grad[0] is forced to zero (gauge); at mu = 0 a vanishing |inner_n| gets
/// subgradient zero.
class DesignObjective {
 public:
  DesignObjective(std::size_t dim, std::size_t psk_order);

  std::size_t dim() const { return dim_; }

  double value(const std::vector<double>& theta, double mu = 0.0) const;
  double value_grad(const std::vector<double>& theta, std::vector<double>& grad,
                    double mu = 0.0) const;

 private:
  std::size_t dim_;
  cplx corner_;
};

struct DescentOptions {
  std::size_t restarts = 16;
  std::size_t max_iters = 2000;
  double tol = 1e-10;        // stop when the accepted decrease falls below
  double init_step = 0.25;
  // Smoothing continuation: each stage minimizes f_mu warm-started from the
  // previous one; the final stage must be exact (mu = 0).
  std::vector<double> mu_stages = {0.1, 0.01, 0.001, 0.0};
};

struct DesignResult {
  std::vector<double> theta;
  double f = 0.0;            // exact objective at theta
  std::size_t restart = 0;   // index of the winning start
  std::size_t iterations = 0;
};

/// Objective adaptor for the generic descent driver: returns f(theta) and,
/// when grad is non-null, fills the gradient.
using GradFn =
    std::function<double(const std::vector<double>&, std::vector<double>*)>;

/// Armijo backtracking gradient descent with the first coordinate pinned.
/// Mutates theta in place; returns the final objective value.
double armijo_descent(const GradFn& fn, std::vector<double>& theta,
                      std::size_t max_iters, double tol, double init_step,
                      std::size_t* iters_out = nullptr);

/// Multi-start minimization of the self-interference objective at size dim.
/// Start r uses rng.derive(r), so the result is independent of evaluation
/// order; ties on f break toward the lower restart index. Restarts may run
/// concurrently via `threads`.
DesignResult optimize_projection(std::size_t dim, std::size_t psk_order,
                                 const DescentOptions& opts, RngStream& rng,
                                 unsigned threads = 1);

/// Sparse expansion e(2M) = e(M) kron [1 0]^T, applied repeatedly until the
/// vector has target_dim entries; preserves the norm and keeps the nonzero
/// count at the original size.
std::vector<cplx> expand_sparse(std::vector<cplx> e, std::size_t target_dim);

/// P^t v where P is the cyclic down-rotation ((Pv)[r] = v[r-1 mod M]).
std::vector<cplx> rotate_down(const std::vector<cplx>& v, std::size_t t);

/// Time expansion: column t is P^t e1. Columns are exactly orthonormal when
/// t_cols <= dim / nonzero_count (disjoint supports); otherwise ParamError.
CMatrix expand_time(const std::vector<cplx>& e1, std::size_t t_cols,
                    std::size_t nonzero_count);

/// Coding gain of the ADSM codebook projected through e1 (columns of E1):
/// min over distinct codeword pairs of ||(X1 - X2) E1||_F^(2/n_exponent),
/// evaluated in closed form via w_n = tr(E1^H M^n E1).
double coding_gain(const CMatrix& e1, std::size_t psk_order,
                   double n_exponent = 2.0);

/// Conventional nonsquare bases: U = blockdiag(W, ..., W) with W the nb-point
/// DFT, sliced into M/t_cols matrices of t_cols consecutive columns.
/// Verifies power, normality, orthogonality and reconstructibility to 1e-10.
std::vector<CMatrix> conventional_bases(std::size_t dim, std::size_t nb,
                                        std::size_t t_cols);

}  // namespace ndstc
