#include "ndstc/projection.hpp"

#include <algorithm>
#include <cmath>

#include "ndstc/errors.hpp"
#include "ndstc/parallel.hpp"

namespace ndstc {
namespace {

bool is_pow2(std::size_t x) { return x >= 1 && (x & (x - 1)) == 0; }

cplx corner_phase(std::size_t psk_order) {
  const double a = 2.0 * M_PI / static_cast<double>(psk_order);
  return {std::cos(a), std::sin(a)};
}

}  // namespace

std::vector<cplx> e1_from_theta(const std::vector<double>& theta) {
  const std::size_t m = theta.size();
  if (m == 0) throw ParamError("e1_from_theta: empty theta");
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  std::vector<cplx> e(m);
  for (std::size_t k = 0; k < m; ++k)
    e[k] = cplx(std::cos(theta[k]), std::sin(theta[k])) * scale;
  return e;
}

std::vector<cplx> shift_inner_products(const std::vector<cplx>& e, cplx corner) {
  const std::size_t m = e.size();
  std::vector<cplx> inner(m / 2);
  for (std::size_t n = 1; n <= m / 2; ++n) {
    cplx acc = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      cplx term = std::conj(e[(k + n) % m]) * e[k];
      if (k + n >= m) term *= corner;
      acc += term;
    }
    inner[n - 1] = acc;
  }
  return inner;
}

DesignObjective::DesignObjective(std::size_t dim, std::size_t psk_order)
    : dim_(dim), corner_(corner_phase(psk_order)) {
  if (dim < 2 || !is_pow2(dim))
    throw ParamError("DesignObjective: dim must be a power of two >= 2");
  if (psk_order < 2 || !is_pow2(psk_order))
    throw ParamError("DesignObjective: psk_order must be a power of two >= 2");
}

double DesignObjective::value(const std::vector<double>& theta, double mu) const {
  if (theta.size() != dim_) throw ParamError("objective: theta size != dim");
  const std::vector<cplx> e = e1_from_theta(theta);
  const std::vector<cplx> inner = shift_inner_products(e, corner_);
  double f = 0.0;
  for (const cplx& w : inner) f += std::sqrt(std::norm(w) + mu * mu);
  // At mu = 0 sqrt(norm) is exactly |w|; keep one code path.
  return f;
}

double DesignObjective::value_grad(const std::vector<double>& theta,
                                   std::vector<double>& grad, double mu) const {
  if (theta.size() != dim_) throw ParamError("objective: theta size != dim");
  const std::size_t m = dim_;
  const std::vector<cplx> e = e1_from_theta(theta);
  grad.assign(m, 0.0);
  double f = 0.0;
  std::vector<cplx> c(m);  // summands of inner_n, reused per n
  for (std::size_t n = 1; n <= m / 2; ++n) {
    cplx inner = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      cplx term = std::conj(e[(k + n) % m]) * e[k];
      if (k + n >= m) term *= corner_;
      c[k] = term;
      inner += term;
    }
    const double r = std::sqrt(std::norm(inner) + mu * mu);
    f += r;
    if (r < 1e-12) continue;  // subgradient 0 at the kink
    // d inner / d theta_k = j*(c_k - c_{k-n mod m}): theta_k enters c_k via
    // e[k] and c_{k-n} via conj(e[k]).
    const cplx iconj = std::conj(inner) / r;
    for (std::size_t k = 0; k < m; ++k) {
      const cplx d = cplx(0.0, 1.0) * (c[k] - c[(k + m - n) % m]);
      grad[k] += (iconj * d).real();
    }
  }
  grad[0] = 0.0;  // gauge
  return f;
}

double armijo_descent(const GradFn& fn, std::vector<double>& theta,
                      std::size_t max_iters, double tol, double init_step,
                      std::size_t* iters_out) {
  std::vector<double> grad, trial;
  double f = fn(theta, &grad);
  double step = init_step;
  std::size_t iters = 0;
  for (; iters < max_iters; ++iters) {
    grad[0] = 0.0;
    double gnorm2 = 0.0;
    for (double g : grad) gnorm2 += g * g;
    if (gnorm2 < 1e-30) break;
    // Backtrack until the Armijo decrease holds.
    double f_trial = f;
    bool accepted = false;
    while (step > 1e-16) {
      trial = theta;
      for (std::size_t k = 0; k < theta.size(); ++k) trial[k] -= step * grad[k];
      f_trial = fn(trial, nullptr);
      if (f_trial <= f - 1e-4 * step * gnorm2) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    const double decrease = f - f_trial;
    theta.swap(trial);
    f = fn(theta, &grad);
    step = std::min(step * 2.0, 64.0 * init_step);
    if (decrease < tol) break;
  }
  if (iters_out) *iters_out = iters;
  return f;
}

DesignResult optimize_projection(std::size_t dim, std::size_t psk_order,
                                 const DescentOptions& opts, RngStream& rng,
                                 unsigned threads) {
  if (opts.restarts == 0) throw ParamError("optimize_projection: no restarts");
  if (opts.mu_stages.empty() || opts.mu_stages.back() != 0.0)
    throw ParamError("optimize_projection: mu_stages must end at 0");
  const DesignObjective obj(dim, psk_order);

  std::vector<DesignResult> results(opts.restarts);
  parallel_for(opts.restarts, threads, [&](std::size_t r) {
    RngStream local = rng.derive(r);
    std::vector<double> theta(dim, 0.0);
    for (std::size_t k = 1; k < dim; ++k)
      theta[k] = 2.0 * M_PI * local.next_double();

    DesignResult best;
    best.theta = theta;
    best.f = obj.value(theta);
    best.restart = r;
    std::size_t total_iters = 0;
    for (double mu : opts.mu_stages) {
      const GradFn fn = [&obj, mu](const std::vector<double>& t,
                                   std::vector<double>* g) {
        if (g) return obj.value_grad(t, *g, mu);
        return obj.value(t, mu);
      };
      std::size_t it = 0;
      armijo_descent(fn, theta, opts.max_iters, opts.tol, opts.init_step, &it);
      total_iters += it;
      const double exact = obj.value(theta);
      if (exact < best.f) {
        best.f = exact;
        best.theta = theta;
      }
    }
    best.iterations = total_iters;
    results[r] = std::move(best);
  });

  std::size_t win = 0;
  for (std::size_t r = 1; r < results.size(); ++r)
    if (results[r].f < results[win].f) win = r;
  return results[win];
}

std::vector<cplx> expand_sparse(std::vector<cplx> e, std::size_t target_dim) {
  if (e.empty()) throw ParamError("expand_sparse: empty vector");
  if (target_dim < e.size() || target_dim % e.size() != 0 ||
      !is_pow2(target_dim / e.size()))
    throw ParamError("expand_sparse: target must be size * 2^k");
  while (e.size() < target_dim) {
    std::vector<cplx> next(e.size() * 2, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < e.size(); ++k) next[2 * k] = e[k];
    e = std::move(next);
  }
  return e;
}

std::vector<cplx> rotate_down(const std::vector<cplx>& v, std::size_t t) {
  const std::size_t m = v.size();
  std::vector<cplx> out(m);
  for (std::size_t r = 0; r < m; ++r) out[r] = v[(r + m - t % m) % m];
  return out;
}

CMatrix expand_time(const std::vector<cplx>& e1, std::size_t t_cols,
                    std::size_t nonzero_count) {
  const std::size_t m = e1.size();
  if (t_cols == 0) throw ParamError("expand_time: t_cols must be >= 1");
  if (nonzero_count == 0 || nonzero_count > m)
    throw ParamError("expand_time: bad nonzero_count");
  if (t_cols > m / nonzero_count)
    throw ParamError("expand_time: need t_cols <= dim / nonzero_count");
  CMatrix e(m, t_cols);
  for (std::size_t t = 0; t < t_cols; ++t) {
    const std::vector<cplx> col = rotate_down(e1, t);
    for (std::size_t r = 0; r < m; ++r) e(r, t) = col[r];
  }
  // Shifted supports are disjoint under the t_cols bound, so this only
  // guards against a caller lying about the sparsity.
  CMatrix gram = mul(e.adjoint(), e);
  if (max_abs_diff(gram, CMatrix::identity(t_cols)) > 1e-10)
    throw NumericalError("expand_time: columns not orthonormal");
  return e;
}

double coding_gain(const CMatrix& e1, std::size_t psk_order,
                   double n_exponent) {
  const std::size_t m = e1.rows();
  const std::size_t t_cols = e1.cols();
  if (m < 2) throw ParamError("coding_gain: dim must be >= 2");
  if (psk_order < 2) throw ParamError("coding_gain: psk_order must be >= 2");
  const cplx corner = corner_phase(psk_order);

  // w_n = tr(E1^H M^n E1) accumulated column by column.
  std::vector<cplx> w(m / 2, cplx(0.0, 0.0));
  std::vector<cplx> col(m);
  for (std::size_t t = 0; t < t_cols; ++t) {
    for (std::size_t r = 0; r < m; ++r) col[r] = e1(r, t);
    const std::vector<cplx> inner = shift_inner_products(col, corner);
    for (std::size_t n = 0; n < inner.size(); ++n) w[n] += inner[n];
  }

  const double tt = static_cast<double>(t_cols);
  // Same shift, distinct symbols: d^2 = T * min |s1 - s2|^2.
  const double min_dsym =
      2.0 - 2.0 * std::cos(2.0 * M_PI / static_cast<double>(psk_order));
  double d2 = tt * min_dsym;
  // Distinct shifts n and L-PSK factor s: d^2 = 2T - 2 Re(s * w_n); shifts
  // n and M-n give the same minimum, so n runs to M/2 only.
  for (std::size_t n = 0; n < w.size(); ++n) {
    double best_re = -1e300;
    for (std::size_t si = 0; si < psk_order; ++si) {
      const double a = 2.0 * M_PI * static_cast<double>(si) /
                       static_cast<double>(psk_order);
      const cplx s(std::cos(a), std::sin(a));
      best_re = std::max(best_re, (s * w[n]).real());
    }
    d2 = std::min(d2, 2.0 * tt - 2.0 * best_re);
  }
  return std::pow(std::max(d2, 0.0), 1.0 / n_exponent);
}

std::vector<CMatrix> conventional_bases(std::size_t dim, std::size_t nb,
                                        std::size_t t_cols) {
  if (nb < 1 || dim % nb != 0)
    throw ParamError("conventional_bases: nb must divide dim");
  if (t_cols < 1 || dim % t_cols != 0)
    throw ParamError("conventional_bases: t_cols must divide dim");

  CMatrix u(dim, dim);
  const double scale = 1.0 / std::sqrt(static_cast<double>(nb));
  for (std::size_t blk = 0; blk < dim / nb; ++blk)
    for (std::size_t a = 0; a < nb; ++a)
      for (std::size_t b = 0; b < nb; ++b) {
        const double ang = -2.0 * M_PI * static_cast<double>(a * b) /
                           static_cast<double>(nb);
        u(blk * nb + a, blk * nb + b) =
            cplx(std::cos(ang), std::sin(ang)) * scale;
      }

  const std::size_t count = dim / t_cols;
  std::vector<CMatrix> bases(count, CMatrix(dim, t_cols));
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < t_cols; ++c)
        bases[i](r, c) = u(r, i * t_cols + c);

  // Power / normality / orthogonality / reconstructibility.
  CMatrix recon(dim, dim);
  for (std::size_t i = 0; i < count; ++i) {
    const CMatrix gram = mul(bases[i].adjoint(), bases[i]);
    if (max_abs_diff(gram, CMatrix::identity(t_cols)) > 1e-10)
      throw NumericalError("conventional_bases: basis not orthonormal");
    if (std::abs(fro_norm_sq(bases[i]) - static_cast<double>(t_cols)) > 1e-10)
      throw NumericalError("conventional_bases: basis power off");
    for (std::size_t j = i + 1; j < count; ++j) {
      const CMatrix cross = mul(bases[i].adjoint(), bases[j]);
      if (max_abs_diff(cross, CMatrix(t_cols, t_cols)) > 1e-10)
        throw NumericalError("conventional_bases: bases not orthogonal");
    }
    recon += mul_adj(bases[i], bases[i]);
  }
  if (max_abs_diff(recon, CMatrix::identity(dim)) > 1e-10)
    throw NumericalError("conventional_bases: reconstruction violated");
  return bases;
}

}  // namespace ndstc
