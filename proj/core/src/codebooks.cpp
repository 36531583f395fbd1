#include "ndstc/codebooks.hpp"

#include <cmath>
#include <limits>

#include "ndstc/errors.hpp"

namespace ndstc {
namespace {

bool is_pow2(std::size_t x) { return x >= 1 && (x & (x - 1)) == 0; }

std::size_t log2_exact(std::size_t x) {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < x) ++n;
  return n;
}

cplx unit_phase(double turns) {
  const double a = 2.0 * M_PI * turns;
  return {std::cos(a), std::sin(a)};
}

}  // namespace

Codebook Codebook::adsm(std::size_t dim, std::size_t psk_order) {
  if (dim < 2 || !is_pow2(dim))
    throw ParamError("adsm: dim must be a power of two >= 2");
  if (psk_order < 2 || !is_pow2(psk_order))
    throw ParamError("adsm: psk_order must be a power of two >= 2");
  Codebook cb;
  cb.scheme_ = CodebookScheme::kAdsm;
  cb.dim_ = dim;
  cb.psk_order_ = psk_order;
  cb.bits_ = log2_exact(dim) + log2_exact(psk_order);
  return cb;
}

Codebook Codebook::duc_from_u(std::size_t dim, std::size_t bits,
                              std::vector<std::uint32_t> u) {
  if (dim < 1) throw ParamError("duc: dim must be >= 1");
  if (bits < 1 || bits > 30) throw ParamError("duc: bits out of range");
  if (u.size() != dim) throw ParamError("duc: u must have dim entries");
  const std::uint32_t cap = std::uint32_t{1} << (bits - 1);
  std::uint32_t prev = 1;
  for (std::uint32_t e : u) {
    if (e < prev || e > cap)
      throw ParamError("duc: need 0 < u_1 <= ... <= u_M <= 2^(B-1)");
    prev = e;
  }
  Codebook cb;
  cb.scheme_ = CodebookScheme::kDuc;
  cb.dim_ = dim;
  cb.bits_ = bits;
  cb.duc_u_ = std::move(u);
  return cb;
}

double duc_search_budget(std::size_t dim, std::size_t bits) {
  // C(K + M - 1, M) with K = 2^(bits-1), in floating point to dodge overflow.
  const double k = static_cast<double>(std::size_t{1} << (bits - 1));
  double c = 1.0;
  for (std::size_t i = 1; i <= dim; ++i)
    c *= (k + static_cast<double>(dim - i)) / static_cast<double>(i);
  return c;
}

double duc_diversity_product(std::size_t dim, std::size_t bits,
                             const std::vector<std::uint32_t>& u) {
  const std::size_t q = std::size_t{1} << bits;
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t b = 1; b < q; ++b) {
    double prod = 1.0;
    for (std::size_t m = 0; m < dim; ++m)
      prod *= std::sin(M_PI * static_cast<double>(b) *
                       static_cast<double>(u[m]) / static_cast<double>(q));
    worst = std::min(worst, std::abs(prod));
  }
  return std::pow(worst, 1.0 / static_cast<double>(dim));
}

namespace {

// Enumerates nondecreasing u in [1, cap]^dim; keeps the lexicographically
// smallest argmax. min-over-b scan early-exits once below the incumbent.
struct DucSearch {
  std::size_t dim, bits, q, cap;
  std::vector<std::uint32_t> current, best;
  double best_metric = -1.0;

  double metric_floor(const std::vector<std::uint32_t>& u) const {
    double worst = std::numeric_limits<double>::infinity();
    const double limit = best_metric;
    for (std::size_t b = 1; b < q; ++b) {
      double prod = 1.0;
      for (std::size_t m = 0; m < dim; ++m)
        prod *= std::sin(M_PI * static_cast<double>(b) *
                         static_cast<double>(u[m]) / static_cast<double>(q));
      worst = std::min(worst, std::abs(prod));
      if (worst <= limit) return worst;  // cannot beat incumbent
    }
    return worst;
  }

  void recurse(std::size_t level, std::uint32_t lo) {
    if (level == dim) {
      const double m = metric_floor(current);
      if (m > best_metric) {
        best_metric = m;
        best = current;
      }
      return;
    }
    for (std::uint32_t v = lo; v <= cap; ++v) {
      current[level] = v;
      recurse(level + 1, v);
    }
  }
};

}  // namespace

Codebook Codebook::duc(std::size_t dim, std::size_t bits) {
  if (dim < 1) throw ParamError("duc: dim must be >= 1");
  if (bits < 1 || bits > 30) throw ParamError("duc: bits out of range");
  if (duc_search_budget(dim, bits) > 1e7)
    throw BudgetError("duc: exhaustive search budget exceeds 1e7 candidates");
  DucSearch s;
  s.dim = dim;
  s.bits = bits;
  s.q = std::size_t{1} << bits;
  s.cap = std::uint32_t{1} << (bits - 1);
  s.current.assign(dim, 1);
  s.recurse(0, 1);
  return duc_from_u(dim, bits, std::move(s.best));
}

CodewordToken Codebook::mul(CodewordToken a, CodewordToken b) const {
  if (scheme_ == CodebookScheme::kDuc) {
    const std::uint32_t mask = (std::uint32_t{1} << bits_) - 1;
    return {(a.phase + b.phase) & mask, 0};
  }
  // M^dim = exp(j*2*pi/L) * I, so shift overflow feeds back into the phase.
  const std::uint32_t shift_sum = a.shift + b.shift;
  const std::uint32_t wraps = shift_sum / static_cast<std::uint32_t>(dim_);
  const std::uint32_t lmask = static_cast<std::uint32_t>(psk_order_) - 1;
  return {(a.phase + b.phase + wraps) & lmask,
          shift_sum % static_cast<std::uint32_t>(dim_)};
}

CodewordToken Codebook::token_from_bits(std::uint64_t bits) const {
  if (bits >= size()) throw ParamError("token_from_bits: word out of range");
  if (scheme_ == CodebookScheme::kDuc)
    return {static_cast<std::uint32_t>(bits), 0};
  const std::size_t b2 = log2_exact(psk_order_);
  return {static_cast<std::uint32_t>(bits & (psk_order_ - 1)),
          static_cast<std::uint32_t>(bits >> b2)};
}

std::uint64_t Codebook::bits_from_token(CodewordToken t) const {
  if (scheme_ == CodebookScheme::kDuc) return t.phase;
  const std::size_t b2 = log2_exact(psk_order_);
  return (static_cast<std::uint64_t>(t.shift) << b2) | t.phase;
}

CMatrix Codebook::matrix(CodewordToken t) const {
  CMatrix x(dim_, dim_);
  if (scheme_ == CodebookScheme::kDuc) {
    const double q = static_cast<double>(std::size_t{1} << bits_);
    for (std::size_t m = 0; m < dim_; ++m)
      x(m, m) = unit_phase(static_cast<double>(t.phase) * duc_u_[m] / q);
    return x;
  }
  const double l = static_cast<double>(psk_order_);
  const cplx s = unit_phase(static_cast<double>(t.phase) / l);
  const cplx su = unit_phase((static_cast<double>(t.phase) + 1.0) / l);
  // Column c feeds row (c + shift) mod dim; wrapped entries pick up the
  // corner phase exp(j*2*pi/L).
  for (std::size_t c = 0; c < dim_; ++c) {
    const std::size_t r = (c + t.shift) % dim_;
    x(r, c) = (c + t.shift >= dim_) ? su : s;
  }
  return x;
}

void Codebook::apply_left(CMatrix& a, CodewordToken t) const {
  if (a.rows() != dim_) throw ParamError("apply_left: row count != dim");
  const std::size_t cols = a.cols();
  if (scheme_ == CodebookScheme::kDuc) {
    const double q = static_cast<double>(std::size_t{1} << bits_);
    for (std::size_t m = 0; m < dim_; ++m) {
      const cplx p = unit_phase(static_cast<double>(t.phase) * duc_u_[m] / q);
      for (std::size_t c = 0; c < cols; ++c) a(m, c) *= p;
    }
    return;
  }
  // (X * A)[r, :] = s * u^{[r < shift]} * A[(r - shift) mod dim, :].
  const double l = static_cast<double>(psk_order_);
  const cplx s = unit_phase(static_cast<double>(t.phase) / l);
  const cplx su = unit_phase((static_cast<double>(t.phase) + 1.0) / l);
  CMatrix out(dim_, cols);
  for (std::size_t r = 0; r < dim_; ++r) {
    const cplx coef = (r < t.shift) ? su : s;
    const std::size_t src = (r + dim_ - t.shift) % dim_;
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = coef * a(src, c);
  }
  a = std::move(out);
}

CodewordToken Codebook::inverse(CodewordToken t) const {
  if (scheme_ == CodebookScheme::kDuc) {
    const std::uint32_t mask = (std::uint32_t{1} << bits_) - 1;
    return {((std::uint32_t{1} << bits_) - t.phase) & mask, 0};
  }
  const std::uint32_t l = static_cast<std::uint32_t>(psk_order_);
  if (t.shift == 0) return {(l - t.phase) % l, 0};
  // (s M^m)^-1 = conj(s) u^-1 M^(dim-m) since M^dim = u I.
  return {(2 * l - t.phase - 1) % l,
          static_cast<std::uint32_t>(dim_) - t.shift};
}

void Codebook::apply_right(CMatrix& y, CodewordToken t) const {
  if (y.cols() != dim_) throw ParamError("apply_right: column count != dim");
  const std::size_t rows = y.rows();
  if (scheme_ == CodebookScheme::kDuc) {
    const double q = static_cast<double>(std::size_t{1} << bits_);
    for (std::size_t m = 0; m < dim_; ++m) {
      const cplx p = unit_phase(static_cast<double>(t.phase) * duc_u_[m] / q);
      for (std::size_t r = 0; r < rows; ++r) y(r, m) *= p;
    }
    return;
  }
  // (Y * X)[:, c] = s * u^{[c+shift >= dim]} * Y[:, (c+shift) mod dim].
  const double l = static_cast<double>(psk_order_);
  const cplx s = unit_phase(static_cast<double>(t.phase) / l);
  const cplx su = unit_phase((static_cast<double>(t.phase) + 1.0) / l);
  std::vector<cplx> row(dim_);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      const std::size_t src = c + t.shift;
      row[c] = (src >= dim_ ? su : s) * y(r, src % dim_);
    }
    for (std::size_t c = 0; c < dim_; ++c) y(r, c) = row[c];
  }
}

}  // namespace ndstc
