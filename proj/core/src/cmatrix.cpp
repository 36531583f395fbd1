#include "ndstc/cmatrix.hpp"

#include <cassert>
#include <cmath>

namespace ndstc {

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      out(c, r) = std::conj((*this)(r, c));
  return out;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
  assert(rows_ == other.rows_ && cols_ == other.cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
  assert(rows_ == other.rows_ && cols_ == other.cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (auto& x : data_) x *= s;
  return *this;
}

void mul_into(const CMatrix& a, const CMatrix& b, CMatrix& out) {
  assert(a.cols() == b.rows());
  assert(out.rows() == a.rows() && out.cols() == b.cols());
  const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
  for (std::size_t r = 0; r < n; ++r) {
    cplx* orow = out.data() + r * m;
    for (std::size_t c = 0; c < m; ++c) orow[c] = 0.0;
    for (std::size_t t = 0; t < k; ++t) {
      const cplx art = a(r, t);
      const cplx* brow = b.data() + t * m;
      for (std::size_t c = 0; c < m; ++c) orow[c] += art * brow[c];
    }
  }
}

CMatrix mul(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows(), b.cols());
  mul_into(a, b, out);
  return out;
}

void mul_adj_into(const CMatrix& a, const CMatrix& b, CMatrix& out) {
  assert(a.cols() == b.cols());
  assert(out.rows() == a.rows() && out.cols() == b.rows());
  const std::size_t n = a.rows(), k = a.cols(), m = b.rows();
  for (std::size_t r = 0; r < n; ++r) {
    const cplx* arow = a.data() + r * k;
    for (std::size_t c = 0; c < m; ++c) {
      const cplx* brow = b.data() + c * k;
      cplx acc = 0.0;
      for (std::size_t t = 0; t < k; ++t) acc += arow[t] * std::conj(brow[t]);
      out(r, c) = acc;
    }
  }
}

CMatrix mul_adj(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows(), b.rows());
  mul_adj_into(a, b, out);
  return out;
}

double fro_norm_sq(const CMatrix& a) {
  double acc = 0.0;
  const cplx* p = a.data();
  const std::size_t n = a.rows() * a.cols();
  for (std::size_t i = 0; i < n; ++i) acc += std::norm(p[i]);
  return acc;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  assert(a.rows() == b.rows() && a.cols() == b.cols());
  double worst = 0.0;
  const std::size_t n = a.rows() * a.cols();
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::abs(a.data()[i] - b.data()[i]);
    if (d > worst) worst = d;
  }
  return worst;
}

bool is_finite(const CMatrix& a) {
  const std::size_t n = a.rows() * a.cols();
  for (std::size_t i = 0; i < n; ++i) {
    const cplx& x = a.data()[i];
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
  }
  return true;
}

}  // namespace ndstc
