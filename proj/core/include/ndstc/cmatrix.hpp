#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace ndstc {

using cplx = std::complex<double>;

// Dense row-major complex matrix. Sizes here are tiny (M <= 64), so the
// implementation favors clarity over blocking; mul() is the only hot path
// and is kept allocation-free per call site via the *_into variants.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static CMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }

  CMatrix adjoint() const;

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(cplx s);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

// out = A * B; out must not alias A or B.
void mul_into(const CMatrix& a, const CMatrix& b, CMatrix& out);
CMatrix mul(const CMatrix& a, const CMatrix& b);

// out = A * B^H; out must not alias A or B.
void mul_adj_into(const CMatrix& a, const CMatrix& b, CMatrix& out);
CMatrix mul_adj(const CMatrix& a, const CMatrix& b);

double fro_norm_sq(const CMatrix& a);
double max_abs_diff(const CMatrix& a, const CMatrix& b);
bool is_finite(const CMatrix& a);

}  // namespace ndstc
