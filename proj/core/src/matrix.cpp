#include "hollowstab/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hollowstab/errors.hpp"

namespace hollowstab {

DenseMatrix::DenseMatrix(int rows, int cols, double fill)
    : rows_(rows), cols_(cols),
      a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill) {
  if (rows <= 0 || cols <= 0) {
    throw PreconditionError("DenseMatrix: dimensions must be positive");
  }
}

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> d) {
  DenseMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (int i = 0; i < m.rows(); ++i) m(i, i) = d[static_cast<std::size_t>(i)];
  return m;
}

DenseMatrix DenseMatrix::from_rows(
    std::initializer_list<std::initializer_list<double>> rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r > 0 ? static_cast<int>(rows.begin()->size()) : 0;
  DenseMatrix m(r, c);
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != c) {
      throw PreconditionError("DenseMatrix::from_rows: ragged rows");
    }
    int j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

double DenseMatrix::trace() const {
  double t = 0.0;
  const int n = std::min(rows_, cols_);
  for (int i = 0; i < n; ++i) t += (*this)(i, i);
  return t;
}

double DenseMatrix::frobenius_norm() const {
  // Two-pass scaling keeps the result finite for large entries.
  double m = max_abs();
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double v : a_) {
    const double r = v / m;
    s += r * r;
  }
  return m * std::sqrt(s);
}

double DenseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

bool DenseMatrix::all_finite() const {
  return std::all_of(a_.begin(), a_.end(),
                     [](double v) { return std::isfinite(v); });
}

std::vector<double> DenseMatrix::diagonal_entries() const {
  const int n = std::min(rows_, cols_);
  std::vector<double> d(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = (*this)(i, i);
  return d;
}

double DenseMatrix::max_abs_diagonal() const {
  double m = 0.0;
  const int n = std::min(rows_, cols_);
  for (int i = 0; i < n; ++i) m = std::max(m, std::abs((*this)(i, i)));
  return m;
}

double DenseMatrix::diagonal_spread() const {
  const int n = std::min(rows_, cols_);
  if (n == 0) return 0.0;
  double lo = (*this)(0, 0), hi = lo;
  for (int i = 1; i < n; ++i) {
    lo = std::min(lo, (*this)(i, i));
    hi = std::max(hi, (*this)(i, i));
  }
  return hi - lo;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

DenseMatrix DenseMatrix::symmetric_part() const {
  if (!square()) throw PreconditionError("symmetric_part: matrix not square");
  DenseMatrix s(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      s(i, j) = 0.5 * ((*this)(i, j) + (*this)(j, i));
  return s;
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw PreconditionError("operator+=: shape mismatch");
  }
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += rhs.a_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw PreconditionError("operator-=: shape mismatch");
  }
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= rhs.a_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(double s) {
  for (double& v : a_) v *= s;
  return *this;
}

void DenseMatrix::shift_diagonal(double s) {
  const int n = std::min(rows_, cols_);
  for (int i = 0; i < n; ++i) (*this)(i, i) += s;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw PreconditionError("matmul: shape mismatch");
  DenseMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

std::vector<double> matvec(const DenseMatrix& a, std::span<const double> x) {
  if (a.cols() != static_cast<int>(x.size())) {
    throw PreconditionError("matvec: shape mismatch");
  }
  std::vector<double> y(static_cast<std::size_t>(a.rows()), 0.0);
  for (int i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < a.cols(); ++j) s += a(i, j) * x[static_cast<std::size_t>(j)];
    y[static_cast<std::size_t>(i)] = s;
  }
  return y;
}

double quadratic_form(const DenseMatrix& a, std::span<const double> x,
                      std::span<const double> y) {
  if (a.rows() != static_cast<int>(x.size()) ||
      a.cols() != static_cast<int>(y.size())) {
    throw PreconditionError("quadratic_form: shape mismatch");
  }
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i) {
    double row = 0.0;
    for (int j = 0; j < a.cols(); ++j) row += a(i, j) * y[static_cast<std::size_t>(j)];
    s += x[static_cast<std::size_t>(i)] * row;
  }
  return s;
}

double orthogonality_residual(const DenseMatrix& q) {
  if (!q.square()) {
    throw PreconditionError("orthogonality_residual: matrix not square");
  }
  const int n = q.rows();
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double g = 0.0;
      for (int k = 0; k < n; ++k) g += q(k, i) * q(k, j);
      if (i == j) g -= 1.0;
      s += g * g;
    }
  }
  return std::sqrt(s);
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw PreconditionError("max_abs_diff: shape mismatch");
  }
  double m = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

double norm2(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double v : x) {
    const double r = v / m;
    s += r * r;
  }
  return m * std::sqrt(s);
}

}  // namespace hollowstab
