#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace hollowstab {

/// Dense real matrix with row-major storage and (i, j) access.
///
/// The class is a plain value type: copies are deep, instances are
/// immutable once constructed unless accessed through non-const
/// references, and there is no shared state, so values can be used
/// freely across threads.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols, double fill = 0.0);

  static DenseMatrix identity(int n);
  static DenseMatrix diagonal(std::span<const double> d);
  static DenseMatrix from_rows(
      std::initializer_list<std::initializer_list<double>> rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_ && rows_ > 0; }

  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  double* data() { return a_.data(); }
  const double* data() const { return a_.data(); }

  double trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  bool all_finite() const;

  std::vector<double> diagonal_entries() const;
  /// Largest |a_ii|.
  double max_abs_diagonal() const;
  /// max(diag) - min(diag).
  double diagonal_spread() const;

  DenseMatrix transposed() const;
  /// (A + A^T) / 2.
  DenseMatrix symmetric_part() const;

  DenseMatrix& operator+=(const DenseMatrix& rhs);
  DenseMatrix& operator-=(const DenseMatrix& rhs);
  DenseMatrix& operator*=(double s);

  /// Adds s to every diagonal entry.
  void shift_diagonal(double s);

  friend DenseMatrix operator+(DenseMatrix lhs, const DenseMatrix& rhs) { return lhs += rhs; }
  friend DenseMatrix operator-(DenseMatrix lhs, const DenseMatrix& rhs) { return lhs -= rhs; }
  friend DenseMatrix operator*(DenseMatrix lhs, double s) { return lhs *= s; }
  friend DenseMatrix operator*(double s, DenseMatrix rhs) { return rhs *= s; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

/// Plain O(n^3) product, used for reports and verification paths.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

/// A * x for a column vector x.
std::vector<double> matvec(const DenseMatrix& a, std::span<const double> x);

/// x^T A y; with x == y this is the quadratic form of A.
double quadratic_form(const DenseMatrix& a, std::span<const double> x,
                      std::span<const double> y);

/// ||Q^T Q - I||_F. Throws PreconditionError for non-square input.
double orthogonality_residual(const DenseMatrix& q);

/// Largest |a_ij - b_ij|; matrices must have equal shape.
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

double norm2(std::span<const double> x);

}  // namespace hollowstab
