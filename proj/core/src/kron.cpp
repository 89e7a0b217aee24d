#include "hollowstab/kron.hpp"

#include "hollowstab/errors.hpp"

namespace hollowstab {

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  if (!a.all_finite() || !b.all_finite()) {
    throw PreconditionError("kron: non-finite entry");
  }
  DenseMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (int ia = 0; ia < a.rows(); ++ia) {
    for (int ja = 0; ja < a.cols(); ++ja) {
      const double v = a(ia, ja);
      if (v == 0.0) continue;
      for (int ib = 0; ib < b.rows(); ++ib) {
        for (int jb = 0; jb < b.cols(); ++jb) {
          k(ia * b.rows() + ib, ja * b.cols() + jb) = v * b(ib, jb);
        }
      }
    }
  }
  return k;
}

std::vector<double> vec_columns(const DenseMatrix& x) {
  std::vector<double> v(static_cast<std::size_t>(x.rows()) * x.cols());
  for (int j = 0; j < x.cols(); ++j) {
    for (int i = 0; i < x.rows(); ++i) {
      v[static_cast<std::size_t>(i) + static_cast<std::size_t>(x.rows()) * j] = x(i, j);
    }
  }
  return v;
}

DenseMatrix unvec_columns(std::span<const double> v, int rows, int cols) {
  if (static_cast<int>(v.size()) != rows * cols) {
    throw PreconditionError("unvec_columns: length mismatch");
  }
  DenseMatrix x(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      x(i, j) = v[static_cast<std::size_t>(i) + static_cast<std::size_t>(rows) * j];
    }
  }
  return x;
}

}  // namespace hollowstab
