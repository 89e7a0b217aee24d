#pragma once

#include <span>
#include <vector>

#include "hollowstab/matrix.hpp"

namespace hollowstab {

/// Kronecker product; block (i, j) of the result equals a_ij * B.
DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);

/// Column-stacking vectorization: vec(X)[i + rows * j] = X(i, j).
/// Under this convention vec(N X + X N^T) = (I (x) N + N (x) I) vec(X)
/// and vec(M X M^T) = (M (x) M) vec(X).
std::vector<double> vec_columns(const DenseMatrix& x);

/// Inverse of vec_columns.
DenseMatrix unvec_columns(std::span<const double> v, int rows, int cols);

}  // namespace hollowstab
