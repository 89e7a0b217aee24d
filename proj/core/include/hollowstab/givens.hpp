#pragma once

#include "hollowstab/matrix.hpp"

namespace hollowstab {

/// Plane rotation acting on coordinates (i, j), i < j. The realized
/// matrix G is the identity except that rows/columns (i, j) carry
/// [[c, s], [-s, c]]. Producers keep c^2 + s^2 = 1 to within a few ulps.
struct GivensRotation {
  int i = 0;
  int j = 1;
  double c = 1.0;
  double s = 0.0;

  /// Builds a rotation from a possibly unnormalized (c, s) pair.
  static GivensRotation from_cs(int i, int j, double c, double s);

  /// |c^2 + s^2 - 1|.
  double unit_defect() const;
};

/// Returns G^T A G. A must be square and the indices in bounds.
/// Only rows and columns i and j change, so the cost is O(n).
DenseMatrix apply_givens_similarity(const DenseMatrix& a,
                                    const GivensRotation& g);

/// In-place version of apply_givens_similarity.
void apply_givens_similarity_inplace(DenseMatrix& a, const GivensRotation& g);

/// Q <- Q * G (used when accumulating transforms).
void apply_givens_right_inplace(DenseMatrix& q, const GivensRotation& g);

}  // namespace hollowstab
