#include "hollowstab/givens.hpp"

#include <cmath>

#include "hollowstab/errors.hpp"

namespace hollowstab {

namespace {

void check_indices(const DenseMatrix& a, const GivensRotation& g) {
  if (!a.square()) {
    throw PreconditionError("givens similarity: matrix not square");
  }
  if (g.i < 0 || g.j >= a.rows() || g.i >= g.j) {
    throw PreconditionError("givens similarity: indices out of bounds");
  }
}

}  // namespace

GivensRotation GivensRotation::from_cs(int i, int j, double c, double s) {
  if (i >= j) throw PreconditionError("GivensRotation: requires i < j");
  const double r = std::hypot(c, s);
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw PreconditionError("GivensRotation: (c, s) not normalizable");
  }
  return GivensRotation{i, j, c / r, s / r};
}

double GivensRotation::unit_defect() const {
  return std::abs(c * c + s * s - 1.0);
}

DenseMatrix apply_givens_similarity(const DenseMatrix& a,
                                    const GivensRotation& g) {
  DenseMatrix out = a;
  apply_givens_similarity_inplace(out, g);
  return out;
}

void apply_givens_similarity_inplace(DenseMatrix& a, const GivensRotation& g) {
  check_indices(a, g);
  const int n = a.rows();
  const int i = g.i, j = g.j;
  const double c = g.c, s = g.s;
  // G^T A: rows i and j.
  for (int k = 0; k < n; ++k) {
    const double ri = a(i, k), rj = a(j, k);
    a(i, k) = c * ri - s * rj;
    a(j, k) = s * ri + c * rj;
  }
  // (G^T A) G: columns i and j.
  for (int k = 0; k < n; ++k) {
    const double ci = a(k, i), cj = a(k, j);
    a(k, i) = c * ci - s * cj;
    a(k, j) = s * ci + c * cj;
  }
}

void apply_givens_right_inplace(DenseMatrix& q, const GivensRotation& g) {
  check_indices(q, g);
  const int n = q.rows();
  const double c = g.c, s = g.s;
  for (int k = 0; k < n; ++k) {
    const double ci = q(k, g.i), cj = q(k, g.j);
    q(k, g.i) = c * ci - s * cj;
    q(k, g.j) = s * ci + c * cj;
  }
}

}  // namespace hollowstab
