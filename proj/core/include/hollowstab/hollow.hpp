#pragma once

#include <array>
#include <span>

#include "hollowstab/accumulator.hpp"
#include "hollowstab/matrix.hpp"

namespace hollowstab {

/// Result of a diagonal-shaping transform. `transformed` equals
/// Q^T A Q for the accumulated Q. For hollowise, max_abs_diagonal is
/// the largest remaining |a_ii|; for constant_diagonalise it is the
/// largest deviation from the common diagonal value.
struct HollowReport {
  OrthogonalAccumulator transform;
  DenseMatrix transformed;
  double max_abs_diagonal = 0.0;
  int rotations_used = 0;
};

/// Unit vector v with v^T S v = 0 for a symmetric 2x2 matrix S whose
/// quadratic form is not definite (the guaranteed case is
/// s11 * s22 <= 0). Returns e1 when s11 is negligible. Throws
/// PreconditionError when the form is definite and no real neutral
/// vector exists.
std::array<double, 2> neutral_vector_2x2(const DenseMatrix& s);

/// Scalar-entry variant of neutral_vector_2x2.
std::array<double, 2> neutral_vector_2x2(double s11, double s12, double s22);

/// Orthogonal similarity driving the diagonal of a zero-trace matrix to
/// zero. Entries with |a_ii| <= tol * ||A||_F count as already zero; if
/// nu entries are above that threshold, at most nu - 1 plane rotations
/// are spent. Each rotation pairs the most positive remaining diagonal
/// entry with the most negative one and annihilates the positive one,
/// working on the symmetric part (A is hollow exactly when A + A^T is).
///
/// tol <= 0 selects the default 1e2 * n * eps.
/// Throws PreconditionError when |tr A| > tol * ||A||_F.
HollowReport hollowise(const DenseMatrix& a, double tol = 0.0);

/// Orthogonal similarity making all diagonal entries equal to tr(A)/n:
/// hollowise(A - (tr A / n) I) with the shift added back.
HollowReport constant_diagonalise(const DenseMatrix& a);

/// Elimination core used by hollowise and by the pair/symplectic
/// pipelines: drives the diagonal of `a` below tol_abs in place,
/// pushing every rotation through `acc` and co-transforming `riders`.
/// Returns the number of rotations spent.
int hollowise_diagonal_inplace(DenseMatrix& a, double tol_abs,
                               OrthogonalAccumulator& acc,
                               std::span<DenseMatrix*> riders = {});

}  // namespace hollowstab
