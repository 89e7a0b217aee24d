#pragma once

#include <array>
#include <span>
#include <vector>

#include "hollowstab/accumulator.hpp"
#include "hollowstab/matrix.hpp"

namespace hollowstab {

/// Result of the simultaneous transformation of a zero-trace pair:
/// a_out is hollow and b_out is almost hollow (diagonal zero except the
/// last two entries, which are negatives of each other).
struct PairReport {
  OrthogonalAccumulator transform;
  DenseMatrix a_out;
  DenseMatrix b_out;
  int quartics_solved = 0;
};

/// Which case of the reduction produced the common neutral vector.
enum class NeutralBranch {
  b11_zero,             // a diagonal entry of B was negligible; v = e_j
  a_zero,               // y = 0, quadratic in x
  b_zero,               // x = 0, quadratic in y
  c_nonzero_quartic,    // generic case, quartic in x
  c_zero_quadratic,     // quartic degenerated to a quadratic
  c_zero_fallback_2x2,  // vector of the form (0, x, y)
};

struct NeutralPair3 {
  std::array<double, 3> v{};
  NeutralBranch branch = NeutralBranch::b11_zero;
};

/// Common neutral vector of a 3x3 symmetric hollow A3 and a 3x3
/// symmetric B3 normalized so that diag(B3) = (d-, d+, 1) with
/// d- < 0 < d+ (the caller performs the permutation and scaling).
/// Dispatches on the off-diagonal entries a = 2 A3(0,1), b = 2 A3(0,2),
/// c = 2 A3(1,2): a or b negligible gives a quadratic; otherwise the
/// elimination y = -a x / (b + c x) gives a quartic whose outer
/// coefficients d- b^2 < 0 < d+ c^2 force a real root; when c is
/// negligible and the quadratic has no real root, a vector of the form
/// (0, x, y) exists because the trailing 2x2 block of B3 cannot be
/// definite in that case.
NeutralPair3 common_neutral_vector_3(const DenseMatrix& a3,
                                     const DenseMatrix& b3);

/// Simultaneous orthogonal similarity of a zero-trace pair: A becomes
/// hollow, B almost hollow. A is hollowised first; then one dimension
/// is deflated at a time by fixing a common neutral direction found
/// from a pivoted 3x3 subproblem, at most n-2 quartic solves in total
/// and O(n^2) arithmetic overall.
///
/// tol <= 0 selects the default 1e2 * n * eps. Thresholds scale with
/// the input Frobenius norms.
PairReport pair_hollowise(const DenseMatrix& a, const DenseMatrix& b,
                          double tol = 0.0);

/// Realizes the convex combination (1-t) (u^T A u, u^T B u)
/// + t (v^T A v, v^T B v) as (x^T A x, x^T B x) for a unit vector x,
/// n >= 3, 0 < t < 1, u and v unit and linearly independent.
std::vector<double> realize_jnr_point(const DenseMatrix& a,
                                      const DenseMatrix& b,
                                      std::span<const double> u,
                                      std::span<const double> v, double t);

/// True when all |a_ii| <= tol.
bool is_hollow(const DenseMatrix& a, double tol);

/// True when |a_ii| <= tol for i < n-2 and |a_{n-2,n-2} + a_{n-1,n-1}|
/// <= tol (0-based indices).
bool is_almost_hollow(const DenseMatrix& a, double tol);

}  // namespace hollowstab
