#include "hollowstab/hollow.hpp"

#include <cmath>
#include <limits>

#include "hollowstab/errors.hpp"

namespace hollowstab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double default_tol(int n) { return 1e2 * n * kEps; }

// Roots of s11 x^2 + 2 s12 x + s22 = 0 via the cancellation-safe
// q-formula; picks the root of smaller magnitude, ties toward the
// positive one. The discriminant is clamped at zero when it is
// negative by no more than `clamp`.
double smaller_quadratic_root(double s11, double s12, double s22,
                              double clamp) {
  double disc = s12 * s12 - s11 * s22;
  if (disc < 0.0) {
    if (disc < -clamp) {
      throw PreconditionError("neutral_vector_2x2: form is definite");
    }
    disc = 0.0;
  }
  const double sq = std::sqrt(disc);
  const double q = -(s12 + (s12 >= 0.0 ? sq : -sq));
  if (q == 0.0) return 0.0;  // s12 = 0 and s11 s22 = 0
  const double x1 = q / s11;
  const double x2 = s22 / q;
  const double a1 = std::abs(x1), a2 = std::abs(x2);
  if (a1 < a2) return x1;
  if (a2 < a1) return x2;
  return std::max(x1, x2);
}

}  // namespace

std::array<double, 2> neutral_vector_2x2(double s11, double s12, double s22) {
  const double scale =
      std::max({std::abs(s11), std::abs(s12), std::abs(s22)});
  if (scale == 0.0) return {1.0, 0.0};
  if (std::abs(s11) <= 1e2 * kEps * scale) return {1.0, 0.0};
  double x = smaller_quadratic_root(s11, s12, s22, 4.0 * kEps * scale * scale);
  // One Newton step tightens the residual of the normalized vector.
  const double df = 2.0 * (s11 * x + s12);
  if (df != 0.0) {
    const double f = (s11 * x + 2.0 * s12) * x + s22;
    const double step = f / df;
    if (std::isfinite(step)) x -= step;
  }
  const double r = std::hypot(x, 1.0);
  return {x / r, 1.0 / r};
}

std::array<double, 2> neutral_vector_2x2(const DenseMatrix& s) {
  if (s.rows() != 2 || s.cols() != 2) {
    throw PreconditionError("neutral_vector_2x2: expected a 2x2 matrix");
  }
  return neutral_vector_2x2(s(0, 0), 0.5 * (s(0, 1) + s(1, 0)), s(1, 1));
}

int hollowise_diagonal_inplace(DenseMatrix& a, double tol_abs,
                               OrthogonalAccumulator& acc,
                               std::span<DenseMatrix*> riders) {
  const int n = a.rows();
  int rotations = 0;
  for (int guard = 0; guard < n; ++guard) {
    int p = -1, m = -1;
    int active = 0;
    for (int i = 0; i < n; ++i) {
      const double d = a(i, i);
      if (std::abs(d) <= tol_abs) continue;
      ++active;
      if (d > 0.0 && (p < 0 || d > a(p, p))) p = i;
      if (d < 0.0 && (m < 0 || d < a(m, m))) m = i;
    }
    if (active <= 1 || p < 0 || m < 0) return rotations;

    // Zero the positive entry; its mass moves to the negative slot.
    const double spp = a(p, p);
    const double smm = a(m, m);
    const double spm = 0.5 * (a(p, m) + a(m, p));
    // v is neutral for [[s_pp, s_pm], [s_pm, s_mm]]; the rotated entry
    // at p equals the form of (c, -s) when p is the first plane
    // coordinate and of (s, c) when it is the second.
    const auto v = neutral_vector_2x2(spp, spm, smm);
    double c, s;
    if (p < m) {
      c = v[0];
      s = -v[1];
    } else {
      s = v[1];
      c = v[0];
    }
    const GivensRotation g =
        GivensRotation::from_cs(std::min(p, m), std::max(p, m), c, s);
    apply_givens_similarity_inplace(a, g);
    for (DenseMatrix* r : riders) apply_givens_similarity_inplace(*r, g);
    acc.push(g);
    ++rotations;
  }
  return rotations;
}

HollowReport hollowise(const DenseMatrix& a, double tol) {
  if (!a.square()) throw PreconditionError("hollowise: matrix not square");
  if (!a.all_finite()) throw PreconditionError("hollowise: non-finite entry");
  const int n = a.rows();
  if (tol <= 0.0) tol = default_tol(n);
  const double norm = a.frobenius_norm();
  if (std::abs(a.trace()) > std::max(tol * norm, kEps)) {
    throw PreconditionError("hollowise: trace is not zero within tolerance");
  }
  HollowReport rep{OrthogonalAccumulator(n), a, 0.0, 0};
  rep.rotations_used = hollowise_diagonal_inplace(
      rep.transformed, tol * norm, rep.transform);
  rep.max_abs_diagonal = rep.transformed.max_abs_diagonal();
  return rep;
}

HollowReport constant_diagonalise(const DenseMatrix& a) {
  if (!a.square()) {
    throw PreconditionError("constant_diagonalise: matrix not square");
  }
  if (!a.all_finite()) {
    throw PreconditionError("constant_diagonalise: non-finite entry");
  }
  const int n = a.rows();
  const double mean = a.trace() / n;
  DenseMatrix shifted = a;
  shifted.shift_diagonal(-mean);
  const double norm = shifted.frobenius_norm();
  HollowReport rep{OrthogonalAccumulator(n), std::move(shifted), 0.0, 0};
  rep.rotations_used = hollowise_diagonal_inplace(
      rep.transformed, default_tol(n) * norm, rep.transform);
  rep.max_abs_diagonal = rep.transformed.max_abs_diagonal();
  rep.transformed.shift_diagonal(mean);
  return rep;
}

}  // namespace hollowstab
