#include "hollowstab/pair_hollow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "hollowstab/errors.hpp"
#include "hollowstab/hollow.hpp"
#include "hollowstab/polynomial.hpp"

namespace hollowstab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Nonnegative root of q2 x^2 + q1 x + q0 = 0 when q0/q2 < 0 (the roots
// then have opposite signs), computed cancellation-free.
double nonnegative_root(double q2, double q1, double q0) {
  const double disc = q1 * q1 - 4.0 * q2 * q0;
  const double sq = std::sqrt(std::max(disc, 0.0));
  const double q = -0.5 * (q1 + (q1 >= 0.0 ? sq : -sq));
  if (q == 0.0) return 0.0;
  const double r1 = q / q2;
  if (r1 >= 0.0) return r1;
  return q0 / q;
}

struct Forms3 {
  double a, b, c;        // 2 * off-diagonal entries of A3
  double dm, dp;         // diag(B3) = (dm, dp, 1)
  double al, be, ga;     // 2 * off-diagonal entries of B3

  double f_a(double x, double y) const { return a * x + b * y + c * x * y; }
  double f_b(double x, double y) const {
    return dm + al * x + be * y + ga * x * y + dp * x * x + y * y;
  }
};

// Two Newton steps on the coupled system (f_a, f_b) = 0 in (x, y);
// keeps the best iterate.
void polish_common_root(const Forms3& f, double& x, double& y) {
  double bx = x, by = y;
  double best = std::hypot(f.f_a(x, y), f.f_b(x, y));
  for (int it = 0; it < 2; ++it) {
    const double f1 = f.f_a(x, y);
    const double f2 = f.f_b(x, y);
    const double j11 = f.a + f.c * y;
    const double j12 = f.b + f.c * x;
    const double j21 = f.al + f.ga * y + 2.0 * f.dp * x;
    const double j22 = f.be + f.ga * x + 2.0 * y;
    const double det = j11 * j22 - j12 * j21;
    if (det == 0.0 || !std::isfinite(det)) break;
    x -= (f1 * j22 - f2 * j12) / det;
    y -= (j11 * f2 - j21 * f1) / det;
    const double r = std::hypot(f.f_a(x, y), f.f_b(x, y));
    if (r < best) {
      best = r;
      bx = x;
      by = y;
    }
  }
  x = bx;
  y = by;
}

std::array<double, 3> normalized3(double v0, double v1, double v2) {
  const double r = std::sqrt(v0 * v0 + v1 * v1 + v2 * v2);
  return {v0 / r, v1 / r, v2 / r};
}

// Orthogonal 3x3 block whose first column is the unit vector v,
// completed by a Householder reflection, embedded at idx.
EmbeddedBlock3 embed_first_column(std::array<int, 3> idx,
                                  std::array<double, 3> v) {
  const double sigma = v[0] >= 0.0 ? 1.0 : -1.0;
  // u = v + sigma e1 never cancels; H = I - 2 u u^T / (u^T u) maps e1 to
  // -sigma v, so flip the first column's sign accordingly.
  std::array<double, 3> u{v[0] + sigma, v[1], v[2]};
  const double uu = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
  std::array<double, 9> h{};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      h[static_cast<std::size_t>(r * 3 + c)] =
          (r == c ? 1.0 : 0.0) - 2.0 * u[static_cast<std::size_t>(r)] *
                                     u[static_cast<std::size_t>(c)] / uu;
    }
  }
  for (int r = 0; r < 3; ++r) {
    h[static_cast<std::size_t>(r * 3)] *= -sigma;
  }
  return EmbeddedBlock3{idx, h};
}

double off_symmetry(const DenseMatrix& m) {
  double w = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = i + 1; j < m.cols(); ++j)
      w = std::max(w, std::abs(m(i, j) - m(j, i)));
  return w;
}

}  // namespace

NeutralPair3 common_neutral_vector_3(const DenseMatrix& a3,
                                     const DenseMatrix& b3) {
  if (a3.rows() != 3 || a3.cols() != 3 || b3.rows() != 3 || b3.cols() != 3) {
    throw PreconditionError("common_neutral_vector_3: expected 3x3 inputs");
  }
  const double na = a3.frobenius_norm();
  const double nb = b3.frobenius_norm();
  const double guard_a = 1e-6 * std::max(na, 1.0);
  const double guard_b = 1e-6 * std::max(nb, 1.0);
  if (off_symmetry(a3) > guard_a || off_symmetry(b3) > guard_b) {
    throw PreconditionError("common_neutral_vector_3: inputs not symmetric");
  }
  if (a3.max_abs_diagonal() > guard_a) {
    throw PreconditionError("common_neutral_vector_3: A3 not hollow");
  }
  if (std::abs(b3(2, 2) - 1.0) > 1e-6 || !(b3(0, 0) < 0.0) ||
      !(b3(1, 1) > 0.0)) {
    throw PreconditionError(
        "common_neutral_vector_3: diag(B3) is not (d-, d+, 1) with d- < 0 < d+");
  }

  Forms3 f{2.0 * a3(0, 1), 2.0 * a3(0, 2), 2.0 * a3(1, 2),
           b3(0, 0),       b3(1, 1),       2.0 * b3(0, 1),
           2.0 * b3(0, 2), 2.0 * b3(1, 2)};
  const double tiny = 1e2 * kEps * std::max(na, 1e-300);

  NeutralPair3 out;
  double x = 0.0, y = 0.0;
  bool affine = true;  // v = (1, x, y) form
  if (std::abs(f.a) <= tiny) {
    x = nonnegative_root(f.dp, f.al, f.dm);
    y = 0.0;
    out.branch = NeutralBranch::a_zero;
  } else if (std::abs(f.b) <= tiny) {
    x = 0.0;
    y = nonnegative_root(1.0, f.be, f.dm);
    out.branch = NeutralBranch::b_zero;
  } else {
    // Substituting y = -a x / (b + c x) into the B-form and clearing
    // (b + c x)^2 yields a quartic with c0 = dm b^2 and c4 = dp c^2.
    const double c0 = f.dm * f.b * f.b;
    const double c1 = 2.0 * f.b * f.c * f.dm + f.al * f.b * f.b -
                      f.a * f.be * f.b;
    const double c2 = f.c * f.c * f.dm + 2.0 * f.b * f.c * f.al +
                      f.b * f.b * f.dp - f.a * f.be * f.c - f.a * f.ga * f.b +
                      f.a * f.a;
    const double c3 = f.c * f.c * f.al + 2.0 * f.b * f.c * f.dp -
                      f.a * f.ga * f.c;
    const double c4 = f.dp * f.c * f.c;
    Polynomial quartic({c0, c1, c2, c3, c4});
    std::vector<double> roots = real_roots(quartic);
    std::sort(roots.begin(), roots.end(), [](double l, double r) {
      const double al2 = std::abs(l), ar = std::abs(r);
      if (al2 != ar) return al2 < ar;
      return l < r;  // ties go to the negative root
    });
    std::optional<double> chosen;
    for (double root : roots) {
      const double denom = f.b + f.c * root;
      if (std::abs(denom) >
          1e-12 * (std::abs(f.b) + std::abs(f.c) * std::abs(root))) {
        chosen = root;
        break;
      }
    }
    if (chosen) {
      x = *chosen;
      y = -f.a * x / (f.b + f.c * x);
      out.branch = quartic.degree() == 4 ? NeutralBranch::c_nonzero_quartic
                                         : NeutralBranch::c_zero_quadratic;
    } else {
      // No usable real root: only possible when c is negligible and the
      // trailing block [[dp, ga/2], [ga/2, 1]] is not definite, so a
      // common neutral vector of the form (0, x, y) exists.
      std::array<double, 2> u{};
      try {
        u = neutral_vector_2x2(f.dp, 0.5 * f.ga, 1.0);
      } catch (const PreconditionError&) {
        throw BreakdownError(
            "common_neutral_vector_3: no real quartic root and trailing "
            "block is definite");
      }
      out.v = {0.0, u[0], u[1]};
      out.branch = NeutralBranch::c_zero_fallback_2x2;
      affine = false;
    }
  }

  if (affine) {
    polish_common_root(f, x, y);
    out.v = normalized3(1.0, x, y);
  }

  const double ra = std::abs(quadratic_form(a3, out.v, out.v));
  const double rb = std::abs(quadratic_form(b3, out.v, out.v));
  if (ra > 1e3 * kEps * (na + nb) || rb > 1e3 * kEps * (na + nb)) {
    throw BreakdownError("common_neutral_vector_3: residual above tolerance");
  }
  return out;
}

PairReport pair_hollowise(const DenseMatrix& a, const DenseMatrix& b,
                          double tol) {
  if (!a.square() || !b.square() || a.rows() != b.rows()) {
    throw PreconditionError("pair_hollowise: inputs must be square, same size");
  }
  if (!a.all_finite() || !b.all_finite()) {
    throw PreconditionError("pair_hollowise: non-finite entry");
  }
  const int n = a.rows();
  if (tol <= 0.0) tol = 1e2 * n * kEps;
  const double na = a.frobenius_norm();
  const double nb = b.frobenius_norm();
  if (std::abs(a.trace()) > std::max(tol * na, kEps) ||
      std::abs(b.trace()) > std::max(tol * nb, kEps)) {
    throw PreconditionError("pair_hollowise: traces are not zero within tolerance");
  }

  PairReport rep{OrthogonalAccumulator(n), a, b, 0};
  DenseMatrix& wa = rep.a_out;
  DenseMatrix& wb = rep.b_out;
  DenseMatrix* riders[] = {&wb};

  const double tol_a = tol * na;
  const double tol_b = tol * nb;
  hollowise_diagonal_inplace(wa, tol_a, rep.transform, riders);

  for (int off = 0; off + 3 <= n; ++off) {
    // A negligible diagonal entry of B deflates without work.
    int jz = off;
    for (int j = off; j < n; ++j) {
      if (std::abs(wb(j, j)) < std::abs(wb(jz, jz))) jz = j;
    }
    if (std::abs(wb(jz, jz)) <= tol_b) {
      if (jz != off) {
        DenseMatrix* both[] = {&wa, &wb};
        rep.transform.push_apply(IndexSwap{off, jz}, both);
      }
      continue;
    }

    // Pivots: most negative and most positive of the remaining diagonal.
    int i2 = off + 1, i3 = off + 1;
    for (int j = off + 1; j < n; ++j) {
      if (wb(j, j) < wb(i2, i2)) i2 = j;
      if (wb(j, j) > wb(i3, i3)) i3 = j;
    }
    if (i2 == i3) i3 = (i2 == off + 1) ? off + 2 : off + 1;

    const double vmin = wb(i2, i2), vmax = wb(i3, i3);
    int div_idx;
    if (vmin * vmax < 0.0) {
      div_idx = off;
    } else {
      div_idx = vmin > 0.0 ? i3 : i2;  // same sign: larger magnitude
    }
    const double d = wb(div_idx, div_idx);
    int others[2];
    int w = 0;
    for (int cand : {off, i2, i3}) {
      if (cand != div_idx) others[w++] = cand;
    }
    const double s0 = wb(others[0], others[0]) / d;
    const double s1 = wb(others[1], others[1]) / d;
    int slot1, slot2;
    if (s0 < 0.0 && s1 > 0.0) {
      slot1 = others[0];
      slot2 = others[1];
    } else if (s1 < 0.0 && s0 > 0.0) {
      slot1 = others[1];
      slot2 = others[0];
    } else {
      throw BreakdownError(
          "pair_hollowise: B diagonal lost its sign pattern (drift)");
    }

    const std::array<int, 3> idx{slot1, slot2, div_idx};
    DenseMatrix a3(3, 3), b3(3, 3);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        a3(r, c) = 0.5 * (wa(idx[static_cast<std::size_t>(r)],
                             idx[static_cast<std::size_t>(c)]) +
                          wa(idx[static_cast<std::size_t>(c)],
                             idx[static_cast<std::size_t>(r)]));
        b3(r, c) = 0.5 *
                   (wb(idx[static_cast<std::size_t>(r)],
                       idx[static_cast<std::size_t>(c)]) +
                    wb(idx[static_cast<std::size_t>(c)],
                       idx[static_cast<std::size_t>(r)])) /
                   d;
      }
    }
    // The extracted A diagonal is only eps-level nonzero; snap it so the
    // subproblem sees an exactly hollow A3.
    for (int r = 0; r < 3; ++r) a3(r, r) = 0.0;
    b3(2, 2) = 1.0;

    const NeutralPair3 np = common_neutral_vector_3(a3, b3);
    if (np.branch == NeutralBranch::c_nonzero_quartic) ++rep.quartics_solved;

    DenseMatrix* both[] = {&wa, &wb};
    rep.transform.push_apply(embed_first_column(idx, np.v), both);
    if (slot1 != off) {
      rep.transform.push_apply(IndexSwap{off, slot1}, both);
    }
    // The block transform disturbed at most two diagonal entries of A
    // (they sum to ~0); one more rotation restores hollowness.
    hollowise_diagonal_inplace(wa, tol_a, rep.transform, riders);
  }
  return rep;
}

bool is_hollow(const DenseMatrix& a, double tol) {
  return a.max_abs_diagonal() <= tol;
}

bool is_almost_hollow(const DenseMatrix& a, double tol) {
  const int n = std::min(a.rows(), a.cols());
  for (int i = 0; i + 2 < n; ++i) {
    if (std::abs(a(i, i)) > tol) return false;
  }
  if (n < 2) return true;
  return std::abs(a(n - 2, n - 2) + a(n - 1, n - 1)) <= tol;
}

namespace {

double form(const DenseMatrix& s, std::span<const double> x) {
  return quadratic_form(s, x, x);
}

std::vector<double> axpy(double alpha, std::span<const double> x,
                         double beta, std::span<const double> y) {
  std::vector<double> r(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) r[k] = alpha * x[k] + beta * y[k];
  return r;
}

}  // namespace

std::vector<double> realize_jnr_point(const DenseMatrix& a,
                                      const DenseMatrix& b,
                                      std::span<const double> u_in,
                                      std::span<const double> v_in, double t) {
  if (!a.square() || !b.square() || a.rows() != b.rows()) {
    throw PreconditionError("realize_jnr_point: inputs must be square, same size");
  }
  const int n = a.rows();
  if (n < 3) throw PreconditionError("realize_jnr_point: requires n >= 3");
  if (!(t > 0.0 && t < 1.0)) {
    throw PreconditionError("realize_jnr_point: t must lie in (0, 1)");
  }
  if (static_cast<int>(u_in.size()) != n || static_cast<int>(v_in.size()) != n) {
    throw PreconditionError("realize_jnr_point: vector length mismatch");
  }

  std::vector<double> u(u_in.begin(), u_in.end());
  std::vector<double> v(v_in.begin(), v_in.end());
  const double nu = norm2(u), nv = norm2(v);
  if (nu == 0.0 || nv == 0.0) {
    throw PreconditionError("realize_jnr_point: zero input vector");
  }
  for (auto& x : u) x /= nu;
  for (auto& x : v) x /= nv;
  double uv = 0.0;
  for (int k = 0; k < n; ++k) uv += u[static_cast<std::size_t>(k)] * v[static_cast<std::size_t>(k)];
  if (1.0 - std::abs(uv) <= 1e-8) {
    throw PreconditionError("realize_jnr_point: u and v are collinear");
  }

  const DenseMatrix as = a.symmetric_part();
  const DenseMatrix bs = b.symmetric_part();
  const double a1 = form(as, u), b1 = form(as, v);
  const double a2 = form(bs, u), b2 = form(bs, v);
  const double c1 = (1.0 - t) * a1 + t * b1;
  const double c2 = (1.0 - t) * a2 + t * b2;

  // Shifted forms; fa(x) = x^T (A - c1 I) x for unit x.
  auto fa = [&](std::span<const double> x) { return form(as, x) - c1; };
  auto fb = [&](std::span<const double> x) { return form(bs, x) - c2; };

  // Orthonormal basis (u0, v0) of span{u, v}.
  std::vector<double> u0 = u;
  std::vector<double> v0 = axpy(1.0, v, -uv, u);
  const double nv0 = norm2(v0);
  for (auto& x : v0) x /= nv0;

  const double scale_a = as.frobenius_norm() + std::abs(c1) * std::sqrt(double(n));
  const double tau = 1e2 * kEps * std::max(scale_a, 1e-300);

  // Restriction of (A - c1 I) to the span in the (u0, v0) basis.
  const double f11 = fa(u0);
  const double f22 = fa(v0);
  double f12 = 0.0;
  {
    const auto av0 = matvec(as, v0);
    for (int k = 0; k < n; ++k) f12 += u0[static_cast<std::size_t>(k)] * av0[static_cast<std::size_t>(k)];
    for (int k = 0; k < n; ++k) f12 -= c1 * u0[static_cast<std::size_t>(k)] * v0[static_cast<std::size_t>(k)];
  }
  const double mean = 0.5 * (f11 + f22);
  const double rad = std::hypot(0.5 * (f11 - f22), f12);
  const double lam_plus = mean + rad;
  const double lam_minus = mean - rad;

  if (std::max(std::abs(lam_plus), std::abs(lam_minus)) <= tau) {
    // The A-form is constant c1 on the span circle; place the B-form.
    const double g11 = form(bs, u0), g22 = form(bs, v0);
    double g12 = 0.0;
    const auto bv0 = matvec(bs, v0);
    for (int k = 0; k < n; ++k) g12 += u0[static_cast<std::size_t>(k)] * bv0[static_cast<std::size_t>(k)];
    const double p = 0.5 * (g11 + g22);
    const double q = 0.5 * (g11 - g22);
    const double radius = std::hypot(q, g12);
    double theta = 0.0;
    if (radius > 0.0) {
      const double cosarg = std::clamp((c2 - p) / radius, -1.0, 1.0);
      theta = 0.5 * (std::atan2(g12, q) + std::acos(cosarg));
    }
    return axpy(std::cos(theta), u0, std::sin(theta), v0);
  }

  // Unit vectors z+ and z- in the span with A-form above/below c1.
  std::vector<double> zp, zm;
  if (std::abs(a1 - b1) > tau) {
    zp = a1 > b1 ? u : v;
    zm = a1 > b1 ? v : u;
  } else {
    // Eigenvectors of the 2x2 restriction.
    double ex, ey;
    if (std::abs(f12) > std::abs(f11 - lam_plus)) {
      ex = lam_plus - f22;
      ey = f12;
    } else {
      ex = f12;
      ey = lam_plus - f11;
    }
    const double er = std::hypot(ex, ey);
    ex /= er;
    ey /= er;
    zp = axpy(ex, u0, ey, v0);
    zm = axpy(-ey, u0, ex, v0);
  }

  // Unit y orthogonal to the span (n >= 3 guarantees one).
  std::vector<double> y(static_cast<std::size_t>(n), 0.0);
  {
    int best_k = 0;
    double best_res = -1.0;
    for (int k = 0; k < n; ++k) {
      const double r2 = 1.0 - u0[static_cast<std::size_t>(k)] * u0[static_cast<std::size_t>(k)] -
                        v0[static_cast<std::size_t>(k)] * v0[static_cast<std::size_t>(k)];
      if (r2 > best_res) {
        best_res = r2;
        best_k = k;
      }
    }
    y[static_cast<std::size_t>(best_k)] = 1.0;
    double pu = u0[static_cast<std::size_t>(best_k)];
    double pv = v0[static_cast<std::size_t>(best_k)];
    for (int k = 0; k < n; ++k) {
      y[static_cast<std::size_t>(k)] -= pu * u0[static_cast<std::size_t>(k)] + pv * v0[static_cast<std::size_t>(k)];
    }
    const double ny = norm2(y);
    for (auto& x : y) x /= ny;
  }

  // w = (y + tau_w z) / sqrt(1 + tau_w^2) with w^T (A - c1 I) w = 0.
  const double eta = fa(y);
  std::vector<double> w;
  double w_res = std::numeric_limits<double>::infinity();
  for (const auto* z : {&zm, &zp}) {
    const double lam = fa(*z);
    double zeta = 0.0;
    const auto az = matvec(as, *z);
    for (int k = 0; k < n; ++k) zeta += y[static_cast<std::size_t>(k)] * az[static_cast<std::size_t>(k)];
    // y and z are orthogonal, so the c1 shift has no cross term.
    const double disc = zeta * zeta - eta * lam;
    if (disc < 0.0) continue;
    // Solve lam tw^2 + 2 zeta tw + eta = 0 for the mixing ratio.
    double tw;
    if (std::abs(lam) <= tau) {
      if (std::abs(zeta) <= tau) {
        if (std::abs(eta) > tau) continue;
        tw = 0.0;
      } else {
        tw = -eta / (2.0 * zeta);
      }
    } else {
      const double sq = std::sqrt(disc);
      const double qq = -(zeta + (zeta >= 0.0 ? sq : -sq));
      if (qq == 0.0) {
        tw = 0.0;  // zeta = 0 and eta * lam = 0
      } else {
        const double r1 = qq / lam;
        const double r2 = eta / qq;
        tw = std::abs(r1) < std::abs(r2) ? r1 : r2;
      }
    }
    const double den = std::sqrt(1.0 + tw * tw);
    auto cand = axpy(1.0 / den, y, tw / den, *z);
    const double res = std::abs(fa(cand));
    if (res < w_res) {
      w_res = res;
      w = std::move(cand);
    }
  }
  if (w.empty() || w_res > 1e3 * n * kEps * std::max(scale_a, 1.0)) {
    throw BreakdownError("realize_jnr_point: could not build the w direction");
  }

  // U = [sqrt(1-t) u, sqrt(t) v, w]; tilde forms are 3x3 symmetric with
  // diagonals ((1-t)(a1-c1), t(b1-c1), ~0) and the B analogue.
  const double su = std::sqrt(1.0 - t), sv = std::sqrt(t);
  std::array<std::vector<double>, 3> cols = {axpy(su, u, 0.0, u),
                                             axpy(sv, v, 0.0, v), w};
  auto tilde = [&](const DenseMatrix& s, double shift) {
    DenseMatrix m(3, 3);
    for (int r = 0; r < 3; ++r) {
      const auto sc = matvec(s, cols[static_cast<std::size_t>(r)]);
      for (int c = 0; c < 3; ++c) {
        double val = 0.0;
        for (int k = 0; k < n; ++k) {
          val += cols[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)] * sc[static_cast<std::size_t>(k)];
        }
        double dot = 0.0;
        for (int k = 0; k < n; ++k) {
          dot += cols[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] *
                 cols[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)];
        }
        m(r, c) = val - shift * dot;
      }
    }
    return m.symmetric_part();
  };
  DenseMatrix ta = tilde(as, c1);
  DenseMatrix tb = tilde(bs, c2);

  // One rotation confined to the leading 2x2 hollowises ta there (its
  // two entries sum to 0); confinement keeps diag(tb) = (d1, -d1, *).
  OrthogonalAccumulator q3(3);
  {
    const double t11 = ta(0, 0), t22 = ta(1, 1);
    const double t12 = 0.5 * (ta(0, 1) + ta(1, 0));
    const double tiny3 = 1e2 * kEps * std::max(ta.frobenius_norm(), 1e-300);
    if (std::max(std::abs(t11), std::abs(t22)) > tiny3) {
      double c, s;
      if (t11 > 0.0) {
        const auto vv = neutral_vector_2x2(t11, t12, t22);
        c = vv[0];
        s = -vv[1];
      } else {
        const auto vv = neutral_vector_2x2(t22, t12, t11);
        s = vv[1];
        c = vv[0];
      }
      DenseMatrix* both3[] = {&ta, &tb};
      q3.push_apply(GivensRotation::from_cs(0, 1, c, s), both3);
    }
  }

  const double tolz = 1e2 * kEps * std::max(tb.frobenius_norm(), 1e-300);
  std::array<double, 3> z{};
  if (std::abs(tb(0, 0)) <= tolz) {
    z = {1.0, 0.0, 0.0};
  } else if (std::abs(tb(2, 2)) <= tolz) {
    z = {0.0, 0.0, 1.0};
  } else {
    // Normalize to the (d-, d+, 1) pattern, permuting the leading pair
    // if needed.
    const double b33 = tb(2, 2);
    std::array<int, 3> perm{0, 1, 2};
    if (tb(0, 0) / b33 > 0.0) perm = {1, 0, 2};
    DenseMatrix a3(3, 3), b3(3, 3);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        a3(r, c) = ta(perm[static_cast<std::size_t>(r)], perm[static_cast<std::size_t>(c)]);
        b3(r, c) = tb(perm[static_cast<std::size_t>(r)], perm[static_cast<std::size_t>(c)]) / b33;
      }
    }
    for (int r = 0; r < 3; ++r) a3(r, r) = 0.0;
    b3(2, 2) = 1.0;
    const NeutralPair3 np = common_neutral_vector_3(a3, b3);
    for (int r = 0; r < 3; ++r) {
      z[static_cast<std::size_t>(perm[static_cast<std::size_t>(r)])] = np.v[static_cast<std::size_t>(r)];
    }
  }

  // x = U Q z / ||U Q z||.
  std::vector<double> qz{z[0], z[1], z[2]};
  qz = matvec(q3.matrix(), qz);
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  for (int r = 0; r < 3; ++r) {
    for (int k = 0; k < n; ++k) {
      x[static_cast<std::size_t>(k)] += cols[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] * qz[static_cast<std::size_t>(r)];
    }
  }
  const double nx = norm2(x);
  if (nx == 0.0) throw BreakdownError("realize_jnr_point: degenerate combination");
  for (auto& e : x) e /= nx;
  return x;
}

}  // namespace hollowstab
