#include "hollowstab/symplectic.hpp"

#include <cmath>
#include <limits>

#include "hollowstab/errors.hpp"
#include "hollowstab/hollow.hpp"
#include "hollowstab/pair_hollow.hpp"

namespace hollowstab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct AppendixFactors {
  SymplecticGenerator s1;          // quaternion step
  SymplecticGenerator g1, g2;      // the two plane rotations of S2
};

// Larger-magnitude root of t^2 - 2 r t - 1 = 0.
double outer_root_minus(double r) {
  return r + std::copysign(std::sqrt(r * r + 1.0), r);
}

// Larger-magnitude root of t^2 + 2 r t - 1 = 0.
double outer_root_plus(double r) {
  return -r - std::copysign(std::sqrt(r * r + 1.0), r);
}

// Parameters of the direct 4x4 construction for a symmetric zero-trace
// matrix given at indices (base, base+1, base+n, base+n+1) of `work`
// (entries read from the symmetric part). Factors are expressed in the
// 2n-dimensional space.
AppendixFactors appendix_4x4_factors(const DenseMatrix& work, int base,
                                     int half) {
  const int i0 = base, i1 = base + 1, i2 = base + half, i3 = base + half + 1;
  auto sym = [&](int r, int c) { return 0.5 * (work(r, c) + work(c, r)); };
  const double a = sym(i0, i0), b = sym(i0, i1), d = sym(i0, i3);
  const double e = sym(i1, i1), f = sym(i1, i2);
  const double h = sym(i2, i2), i = sym(i2, i3), j = sym(i3, i3);

  double scale = 0.0;
  for (int r : {i0, i1, i2, i3}) {
    for (int c : {i0, i1, i2, i3}) scale = std::max(scale, std::abs(sym(r, c)));
  }
  const double tau = 1e2 * kEps * std::max(scale, 1e-300);

  double p0 = 1.0, p1 = 0.0, p2 = 0.0, p3 = 0.0;
  const double sigma = e + j;  // equals -(a + h) for zero trace
  if (std::abs(a + h) <= tau) {
    // S1 = I.
  } else if (std::abs(b + i) <= tau && std::abs(d - f) <= tau) {
    p0 = p1 = p2 = p3 = 0.5;
  } else {
    // p2 = p3 = 0 with t^2 - 2 t (b+i)/(e+j) - 1 = 0 satisfies the
    // pairing equation for every remaining case (with b+i = 0 it gives
    // the 45-degree choice t = +-1).
    const double t = outer_root_minus((b + i) / sigma);
    p1 = 1.0 / std::sqrt(1.0 + t * t);
    p0 = t * p1;
  }
  AppendixFactors out{SymplecticGenerator::quaternion(base, p0, p1, p2, p3),
                      SymplecticGenerator::givens_pair(base, 1.0, 0.0),
                      SymplecticGenerator::givens_pair(base + 1, 1.0, 0.0)};

  // Apply S1 to a 4x4 scratch copy to read the paired entries.
  DenseMatrix s4(4, 4);
  {
    const int map[4] = {i0, i1, i2, i3};
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) s4(r, c) = sym(map[r], map[c]);
    }
    apply_similarity_inplace(
        s4, SymplecticGenerator::quaternion(0, p0, p1, p2, p3));
  }
  if (std::abs(s4(0, 0) + s4(2, 2)) > 1e3 * kEps * std::max(scale, 1e-300) ||
      std::abs(s4(1, 1) + s4(3, 3)) > 1e3 * kEps * std::max(scale, 1e-300)) {
    throw BreakdownError("sympl 4x4: pairing step failed");
  }

  // S2 = G1(q0, q2) G2(q1, q3) annihilates the paired diagonal.
  const double at = s4(0, 0), ct = s4(0, 2);
  if (std::abs(at) > tau) {
    const double t = outer_root_plus(ct / at);
    const double q0 = 1.0 / std::sqrt(1.0 + t * t);
    out.g1 = SymplecticGenerator::givens_pair(base, q0, t * q0);
  }
  const double et = s4(1, 1), gt = s4(1, 3);
  if (std::abs(et) > tau) {
    const double t = outer_root_plus(gt / et);
    const double q1 = 1.0 / std::sqrt(1.0 + t * t);
    out.g2 = SymplecticGenerator::givens_pair(base + 1, q1, t * q1);
  }
  return out;
}

// One symplectic plane rotation on (k, k+n) sending the symmetric-part
// diagonal pair to equal values.
SymplecticGenerator equalizing_rotation(const DenseMatrix& work, int k,
                                        int half) {
  auto sym = [&](int r, int c) { return 0.5 * (work(r, c) + work(c, r)); };
  const double alpha = sym(k, k);
  const double delta = sym(k + half, k + half);
  const double beta = sym(k, k + half);
  const double scale =
      std::max({std::abs(alpha), std::abs(delta), std::abs(beta), 1e-300});
  if (std::abs(alpha - delta) <= 4.0 * kEps * scale) {
    return SymplecticGenerator::givens_pair(k, 1.0, 0.0);
  }
  const double theta = 0.5 * std::atan2(alpha - delta, 2.0 * beta);
  return SymplecticGenerator::givens_pair(k, std::cos(theta), std::sin(theta));
}

SymplecticGenerator lift_pair_factor(const TransformFactor& f) {
  if (const auto* g = std::get_if<GivensRotation>(&f)) {
    return SymplecticGenerator::double_givens(g->i, g->j, g->c, g->s);
  }
  if (const auto* sw = std::get_if<IndexSwap>(&f)) {
    return SymplecticGenerator::double_swap(sw->i, sw->j);
  }
  if (const auto* e = std::get_if<EmbeddedBlock3>(&f)) {
    return SymplecticGenerator::double_embed3(e->idx, e->block);
  }
  throw PreconditionError("lift_pair_factor: unsupported factor kind");
}

}  // namespace

double symplectic_residual(const DenseMatrix& u) {
  if (!u.square() || u.rows() % 2 != 0) {
    throw PreconditionError("symplectic_residual: dimension must be even");
  }
  const int n2 = u.rows();
  const int n = n2 / 2;
  // J U has rows (U[n:], -U[:n]).
  double s = 0.0;
  for (int i = 0; i < n2; ++i) {
    for (int j = 0; j < n2; ++j) {
      double v = 0.0;
      for (int k = 0; k < n; ++k) {
        v += u(k, i) * u(k + n, j) - u(k + n, i) * u(k, j);
      }
      // subtract J
      if (j == i + n) v -= 1.0;
      if (j == i - n) v += 1.0;
      s += v * v;
    }
  }
  return std::sqrt(s);
}

double hamiltonian_residual(const DenseMatrix& m) {
  if (!m.square() || m.rows() % 2 != 0) {
    throw PreconditionError("hamiltonian_residual: dimension must be even");
  }
  const int n = m.rows() / 2;
  // (J M)[i][j] = M[i+n][j] for i < n and -M[i-n][j] otherwise.
  auto jm = [&](int i, int j) {
    return i < n ? m(i + n, j) : -m(i - n, j);
  };
  double s = 0.0;
  for (int i = 0; i < 2 * n; ++i) {
    for (int j = 0; j < 2 * n; ++j) {
      const double d = jm(i, j) - jm(j, i);
      s += d * d;
    }
  }
  return std::sqrt(s);
}

EqualizeResult equalize_halves(const DenseMatrix& a) {
  if (!a.square() || a.rows() % 2 != 0) {
    throw PreconditionError("equalize_halves: dimension must be even");
  }
  const int half = a.rows() / 2;
  EqualizeResult out{a, {}};
  out.factors.reserve(static_cast<std::size_t>(half));
  for (int k = 0; k < half; ++k) {
    SymplecticGenerator g = equalizing_rotation(out.transformed, k, half);
    apply_similarity_inplace(out.transformed, g);
    out.factors.push_back(std::move(g));
  }
  return out;
}

SymplReport sympl_hollowise_4x4(const DenseMatrix& a4, double tol) {
  if (a4.rows() != 4 || a4.cols() != 4) {
    throw PreconditionError("sympl_hollowise_4x4: expected a 4x4 matrix");
  }
  if (tol <= 0.0) tol = 4e2 * kEps;
  const double norm = a4.frobenius_norm();
  double asym = 0.0;
  for (int r = 0; r < 4; ++r) {
    for (int c = r + 1; c < 4; ++c) {
      asym = std::max(asym, std::abs(a4(r, c) - a4(c, r)));
    }
  }
  if (asym > std::max(tol * norm, kEps)) {
    throw PreconditionError("sympl_hollowise_4x4: matrix not symmetric");
  }
  if (std::abs(a4.trace()) > std::max(tol * norm, kEps)) {
    throw PreconditionError("sympl_hollowise_4x4: trace is not zero");
  }

  SymplReport rep{OrthogonalAccumulator(4), a4, 0.0};
  const AppendixFactors fs = appendix_4x4_factors(rep.transformed, 0, 2);
  rep.transform.push_apply(fs.s1, rep.transformed);
  rep.transform.push_apply(fs.g1, rep.transformed);
  rep.transform.push_apply(fs.g2, rep.transformed);
  rep.diagonal_spread = rep.transformed.diagonal_spread();
  return rep;
}

SymplReport sympl_constant_diagonalise(const DenseMatrix& a) {
  if (!a.square() || a.rows() % 2 != 0) {
    throw PreconditionError(
        "sympl_constant_diagonalise: dimension must be even");
  }
  if (!a.all_finite()) {
    throw PreconditionError("sympl_constant_diagonalise: non-finite entry");
  }
  const int n2 = a.rows();
  const int half = n2 / 2;
  const double mean = a.trace() / n2;

  SymplReport rep{OrthogonalAccumulator(n2), a, 0.0};
  DenseMatrix& work = rep.transformed;
  work.shift_diagonal(-mean);

  if (half == 1) {
    auto sym = [&](int r, int c) { return 0.5 * (work(r, c) + work(c, r)); };
    const double s00 = sym(0, 0), s01 = sym(0, 1), s11 = sym(1, 1);
    const double scale = std::max({std::abs(s00), std::abs(s01), std::abs(s11)});
    if (scale > 0.0 && std::max(std::abs(s00), std::abs(s11)) > 1e2 * kEps * scale) {
      double c, s;
      if (s00 > 0.0) {
        const auto v = neutral_vector_2x2(s00, s01, s11);
        c = v[0];
        s = -v[1];
      } else {
        const auto v = neutral_vector_2x2(s11, s01, s00);
        s = v[1];
        c = v[0];
      }
      rep.transform.push_apply(SymplecticGenerator::givens_pair(0, c, s), work);
    }
  } else {
    // Step 1: equal diagonal pairs.
    for (int k = 0; k < half; ++k) {
      rep.transform.push_apply(equalizing_rotation(work, k, half), work);
    }

    // Step 2: hollow / almost hollow diagonal blocks via blockdiag(V, V).
    // The blocks of the symmetric part get their traces snapped to zero;
    // the eps-level shift only moves the final diagonal by what roundoff
    // already does.
    DenseMatrix a1(half, half), a2(half, half);
    for (int r = 0; r < half; ++r) {
      for (int c = 0; c < half; ++c) {
        a1(r, c) = 0.5 * (work(r, c) + work(c, r));
        a2(r, c) = 0.5 * (work(r + half, c + half) + work(c + half, r + half));
      }
    }
    a1.shift_diagonal(-a1.trace() / half);
    a2.shift_diagonal(-a2.trace() / half);
    const PairReport pr = pair_hollowise(a1, a2);
    for (const auto& f : pr.transform.factors()) {
      rep.transform.push_apply(lift_pair_factor(f), work);
    }

    // Step 3: the 4x4 subproblem on rows/columns (half-2, half-1) and
    // their +half partners; every other diagonal entry is already in
    // place and is not touched.
    const AppendixFactors fs = appendix_4x4_factors(work, half - 2, half);
    rep.transform.push_apply(fs.s1, work);
    rep.transform.push_apply(fs.g1, work);
    rep.transform.push_apply(fs.g2, work);
  }

  work.shift_diagonal(mean);
  rep.diagonal_spread = work.diagonal_spread();
  return rep;
}

}  // namespace hollowstab
