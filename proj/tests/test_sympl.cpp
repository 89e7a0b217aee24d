#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "hollowstab/errors.hpp"
#include "hollowstab/spectrum.hpp"
#include "hollowstab/symplectic.hpp"
#include "support/random_inputs.hpp"

using namespace hollowstab;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

DenseMatrix random_step3_shape(std::mt19937_64& rng, double d1, double d2) {
  // Symmetric 4x4 with diagonal (d1, -d1, d2, -d2).
  DenseMatrix a = hstest::random_symmetric(rng, 4, 1.0);
  a(0, 0) = d1;
  a(1, 1) = -d1;
  a(2, 2) = d2;
  a(3, 3) = -d2;
  return a;
}

// The paper-style iterative contraction for the 4x4 step, used here only
// as a cross-check oracle: repeatedly equalize (d1, d2) with rotations in
// the (1,3) and (2,4) planes, then shrink |d1| + |d2| with a paired
// rotation in the (1,2)/(3,4) planes. Capped at 200 sweeps.
double iterative_4x4_diag_sum(DenseMatrix a, int max_sweeps = 200) {
  auto diagsum = [&]() { return std::abs(a(0, 0)) + std::abs(a(2, 2)); };
  const double norm = std::max(a.frobenius_norm(), 1e-300);
  double prev = diagsum();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (diagsum() <= 1e-14 * norm) break;
    // Equalize d1 and d2.
    {
      const double d1 = a(0, 0), d2 = a(2, 2), g = a(0, 2);
      if (std::abs(d1 - d2) > 1e-15 * norm) {
        const double th = 0.5 * std::atan2(d1 - d2, 2.0 * g);
        apply_similarity_inplace(a, SymplecticGenerator::givens_pair(
                                        0, std::cos(th), std::sin(th)));
      }
      const double e1 = a(1, 1), e2 = a(3, 3), g2 = a(1, 3);
      if (std::abs(e1 - e2) > 1e-15 * norm) {
        const double th = 0.5 * std::atan2(e1 - e2, 2.0 * g2);
        apply_similarity_inplace(a, SymplecticGenerator::givens_pair(
                                        1, std::cos(th), std::sin(th)));
      }
    }
    // One paired rotation annihilates the diagonal entry coupled by the
    // larger off-diagonal, through the minimal-angle branch; that is the
    // combination for which the sum provably shrinks.
    {
      const double d = a(0, 0);
      const double a_off = a(0, 1), b_off = a(2, 3);
      if (std::abs(d) > 1e-16 * norm) {
        const double coupling =
            std::abs(a_off) >= std::abs(b_off) ? a_off : b_off;
        const double two_theta =
            coupling != 0.0 ? std::atan(d / coupling) : 1.5707963267948966;
        const double th = 0.5 * two_theta;
        apply_similarity_inplace(a, SymplecticGenerator::double_givens(
                                        0, 1, std::cos(th), std::sin(th)));
      }
    }
    const double cur = diagsum();
    CHECK(cur <= prev * (1.0 + 1e-12) + 1e-13 * norm);  // monotone descent
    prev = cur;
  }
  return diagsum() / norm;
}

}  // namespace

TEST_CASE("symplectic generators realize symplectic matrices") {
  auto rng = hstest::make_rng(5050);
  const int half = 4;
  const int n2 = 2 * half;
  std::uniform_real_distribution<double> ang(0.0, 6.28);
  std::vector<TransformFactor> factors;
  const double c0 = std::cos(ang(rng)), s0 = std::sin(std::acos(c0));
  factors.push_back(SymplecticGenerator::givens_pair(2, c0, std::sqrt(1 - c0 * c0)));
  factors.push_back(SymplecticGenerator::double_givens(0, 3, 0.6, 0.8));
  factors.push_back(SymplecticGenerator::double_swap(1, 2));
  {
    const double p = 0.5;
    factors.push_back(SymplecticGenerator::quaternion(1, p, p, p, p));
  }
  factors.push_back(SymplecticGenerator::block_diag(hstest::random_orthogonal(rng, half)));
  for (const auto& f : factors) {
    DenseMatrix u = realize(f, n2);
    CHECK(orthogonality_residual(u) <= 1e2 * n2 * kEps);
    CHECK(symplectic_residual(u) <= 1e2 * n2 * kEps);
  }
  (void)s0;
}

TEST_CASE("equalize_halves matches the hand-worked examples") {
  // diag(1, -1): single 45-degree rotation, zero diagonal.
  DenseMatrix a = DenseMatrix::diagonal(std::vector<double>{1.0, -1.0});
  EqualizeResult r = equalize_halves(a);
  CHECK(std::abs(r.transformed(0, 0)) <= 4 * kEps);
  CHECK(std::abs(r.transformed(1, 1)) <= 4 * kEps);
  CHECK(r.factors.size() == 1);

  // diag(3, 1, -1, -3): pairs (3,-1) and (1,-3) both average.
  DenseMatrix b = DenseMatrix::diagonal(std::vector<double>{3.0, 1.0, -1.0, -3.0});
  EqualizeResult r2 = equalize_halves(b);
  CHECK(r2.transformed(0, 0) == doctest::Approx(1.0));
  CHECK(r2.transformed(1, 1) == doctest::Approx(-1.0));
  CHECK(r2.transformed(2, 2) == doctest::Approx(1.0));
  CHECK(r2.transformed(3, 3) == doctest::Approx(-1.0));
  CHECK(r2.factors.size() == 2);

  // Already equal halves: zero-angle rotations leave A bitwise alone.
  DenseMatrix c = DenseMatrix::from_rows({{2.0, 0.5, 0.25, 0.0},
                                          {0.5, -1.0, 0.0, 0.25},
                                          {0.25, 0.0, 2.0, 0.5},
                                          {0.0, 0.25, 0.5, -1.0}});
  EqualizeResult r3 = equalize_halves(c);
  CHECK(max_abs_diff(r3.transformed, c) == 0.0);

  CHECK_THROWS_AS(equalize_halves(DenseMatrix::identity(3)), PreconditionError);
}

TEST_CASE("equalize_halves splits the trace across both halves") {
  auto rng = hstest::make_rng(61);
  for (int half : {1, 2, 5, 10}) {
    DenseMatrix a = hstest::random_matrix(rng, 2 * half, 1.0);
    EqualizeResult r = equalize_halves(a);
    const double norm = a.frobenius_norm();
    double tr1 = 0.0, tr2 = 0.0;
    for (int k = 0; k < half; ++k) {
      const double dk = 0.5 * (r.transformed(k, k) + r.transformed(k, k));
      const double dk2 = r.transformed(k + half, k + half);
      CHECK(std::abs(dk - dk2) <= 1e2 * kEps * norm);
      tr1 += r.transformed(k, k);
      tr2 += dk2;
    }
    CHECK(tr1 == doctest::Approx(0.5 * a.trace()).epsilon(1e-10));
    CHECK(tr2 == doctest::Approx(0.5 * a.trace()).epsilon(1e-10));
  }
}

TEST_CASE("sympl_hollowise_4x4: diagonal matrix needs only pairing") {
  DenseMatrix a = DenseMatrix::diagonal(std::vector<double>{1.0, -1.0, 2.0, -2.0});
  SymplReport rep = sympl_hollowise_4x4(a);
  CHECK(rep.transformed.max_abs_diagonal() <= 1e-14 * a.frobenius_norm());
  CHECK(symplectic_residual(rep.transform.matrix()) <= 1e-14);
}

TEST_CASE("sympl_hollowise_4x4: already hollow gives the identity") {
  DenseMatrix a = DenseMatrix::from_rows({{0.0, 1.0, 2.0, 3.0},
                                          {1.0, 0.0, 4.0, 5.0},
                                          {2.0, 4.0, 0.0, 6.0},
                                          {3.0, 5.0, 6.0, 0.0}});
  SymplReport rep = sympl_hollowise_4x4(a);
  CHECK(max_abs_diff(rep.transform.matrix(), DenseMatrix::identity(4)) == 0.0);
  CHECK(max_abs_diff(rep.transformed, a) == 0.0);
}

TEST_CASE("sympl_hollowise_4x4 covers the special pairing cases") {
  auto rng = hstest::make_rng(404);
  // b + i = 0 with d - f != 0 (the case whose printed parameter choice
  // does not satisfy the pairing equation; the general construction
  // must handle it).
  DenseMatrix a1 = hstest::random_symmetric_zero_trace(rng, 4, 1.0);
  a1(1, 0) = a1(0, 1) = 0.3;
  a1(2, 3) = a1(3, 2) = -0.3;  // b + i = 0
  a1(0, 3) = a1(3, 0) = 0.9;
  a1(1, 2) = a1(2, 1) = 0.1;  // d - f = 0.8
  SymplReport r1 = sympl_hollowise_4x4(a1);
  CHECK(r1.transformed.max_abs_diagonal() <= 1e-12 * a1.frobenius_norm());
  CHECK(symplectic_residual(r1.transform.matrix()) <= 1e-13);

  // d - f = 0 with b + i != 0.
  DenseMatrix a2 = hstest::random_symmetric_zero_trace(rng, 4, 1.0);
  a2(0, 3) = a2(3, 0) = 0.4;
  a2(1, 2) = a2(2, 1) = 0.4;  // d - f = 0
  a2(0, 1) = a2(1, 0) = 0.7;
  a2(2, 3) = a2(3, 2) = 0.2;  // b + i = 0.9
  SymplReport r2 = sympl_hollowise_4x4(a2);
  CHECK(r2.transformed.max_abs_diagonal() <= 1e-12 * a2.frobenius_norm());

  // b + i = d - f = 0: the all-half quaternion.
  DenseMatrix a3 = hstest::random_symmetric_zero_trace(rng, 4, 1.0);
  a3(0, 1) = a3(1, 0) = 0.5;
  a3(2, 3) = a3(3, 2) = -0.5;
  a3(0, 3) = a3(3, 0) = 0.6;
  a3(1, 2) = a3(2, 1) = 0.6;
  SymplReport r3 = sympl_hollowise_4x4(a3);
  CHECK(r3.transformed.max_abs_diagonal() <= 1e-12 * a3.frobenius_norm());

  // a + h = 0 on entry: quaternion step degenerates to the identity.
  DenseMatrix a4 = hstest::random_symmetric_zero_trace(rng, 4, 1.0);
  const double ah = 0.5 * (a4(0, 0) + a4(2, 2));
  a4(0, 0) -= ah;
  a4(2, 2) -= ah;
  const double ej = 0.5 * (a4(1, 1) + a4(3, 3));
  a4(1, 1) -= ej;
  a4(3, 3) -= ej;
  SymplReport r4 = sympl_hollowise_4x4(a4);
  CHECK(r4.transformed.max_abs_diagonal() <= 1e-12 * a4.frobenius_norm());
}

TEST_CASE("sympl_hollowise_4x4 random property") {
  auto rng = hstest::make_rng(405);
  for (int trial = 0; trial < 1000; ++trial) {
    DenseMatrix a = hstest::random_symmetric_zero_trace(rng, 4, 1.0);
    SymplReport rep = sympl_hollowise_4x4(a);
    CHECK(rep.transformed.max_abs_diagonal() <= 1e-12 * a.frobenius_norm());
    CHECK(symplectic_residual(rep.transform.matrix()) <= 1e-13);
  }
}

TEST_CASE("sympl_hollowise_4x4 rejects bad input") {
  CHECK_THROWS_AS(sympl_hollowise_4x4(DenseMatrix::identity(4)),
                  PreconditionError);
  DenseMatrix asym(4, 4);
  asym(0, 1) = 1.0;  // not symmetric
  CHECK_THROWS_AS(sympl_hollowise_4x4(asym), PreconditionError);
}

TEST_CASE("iterative contraction oracle agrees with the direct 4x4 route") {
  auto rng = hstest::make_rng(406);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    DenseMatrix a = random_step3_shape(rng, u(rng), u(rng));
    // Direct construction: hollow at roundoff level.
    SymplReport direct = sympl_hollowise_4x4(a);
    CHECK(direct.transformed.max_abs_diagonal() <= 1e-12 * a.frobenius_norm());
    // Iterative route: monotone decrease, clearly below the start.
    const double rel = iterative_4x4_diag_sum(a);
    CHECK(rel <= 0.05);
  }
}

TEST_CASE("sympl_constant_diagonalise on the 4x4 regression matrix") {
  DenseMatrix a = DenseMatrix::diagonal(std::vector<double>{1.0, 1.0, 1.0, -4.0});
  SymplReport rep = sympl_constant_diagonalise(a);
  for (int i = 0; i < 4; ++i) {
    CHECK(rep.transformed(i, i) == doctest::Approx(-0.25).epsilon(1e-12));
  }
  CHECK(rep.diagonal_spread <= 1e-12 * a.frobenius_norm());
  CHECK(symplectic_residual(rep.transform.matrix()) <= 1e-13);
  CHECK(rep.transform.orthogonality_residual() <= 1e-13);
  CHECK(hstest::eigenvalue_multiset_distance(
            eigenvalues(a).eigenvalues,
            eigenvalues(rep.transformed).eigenvalues) <= 1e-8 * 4.0);
}

TEST_CASE("sympl_constant_diagonalise leaves multiples of I alone") {
  DenseMatrix a = DenseMatrix::identity(6);
  a *= -2.5;
  SymplReport rep = sympl_constant_diagonalise(a);
  CHECK(max_abs_diff(rep.transformed, a) <= 4 * kEps);
  CHECK(max_abs_diff(rep.transform.matrix(), DenseMatrix::identity(6)) == 0.0);
}

TEST_CASE("sympl_constant_diagonalise random property across sizes") {
  auto rng = hstest::make_rng(407);
  for (int n2 : {2, 4, 6, 10, 20, 50, 100}) {
    for (int trial = 0; trial < 6; ++trial) {
      DenseMatrix a = hstest::random_matrix(rng, n2, 1.0);
      SymplReport rep = sympl_constant_diagonalise(a);
      const int half = n2 / 2;
      const double norm = a.frobenius_norm();
      CHECK(rep.diagonal_spread <= 1e3 * half * kEps * norm);
      CHECK(symplectic_residual(rep.transform.matrix()) <= 1e3 * half * kEps);
      CHECK(rep.transform.orthogonality_residual() <= 1e3 * half * kEps);
      DenseMatrix uau = matmul(rep.transform.matrix().transposed(),
                               matmul(a, rep.transform.matrix()));
      CHECK(max_abs_diff(uau, rep.transformed) <= 1e2 * n2 * kEps * norm);
    }
  }
}

TEST_CASE("sympl_constant_diagonalise preserves eigenvalues") {
  auto rng = hstest::make_rng(408);
  for (int trial = 0; trial < 6; ++trial) {
    DenseMatrix a = hstest::random_matrix(rng, 10, 1.0);
    SymplReport rep = sympl_constant_diagonalise(a);
    CHECK(rep.diagonal_spread <= 1e-11 * a.frobenius_norm());
    CHECK(symplectic_residual(rep.transform.matrix()) <= 1e-12);
    CHECK(hstest::eigenvalue_multiset_distance(
              eigenvalues(a).eigenvalues,
              eigenvalues(rep.transformed).eigenvalues) <=
          1e-8 * a.frobenius_norm());
  }
}

TEST_CASE("step-2 contract: equalized halves have equal zero-trace blocks") {
  auto rng = hstest::make_rng(409);
  const int half = 6;
  DenseMatrix a = hstest::random_symmetric_zero_trace(rng, 2 * half, 1.0);
  EqualizeResult r = equalize_halves(a);
  const double norm = a.frobenius_norm();
  double tr1 = 0.0, tr2 = 0.0;
  for (int k = 0; k < half; ++k) {
    CHECK(std::abs(r.transformed(k, k) - r.transformed(k + half, k + half)) <=
          1e2 * kEps * norm);
    tr1 += r.transformed(k, k);
    tr2 += r.transformed(k + half, k + half);
  }
  CHECK(std::abs(tr1) <= 1e2 * half * kEps * norm);
  CHECK(std::abs(tr2) <= 1e2 * half * kEps * norm);
}

TEST_CASE("the 4x4 lift touches only its four rows and columns") {
  auto rng = hstest::make_rng(410);
  const int half = 5;
  const int n2 = 2 * half;
  DenseMatrix a = hstest::random_matrix(rng, n2, 1.0);
  const DenseMatrix before = a;
  const int base = half - 2;
  apply_similarity_inplace(a, SymplecticGenerator::quaternion(base, 0.5, 0.5, 0.5, 0.5));
  apply_similarity_inplace(a, SymplecticGenerator::givens_pair(base, 0.8, 0.6));
  apply_similarity_inplace(a, SymplecticGenerator::givens_pair(base + 1, 0.6, -0.8));
  for (int i = 0; i < n2; ++i) {
    if (i == base || i == base + 1 || i == base + half || i == base + half + 1) {
      continue;
    }
    // Bit-for-bit untouched.
    CHECK(a(i, i) == before(i, i));
  }
}
