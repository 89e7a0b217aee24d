#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "hollowstab/errors.hpp"
#include "hollowstab/hollow.hpp"
#include "hollowstab/matrix.hpp"
#include "hollowstab/spectrum.hpp"
#include "support/random_inputs.hpp"

using namespace hollowstab;

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}

TEST_CASE("neutral_vector_2x2 spec examples") {
  // s11 = 0 picks e1.
  auto v1 = neutral_vector_2x2(DenseMatrix::from_rows({{0.0, 1.0}, {1.0, 5.0}}));
  CHECK(v1[0] == 1.0);
  CHECK(v1[1] == 0.0);

  // diag(1, -1): the symmetric choice (1, 1)/sqrt(2).
  auto v2 = neutral_vector_2x2(DenseMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}));
  CHECK(v2[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(v2[1] == doctest::Approx(1.0 / std::sqrt(2.0)));

  // [[1, 2.5], [2.5, -1]]: x^2 + 5x - 1 = 0, smaller root (-5+sqrt(29))/2.
  auto v3 = neutral_vector_2x2(DenseMatrix::from_rows({{1.0, 2.5}, {2.5, -1.0}}));
  const double x = (-5.0 + std::sqrt(29.0)) / 2.0;
  const double r = std::hypot(x, 1.0);
  CHECK(v3[0] == doctest::Approx(x / r).epsilon(1e-14));
  CHECK(v3[1] == doctest::Approx(1.0 / r).epsilon(1e-14));

  // Definite form has no real neutral vector.
  CHECK_THROWS_AS(
      neutral_vector_2x2(DenseMatrix::from_rows({{1.0, 0.1}, {0.1, 2.0}})),
      PreconditionError);
}

TEST_CASE("neutral_vector_2x2 residual property") {
  auto rng = hstest::make_rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 500; ++trial) {
    const double s11 = std::abs(u(rng));
    const double s22 = -std::abs(u(rng));
    const double s12 = u(rng);
    DenseMatrix s = DenseMatrix::from_rows({{s11, s12}, {s12, s22}});
    auto v = neutral_vector_2x2(s);
    const double norm = s.frobenius_norm();
    const double form =
        s11 * v[0] * v[0] + 2.0 * s12 * v[0] * v[1] + s22 * v[1] * v[1];
    CHECK(std::abs(form) <= 1e2 * kEps * std::max(norm, 1e-30));
    CHECK(std::abs(v[0] * v[0] + v[1] * v[1] - 1.0) <= 4 * kEps);
  }
}

TEST_CASE("hollowise leaves an already hollow matrix alone") {
  DenseMatrix a = DenseMatrix::from_rows(
      {{0.0, 1.0, -2.0}, {3.0, 0.0, 0.5}, {1.0, -1.0, 0.0}});
  HollowReport rep = hollowise(a);
  CHECK(rep.rotations_used == 0);
  CHECK(max_abs_diff(rep.transform.matrix(), DenseMatrix::identity(3)) == 0.0);
  CHECK(max_abs_diff(rep.transformed, a) == 0.0);
}

TEST_CASE("hollowise diag(1,-1) uses one rotation") {
  DenseMatrix a = DenseMatrix::diagonal(std::vector<double>{1.0, -1.0});
  HollowReport rep = hollowise(a);
  CHECK(rep.rotations_used == 1);
  CHECK(rep.max_abs_diagonal <= 8 * kEps);
  CHECK(std::abs(std::abs(rep.transformed(0, 1)) - 1.0) <= 8 * kEps);
  CHECK(std::abs(std::abs(rep.transformed(1, 0)) - 1.0) <= 8 * kEps);
}

TEST_CASE("hollowise rejects nonzero trace") {
  DenseMatrix a = DenseMatrix::identity(3);
  CHECK_THROWS_AS(hollowise(a), PreconditionError);
}

TEST_CASE("hollowise properties on random zero-trace matrices") {
  auto rng = hstest::make_rng(101);
  for (int n : {2, 3, 5, 17, 50}) {
    for (int trial = 0; trial < 20; ++trial) {
      DenseMatrix a = hstest::random_zero_trace(rng, n, 1.0);
      const double norm = a.frobenius_norm();
      const double tol = 1e2 * n * kEps;
      int nu = 0;
      for (int i = 0; i < n; ++i) {
        if (std::abs(a(i, i)) > tol * norm) ++nu;
      }
      HollowReport rep = hollowise(a);
      CHECK(rep.max_abs_diagonal <= 1e3 * n * kEps * norm);
      CHECK(rep.rotations_used <= std::max(0, nu - 1));
      CHECK(rep.transform.orthogonality_residual() <= 1e2 * n * kEps);
      // Q^T A Q equals the reported transform.
      DenseMatrix qaq = matmul(rep.transform.matrix().transposed(),
                               matmul(a, rep.transform.matrix()));
      CHECK(max_abs_diff(qaq, rep.transformed) <= 1e2 * n * kEps * norm);
    }
  }
}

TEST_CASE("hollowise preserves the eigenvalue multiset") {
  auto rng = hstest::make_rng(202);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 12;
    DenseMatrix a = hstest::random_zero_trace(rng, n, 1.0);
    HollowReport rep = hollowise(a);
    CHECK(hstest::eigenvalue_multiset_distance(
              eigenvalues(a).eigenvalues,
              eigenvalues(rep.transformed).eigenvalues) <=
          1e-8 * a.frobenius_norm());
  }
}

TEST_CASE("constant_diagonalise spec examples") {
  // c I is untouched.
  DenseMatrix ci = DenseMatrix::identity(4);
  ci *= 3.25;
  HollowReport r1 = constant_diagonalise(ci);
  CHECK(r1.rotations_used == 0);
  CHECK(max_abs_diff(r1.transformed, ci) == 0.0);

  // diag(1,1,1,-4): every diagonal entry becomes -1/4.
  DenseMatrix a = DenseMatrix::diagonal(std::vector<double>{1.0, 1.0, 1.0, -4.0});
  HollowReport r2 = constant_diagonalise(a);
  for (int i = 0; i < 4; ++i) {
    CHECK(r2.transformed(i, i) == doctest::Approx(-0.25).epsilon(1e-12));
  }
  CHECK(r2.max_abs_diagonal <= 1e3 * 4 * kEps * a.frobenius_norm());
  CHECK(hstest::eigenvalue_multiset_distance(
            eigenvalues(a).eigenvalues,
            eigenvalues(r2.transformed).eigenvalues) <= 1e-8 * 4.0);

  // [[2, 1], [0, 0]]: diagonal becomes (1, 1).
  DenseMatrix b = DenseMatrix::from_rows({{2.0, 1.0}, {0.0, 0.0}});
  HollowReport r3 = constant_diagonalise(b);
  CHECK(r3.transformed(0, 0) == doctest::Approx(1.0));
  CHECK(r3.transformed(1, 1) == doctest::Approx(1.0));
}
