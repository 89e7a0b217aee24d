#pragma once

// Shared generators and checkers for the test suites. Everything here
// is deterministic given the seed passed in.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "hollowstab/accumulator.hpp"
#include "hollowstab/matrix.hpp"

namespace hstest {

using hollowstab::DenseMatrix;

inline std::mt19937_64 make_rng(std::uint64_t seed) {
  return std::mt19937_64(seed);
}

inline DenseMatrix random_matrix(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  DenseMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = u(rng);
  return a;
}

inline DenseMatrix random_symmetric(std::mt19937_64& rng, int n, double scale = 1.0) {
  DenseMatrix a = random_matrix(rng, n, scale);
  return a.symmetric_part();
}

inline DenseMatrix random_zero_trace(std::mt19937_64& rng, int n, double scale = 1.0) {
  DenseMatrix a = random_matrix(rng, n, scale);
  a.shift_diagonal(-a.trace() / n);
  return a;
}

inline DenseMatrix random_symmetric_zero_trace(std::mt19937_64& rng, int n,
                                               double scale = 1.0) {
  DenseMatrix a = random_symmetric(rng, n, scale);
  a.shift_diagonal(-a.trace() / n);
  return a;
}

/// Product of 3n random plane rotations: orthogonal by construction.
inline DenseMatrix random_orthogonal(std::mt19937_64& rng, int n) {
  if (n == 1) return DenseMatrix::identity(1);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);
  DenseMatrix q = DenseMatrix::identity(n);
  for (int k = 0; k < 3 * n; ++k) {
    int i = pick(rng), j = pick(rng);
    if (i == j) continue;
    if (i > j) std::swap(i, j);
    const double t = ang(rng);
    hollowstab::apply_givens_right_inplace(
        q, hollowstab::GivensRotation{i, j, std::cos(t), std::sin(t)});
  }
  return q;
}

inline std::vector<double> random_unit_vector(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(n));
  double s = 0.0;
  do {
    s = 0.0;
    for (auto& x : v) {
      x = g(rng);
      s += x * x;
    }
  } while (s == 0.0);
  const double r = std::sqrt(s);
  for (auto& x : v) x /= r;
  return v;
}

/// Greedy multiset match; returns the largest pairing distance or +inf
/// if the sizes differ.
inline double eigenvalue_multiset_distance(
    std::vector<std::complex<double>> a, std::vector<std::complex<double>> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  std::vector<bool> used(b.size(), false);
  for (const auto& z : a) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = b.size();
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (used[k]) continue;
      const double d = std::abs(z - b[k]);
      if (d < best) {
        best = d;
        arg = k;
      }
    }
    used[arg] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace hstest
