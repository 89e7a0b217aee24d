#pragma once

// Independent reference computations the implementation is checked
// against. These deliberately use different algorithms than the library
// (grid search + bisection, explicit operator application, fixed-step
// moment integration).

#include <cmath>
#include <functional>
#include <vector>

#include "hollowstab/matrix.hpp"

namespace hstest {

/// Real roots of an ascending-coefficient polynomial found by scanning a
/// fine grid over the Cauchy-style interval [-1 - max|c_i/c_d|,
/// 1 + max|c_i/c_d|] for sign changes and bisecting each one.
/// Roots of even multiplicity are invisible to this oracle.
inline std::vector<double> grid_bisection_roots(
    const std::vector<double>& coeffs, int degree, int grid_points = 4096) {
  auto eval = [&](double x) {
    double v = 0.0;
    for (int k = degree; k >= 0; --k) v = v * x + coeffs[static_cast<std::size_t>(k)];
    return v;
  };
  double bound = 0.0;
  const double lead = coeffs[static_cast<std::size_t>(degree)];
  for (int k = 0; k < degree; ++k) {
    bound = std::max(bound, std::abs(coeffs[static_cast<std::size_t>(k)] / lead));
  }
  const double lo = -1.0 - bound, hi = 1.0 + bound;
  std::vector<double> roots;
  double x0 = lo, f0 = eval(lo);
  for (int g = 1; g <= grid_points; ++g) {
    const double x1 = lo + (hi - lo) * g / grid_points;
    const double f1 = eval(x1);
    if (f0 == 0.0) {
      roots.push_back(x0);
    } else if (f0 * f1 < 0.0) {
      double a = x0, b = x1, fa = f0;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = eval(mid);
        if (fm == 0.0) {
          a = b = mid;
          break;
        }
        if (fa * fm < 0.0) {
          b = mid;
        } else {
          a = mid;
          fa = fm;
        }
        if (b - a <= 1e-14 * std::max(1.0, std::abs(a))) break;
      }
      roots.push_back(0.5 * (a + b));
    }
    x0 = x1;
    f0 = f1;
  }
  if (f0 == 0.0) roots.push_back(x0);
  return roots;
}

/// (N X + X N^T + mu^2 M X M^T) computed directly with matrix products.
inline hollowstab::DenseMatrix lyapunov_apply_direct(
    const hollowstab::DenseMatrix& n_drift, const hollowstab::DenseMatrix& m,
    double mu, const hollowstab::DenseMatrix& x) {
  using hollowstab::matmul;
  hollowstab::DenseMatrix r = matmul(n_drift, x);
  r += matmul(x, n_drift.transposed());
  hollowstab::DenseMatrix noise = matmul(m, matmul(x, m.transposed()));
  noise *= mu * mu;
  r += noise;
  return r;
}

}  // namespace hstest
