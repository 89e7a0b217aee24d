#include "hollowstab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hollowstab/errors.hpp"
#include "hollowstab/spectrum.hpp"

namespace hollowstab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

Polynomial::Polynomial(std::vector<double> ascending_coefficients)
    : c_(std::move(ascending_coefficients)) {
  if (c_.size() > 5) {
    throw PreconditionError("Polynomial: degree above 4 not supported");
  }
  for (double v : c_) {
    if (!std::isfinite(v)) {
      throw PreconditionError("Polynomial: non-finite coefficient");
    }
    max_abs_ = std::max(max_abs_, std::abs(v));
  }
  const double trim = 1e2 * kEps * max_abs_;
  degree_ = -1;
  for (int k = static_cast<int>(c_.size()) - 1; k >= 0; --k) {
    if (std::abs(c_[static_cast<std::size_t>(k)]) > trim) {
      degree_ = k;
      break;
    }
  }
}

double Polynomial::operator()(double x) const {
  double v = 0.0;
  for (int k = static_cast<int>(c_.size()) - 1; k >= 0; --k) {
    v = v * x + c_[static_cast<std::size_t>(k)];
  }
  return v;
}

double Polynomial::derivative_at(double x) const {
  double v = 0.0;
  for (int k = static_cast<int>(c_.size()) - 1; k >= 1; --k) {
    v = v * x + k * c_[static_cast<std::size_t>(k)];
  }
  return v;
}

std::vector<double> real_roots(const Polynomial& p) {
  const int deg = p.degree();
  if (deg < 0) throw PreconditionError("real_roots: zero polynomial");
  if (deg == 0) throw PreconditionError("real_roots: degree 0 has no roots");

  const auto c = p.coefficients();
  const double lead = c[static_cast<std::size_t>(deg)];

  // Monic companion matrix; its eigenvalues are the roots.
  DenseMatrix companion(deg, deg);
  for (int i = 0; i + 1 < deg; ++i) companion(i + 1, i) = 1.0;
  for (int i = 0; i < deg; ++i) {
    companion(i, deg - 1) = -c[static_cast<std::size_t>(i)] / lead;
  }
  const Spectrum s = eigenvalues(companion);

  std::vector<double> roots;
  for (const auto& z : s.eigenvalues) {
    if (std::abs(z.imag()) > 1e-8 * (1.0 + std::abs(z.real()))) continue;
    // Newton polish on the real line; keep the best iterate seen.
    double x = z.real();
    double best_x = x;
    double best_f = std::abs(p(x));
    for (int it = 0; it < 8; ++it) {
      const double f = p(x);
      const double df = p.derivative_at(x);
      if (df == 0.0) break;
      const double step = f / df;
      if (!std::isfinite(step)) break;
      x -= step;
      const double fx = std::abs(p(x));
      if (fx < best_f) {
        best_f = fx;
        best_x = x;
      }
      if (fx <= kEps * p.max_abs_coefficient()) break;
    }
    roots.push_back(best_x);
  }

  std::sort(roots.begin(), roots.end());
  // Collapse multiple roots: companion eigenvalues of a double root
  // split by about sqrt(eps), so cluster a bit above that.
  std::vector<double> unique;
  for (double r : roots) {
    if (unique.empty() ||
        std::abs(r - unique.back()) > 1e-7 * std::max(1.0, std::abs(r))) {
      unique.push_back(r);
    }
  }
  return unique;
}

}  // namespace hollowstab
