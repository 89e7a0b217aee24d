#pragma once

#include <span>
#include <vector>

namespace hollowstab {

/// Real polynomial of degree at most 4, stored as ascending coefficients
/// c[0] + c[1] x + ... Coefficients with |c_k| <= 1e2 * eps * max|c_i|
/// are treated as zero when the degree is determined, which gives the
/// case dispatch elsewhere a deterministic rule.
class Polynomial {
 public:
  explicit Polynomial(std::vector<double> ascending_coefficients);

  std::span<const double> coefficients() const { return c_; }

  /// Degree after trimming; -1 for the (numerically) zero polynomial.
  int degree() const { return degree_; }

  double max_abs_coefficient() const { return max_abs_; }

  double operator()(double x) const;
  double derivative_at(double x) const;

 private:
  std::vector<double> c_;
  int degree_ = -1;
  double max_abs_ = 0.0;
};

/// All real roots of p (1 <= degree <= 4), multiplicities collapsed,
/// ascending. Roots come from the companion-matrix eigenvalues: a value
/// is accepted as real when |Im| <= 1e-8 * (1 + |Re|) and is then
/// polished by Newton iteration on the real line.
///
/// Throws PreconditionError for the zero polynomial and for degree 0.
std::vector<double> real_roots(const Polynomial& p);

}  // namespace hollowstab
