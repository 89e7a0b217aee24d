#include "hollowstab/stabilize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hollowstab/errors.hpp"
#include "hollowstab/hollow.hpp"
#include "hollowstab/kron.hpp"
#include "hollowstab/pair_hollow.hpp"
#include "hollowstab/spectrum.hpp"
#include "hollowstab/symplectic.hpp"

namespace hollowstab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void fill_blocks(DenseMatrix& m, std::span<const double> omega, int start) {
  int k = start;
  for (double w : omega) {
    m(k, k + 1) = w;
    m(k + 1, k) = -w;
    k += 2;
  }
}

DenseMatrix conjugate(const DenseMatrix& u, const DenseMatrix& m) {
  return matmul(u, matmul(m, u.transposed()));
}

std::vector<double> default_sequence(int count) {
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) v[static_cast<std::size_t>(k)] = k + 1.0;
  return v;
}

}  // namespace

NoisePattern make_noise_pattern(int n, std::span<const double> omega) {
  if (n < 2) throw PreconditionError("make_noise_pattern: n must be >= 2");
  if (static_cast<int>(omega.size()) != n / 2) {
    throw PreconditionError("make_noise_pattern: omega must have floor(n/2) entries");
  }
  double prev = 0.0;
  for (double w : omega) {
    if (!(w > prev)) {
      throw PreconditionError(
          "make_noise_pattern: omega must be strictly increasing and positive");
    }
    prev = w;
  }
  NoisePattern p{n, {omega.begin(), omega.end()}, DenseMatrix(n, n)};
  fill_blocks(p.matrix, omega, n % 2);  // odd n keeps a leading 1x1 zero
  return p;
}

LyapunovOperatorMatrix build_lyapunov_matrix(const DenseMatrix& a,
                                             const DenseMatrix& m, double mu) {
  if (!a.square() || !m.square() || a.rows() != m.rows()) {
    throw PreconditionError("build_lyapunov_matrix: size mismatch");
  }
  const int n = a.rows();
  DenseMatrix drift = matmul(m, m);
  drift *= 0.5 * mu * mu;
  drift += a;
  const DenseMatrix eye = DenseMatrix::identity(n);
  DenseMatrix k = kron(eye, drift);
  k += kron(drift, eye);
  DenseMatrix noise = kron(m, m);
  noise *= mu * mu;
  k += noise;
  return LyapunovOperatorMatrix{std::move(k)};
}

std::pair<bool, double> ms_stable(const DenseMatrix& a, const DenseMatrix& m,
                                  double mu) {
  const double alpha = spectral_abscissa(build_lyapunov_matrix(a, m, mu).k);
  return {alpha < 0.0, alpha};
}

GainSearchResult search_gain(const std::function<double(double)>& max_abscissa,
                             const GainSearchOptions& opts) {
  if (!(opts.mu_max >= 1.0)) {
    throw PreconditionError("search_gain: mu_max must be at least 1");
  }
  GainSearchResult res;
  auto eval = [&](double mu) {
    const double v = max_abscissa(mu);
    res.evaluations.emplace_back(mu, v);
    return v;
  };

  double lo = 1.0;
  double f = eval(lo);
  if (f < 0.0) {
    res.mu = res.lo = res.hi = lo;
    return res;
  }
  double hi = lo;
  bool bracketed = false;
  while (hi < opts.mu_max) {
    hi = std::min(2.0 * hi, opts.mu_max);
    f = eval(hi);
    if (f < 0.0) {
      bracketed = true;
      break;
    }
    lo = hi;
  }
  if (!bracketed) {
    std::ostringstream msg;
    msg << "no stable gain up to mu_max=" << opts.mu_max << "; abscissae:";
    for (const auto& [mu, v] : res.evaluations) msg << " (" << mu << ", " << v << ")";
    throw BreakdownError(msg.str());
  }
  // Geometric bisection keeps the bracket's relative width meaningful.
  for (int it = 0; it < 40 && (hi - lo) / hi > opts.refine_rel; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (eval(mid) < 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  res.mu = hi;  // certified stable end of the bracket
  res.lo = lo;
  res.hi = hi;
  return res;
}

StabilizationDesign noise_stabilize(std::span<const DenseMatrix> systems,
                                    const NoiseStabilizeOptions& opts) {
  if (systems.empty()) {
    throw PreconditionError("noise_stabilize: need at least one system");
  }
  const int n = systems[0].rows();
  for (const auto& s : systems) {
    if (!s.square() || s.rows() != n) {
      throw PreconditionError("noise_stabilize: systems must be square, same size");
    }
    if (!(s.trace() < 0.0)) {
      throw PreconditionError("noise_stabilize: every trace must be negative");
    }
  }
  std::vector<double> omega =
      opts.omega.empty() ? default_sequence(n / 2) : opts.omega;
  const NoisePattern pattern = make_noise_pattern(n, omega);

  StabilizationDesign design{DenseMatrix(n, n), 0.0, {}, OrthogonalAccumulator(n),
                             0.0, 0.0, false};
  DenseMatrix pattern_matrix = pattern.matrix;

  if (opts.common_transform) {
    const DenseMatrix& u = *opts.common_transform;
    const double tol = 1e2 * n * kEps *
                       std::max(1.0, u.frobenius_norm());
    for (const auto& s : systems) {
      if (!verify_block_hollow_pattern(
              u, s, 1e-8 * std::max(1.0, s.frobenius_norm()))) {
        throw PreconditionError(
            "noise_stabilize: supplied transform does not produce the paired "
            "diagonal pattern");
      }
    }
    (void)tol;
    design.transform.push(DenseFactor{u});
    if (n % 2 == 1) {
      // The verified pattern carries its zero slot last; rebuild the
      // block pattern with a trailing zero so the eigenvector pairs of
      // the noise matrix line up with it.
      pattern_matrix = DenseMatrix(n, n);
      fill_blocks(pattern_matrix, omega, 0);
    }
  } else if (systems.size() == 1) {
    DenseMatrix shifted = systems[0];
    shifted.shift_diagonal(-shifted.trace() / n);
    HollowReport hr = hollowise(shifted);
    design.transform = std::move(hr.transform);
  } else if (systems.size() == 2) {
    DenseMatrix s1 = systems[0];
    s1.shift_diagonal(-s1.trace() / n);
    DenseMatrix s2 = systems[1];
    s2.shift_diagonal(-s2.trace() / n);
    PairReport pr = pair_hollowise(s1, s2);
    design.transform = std::move(pr.transform);
  } else {
    throw PreconditionError(
        "noise_stabilize: more than two systems require a supplied common "
        "transform");
  }

  design.m = conjugate(design.transform.matrix(), pattern_matrix);

  auto worst = [&](double mu) {
    double w = -std::numeric_limits<double>::infinity();
    for (const auto& s : systems) {
      w = std::max(w, spectral_abscissa(build_lyapunov_matrix(s, design.m, mu).k));
    }
    return w;
  };
  const GainSearchResult gs = search_gain(worst, opts.gain);
  design.mu = gs.mu;
  design.mu_bracket_lo = gs.lo;
  design.mu_bracket_hi = gs.hi;
  design.abscissae.reserve(systems.size());
  for (const auto& s : systems) {
    design.abscissae.push_back(
        spectral_abscissa(build_lyapunov_matrix(s, design.m, design.mu).k));
  }
  return design;
}

StabilizationDesign rotation_stabilize(const DenseMatrix& a,
                                       const RotationStabilizeOptions& opts) {
  if (!a.square() || a.rows() % 2 != 0) {
    throw PreconditionError("rotation_stabilize: dimension must be even");
  }
  if (!(a.trace() < 0.0)) {
    throw PreconditionError("rotation_stabilize: trace must be negative");
  }
  const int n2 = a.rows();
  const int half = n2 / 2;
  std::vector<double> lambda =
      opts.lambda.empty() ? default_sequence(half) : opts.lambda;
  if (static_cast<int>(lambda.size()) != half) {
    throw PreconditionError("rotation_stabilize: lambda must have n entries");
  }
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] == 0.0) {
      throw PreconditionError("rotation_stabilize: lambda entries must be nonzero");
    }
    for (std::size_t j = i + 1; j < lambda.size(); ++j) {
      const double d = std::abs(std::abs(lambda[i]) - std::abs(lambda[j]));
      if (d <= 1e-9 * std::max(std::abs(lambda[i]), std::abs(lambda[j]))) {
        throw PreconditionError(
            "rotation_stabilize: lambda magnitudes must be pairwise distinct");
      }
    }
  }

  SymplReport sr = sympl_constant_diagonalise(a);
  DenseMatrix m0(n2, n2);
  for (int k = 0; k < half; ++k) {
    m0(k, k + half) = lambda[static_cast<std::size_t>(k)];
    m0(k + half, k) = -lambda[static_cast<std::size_t>(k)];
  }
  const DenseMatrix m_tilde = conjugate(sr.transform.matrix(), m0);

  auto abscissa = [&](double mu) {
    DenseMatrix s = m_tilde;
    s *= mu;
    s += a;
    return spectral_abscissa(s);
  };
  const GainSearchResult gs = search_gain(abscissa, opts.gain);

  StabilizationDesign design{m_tilde, gs.mu, {abscissa(gs.mu)},
                             std::move(sr.transform), gs.lo, gs.hi, true};
  return design;
}

bool verify_block_hollow_pattern(const DenseMatrix& u, const DenseMatrix& a,
                                 double tol) {
  if (!u.square() || !a.square() || u.rows() != a.rows()) {
    throw PreconditionError("verify_block_hollow_pattern: size mismatch");
  }
  if (orthogonality_residual(u) > tol) {
    throw PreconditionError("verify_block_hollow_pattern: U is not orthogonal");
  }
  const int n = a.rows();
  DenseMatrix shifted = a;
  shifted.shift_diagonal(-a.trace() / n);
  const DenseMatrix t = matmul(u.transposed(), matmul(shifted, u));
  for (int i = 0; i + 1 < n; i += 2) {
    if (std::abs(t(i, i) + t(i + 1, i + 1)) > tol) return false;
  }
  if (n % 2 == 1 && std::abs(t(n - 1, n - 1)) > tol) return false;
  return true;
}

}  // namespace hollowstab
