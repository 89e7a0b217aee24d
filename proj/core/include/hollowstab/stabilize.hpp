#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hollowstab/accumulator.hpp"
#include "hollowstab/matrix.hpp"

namespace hollowstab {

/// Skew-symmetric block pattern with simple eigenvalues {0 (odd n only),
/// +- i w_j}: for odd n a leading 1x1 zero followed by 2x2 blocks
/// [[0, w_j], [-w_j, 0]], for even n the blocks alone.
struct NoisePattern {
  int n = 0;
  std::vector<double> omega;
  DenseMatrix matrix;
};

/// omega must be strictly increasing, positive, of length floor(n/2).
NoisePattern make_noise_pattern(int n, std::span<const double> omega);

/// K realizes X -> (A + mu^2/2 M^2) X + X (A + mu^2/2 M^2)^T
/// + mu^2 M X M^T under column-stacking vec:
/// K = I(x)N + N(x)I + mu^2 (M(x)M), N = A + mu^2/2 M^2.
struct LyapunovOperatorMatrix {
  DenseMatrix k;
};

LyapunovOperatorMatrix build_lyapunov_matrix(const DenseMatrix& a,
                                             const DenseMatrix& m, double mu);

/// Mean-square stability of dx = A x dt + mu M x o dw (Stratonovich):
/// the pair (stable, spectral abscissa of the Lyapunov matrix).
std::pair<bool, double> ms_stable(const DenseMatrix& a, const DenseMatrix& m,
                                  double mu);

struct StabilizationDesign {
  DenseMatrix m;                  // unit-gain noise / rotation matrix
  double mu = 0.0;                // selected gain
  std::vector<double> abscissae;  // per target system, evaluated at mu
  OrthogonalAccumulator transform;
  double mu_bracket_lo = 0.0;  // largest examined gain that was not stable
  double mu_bracket_hi = 0.0;  // certified stable gain (equals mu)
  bool hamiltonian = false;
};

struct GainSearchOptions {
  double mu_max = 16384.0;  // 2^14
  double refine_rel = 1e-3;
};

struct GainSearchResult {
  double mu = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::pair<double, double>> evaluations;  // (mu, abscissa)
};

/// Geometric grid 1, 2, 4, ..., mu_max followed by bisection of the
/// first sign-change bracket down to the requested relative width. The
/// returned gain always has a negative abscissa. Throws BreakdownError
/// (with the evaluation trace in the message) when no grid point is
/// stable.
GainSearchResult search_gain(const std::function<double(double)>& max_abscissa,
                             const GainSearchOptions& opts);

struct NoiseStabilizeOptions {
  std::vector<double> omega;  // empty selects 1, 2, ..., floor(n/2)
  GainSearchOptions gain;
  /// Required for more than two systems: an orthogonal U whose
  /// transformed, shifted diagonals all follow the paired +-d pattern
  /// (verified, not constructed).
  std::optional<DenseMatrix> common_transform;
};

/// Common skew-symmetric noise matrix M = U P(omega) U^T and a gain mu
/// making every system dx_j = A_j x_j dt + mu M x_j o dw_j
/// asymptotically mean-square stable. For one system U hollowises
/// A - (tr A / n) I; for two it makes the shifted pair
/// (hollow, almost hollow). All traces must be strictly negative.
StabilizationDesign noise_stabilize(std::span<const DenseMatrix> systems,
                                    const NoiseStabilizeOptions& opts = {});

struct RotationStabilizeOptions {
  std::vector<double> lambda;  // empty selects 1, 2, ..., n
  GainSearchOptions gain;
};

/// Skew-symmetric Hamiltonian M = U M0 U^T (U symplectic orthogonal
/// from the constant-diagonal transform, M0 = [[0, L], [-L, 0]]) and a
/// gain mu with the spectral abscissa of A + mu M negative. The lambda
/// values must be nonzero with pairwise distinct magnitudes.
StabilizationDesign rotation_stabilize(const DenseMatrix& a,
                                       const RotationStabilizeOptions& opts = {});

/// True when diag(U^T (A - (tr A / n) I) U) follows the paired pattern
/// [d1, -d1, ..., dk, -dk] with a trailing zero for odd n, within tol.
/// Throws PreconditionError when U is not orthogonal to tol.
bool verify_block_hollow_pattern(const DenseMatrix& u, const DenseMatrix& a,
                                 double tol);

}  // namespace hollowstab
