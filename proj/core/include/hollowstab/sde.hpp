#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hollowstab/matrix.hpp"

namespace hollowstab {

/// Configuration for the Euler-Maruyama Monte Carlo run of
/// dx = (A + mu^2/2 M^2) x dt + mu M x dw (the Ito form of the
/// Stratonovich equation dx = A x dt + mu M x o dw).
///
/// Reproducibility contract: path p uses the generator seed
/// `seed XOR p`; identical configs produce bit-identical ensembles and
/// runs with different n_paths agree on shared path indices.
/// record_stride only thins what is stored, never the dynamics.
struct SdeConfig {
  DenseMatrix a;
  DenseMatrix m;
  double mu = 0.0;
  double dt = 1e-4;
  double t_end = 10.0;
  int n_paths = 100;
  std::uint64_t seed = 0;
  std::optional<std::vector<double>> x0;  // nullopt: random unit per path
  int record_stride = 1;
};

struct SamplePathEnsemble {
  std::vector<double> times;
  std::vector<std::vector<double>> norms;  // [path][sample] of ||x(t)||
  /// Average of norms^2 over the included (never-diverged) paths,
  /// accumulated by pairwise summation so it is independent of
  /// execution order.
  std::vector<double> mean_square;
  std::vector<std::uint64_t> seeds;       // per-path derived seeds
  std::vector<long long> diverged_at;     // step index, -1 if finite
  int excluded_paths = 0;
  /// PRNG and normal transform identification, recorded for
  /// reproducibility: mt19937_64 (std::mersenne_twister_engine with the
  /// standard 64-bit parameters) with Box-Muller normals.
  std::string generator = "mt19937_64+box-muller";
};

SamplePathEnsemble euler_maruyama(const SdeConfig& cfg);

/// Least-squares slope of log(mean_square) against t over the trailing
/// `tail_fraction` of the recorded grid. Throws BreakdownError when a
/// value in the window is not positive.
double log_slope(const SamplePathEnsemble& ensemble, double tail_fraction);

/// Trajectory of the adaptive-gain servo dx = (A + mu(t) M0) x,
/// dmu = ||x(t)||.
struct ServoResult {
  std::vector<double> times;
  std::vector<double> x_norm;
  std::vector<double> mu;
  bool diverged = false;
};

/// Classical fixed-step 4th-order integration of the coupled servo
/// system. M0 must be skew-symmetric.
ServoResult simulate_servo(const DenseMatrix& a, const DenseMatrix& m0,
                           std::span<const double> x0, double mu0,
                           double t_end, double dt, int record_stride = 1);

/// CSV with header "t,path_0,...,path_{N-1},mean_square".
void write_ensemble_csv(std::ostream& out, const SamplePathEnsemble& e);

/// JSON sidecar with seed, generator, step and divergence bookkeeping.
void write_ensemble_metadata_json(std::ostream& out, const SdeConfig& cfg,
                                  const SamplePathEnsemble& e);

}  // namespace hollowstab
