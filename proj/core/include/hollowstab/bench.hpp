#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hollowstab {

enum class BenchAlgo { pair, symplectic };

struct BenchRow {
  int size = 0;
  double median_ms = 0.0;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  /// Least-squares slope of log(median) vs log(size); absent with a
  /// single size.
  std::optional<double> loglog_slope;
};

/// Times the simultaneous-pair or symplectic transform on random
/// matrices of the given sizes (median over `trials` runs per size).
/// Sizes must be positive, and even for the symplectic algorithm.
BenchResult run_scaling_bench(BenchAlgo algo, std::span<const int> sizes,
                              int trials, std::uint64_t seed);

}  // namespace hollowstab
