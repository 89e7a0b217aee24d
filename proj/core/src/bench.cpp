#include "hollowstab/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "hollowstab/errors.hpp"
#include "hollowstab/matrix.hpp"
#include "hollowstab/pair_hollow.hpp"
#include "hollowstab/symplectic.hpp"

namespace hollowstab {

namespace {

DenseMatrix random_square(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DenseMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = u(rng);
  return a;
}

}  // namespace

BenchResult run_scaling_bench(BenchAlgo algo, std::span<const int> sizes,
                              int trials, std::uint64_t seed) {
  if (sizes.empty()) throw PreconditionError("bench: no sizes given");
  if (trials < 1) throw PreconditionError("bench: trials must be >= 1");
  for (int n : sizes) {
    if (n < 2) throw PreconditionError("bench: sizes must be >= 2");
    if (algo == BenchAlgo::symplectic && n % 2 != 0) {
      throw PreconditionError("bench: symplectic sizes must be even");
    }
  }

  BenchResult result;
  std::mt19937_64 rng(seed);
  for (int n : sizes) {
    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(trials));
    for (int t = 0; t < trials; ++t) {
      if (algo == BenchAlgo::pair) {
        DenseMatrix a = random_square(rng, n);
        a.shift_diagonal(-a.trace() / n);
        DenseMatrix b = random_square(rng, n);
        b.shift_diagonal(-b.trace() / n);
        const auto t0 = std::chrono::steady_clock::now();
        (void)pair_hollowise(a, b);
        const auto t1 = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
      } else {
        DenseMatrix a = random_square(rng, n);
        const auto t0 = std::chrono::steady_clock::now();
        (void)sympl_constant_diagonalise(a);
        const auto t1 = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
      }
    }
    std::sort(times.begin(), times.end());
    result.rows.push_back(BenchRow{n, times[times.size() / 2]});
  }

  if (result.rows.size() >= 2) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const auto count = static_cast<double>(result.rows.size());
    for (const auto& row : result.rows) {
      const double x = std::log(static_cast<double>(row.size));
      const double y = std::log(std::max(row.median_ms, 1e-9));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    result.loglog_slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  }
  return result;
}

}  // namespace hollowstab
