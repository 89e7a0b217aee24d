#pragma once

// Reference matrices shared by the regression tests: the 4x4 rotation
// example (exact radicals) and the 6x6 noise example (the transform and
// noise matrix at the 4-decimal precision they are known to).

#include <cmath>

#include "hollowstab/matrix.hpp"

namespace hstest {

inline hollowstab::DenseMatrix fixture_a_diag4() {
  return hollowstab::DenseMatrix::diagonal(
      std::vector<double>{1.0, 1.0, 1.0, -4.0});
}

inline hollowstab::DenseMatrix fixture_u_sympl_4x4() {
  const double r = std::sqrt(2.0) / 2.0;
  return hollowstab::DenseMatrix::from_rows({{r, r, 0.0, 0.0},
                                             {0.5, -0.5, 0.5, -0.5},
                                             {0.0, 0.0, r, r},
                                             {-0.5, 0.5, 0.5, -0.5}});
}

/// Unit-gain skew Hamiltonian stabilizer U [[0, L], [-L, 0]] U^T with
/// L = diag(1, 2): entries are quarters of {0, +-sqrt(2), +-6}.
inline hollowstab::DenseMatrix fixture_m0_rot_4x4() {
  const double r = std::sqrt(2.0) / 4.0;
  const double s = 6.0 / 4.0;
  return hollowstab::DenseMatrix::from_rows({{0.0, -r, s, -r},
                                             {r, 0.0, -r, s},
                                             {-s, r, 0.0, -r},
                                             {r, -s, r, 0.0}});
}

inline hollowstab::DenseMatrix fixture_a1_6x6() {
  return hollowstab::DenseMatrix::from_rows({{-1, 1, 1, 1, 1, 1},
                                             {1, 0, 1, 1, 1, 1},
                                             {0, 1, 0, 1, 1, 1},
                                             {0, 0, 1, 0, 1, 1},
                                             {0, 0, 0, 1, 0, 1},
                                             {0, 0, 0, 0, 1, 0}});
}

inline hollowstab::DenseMatrix fixture_a2_6x6() {
  return hollowstab::DenseMatrix::from_rows({{1, -1, 0, 0, 0, 0},
                                             {1, 1, -1, 0, 0, 0},
                                             {1, 0, 1, -1, 0, 0},
                                             {1, 0, 0, 1, -1, 0},
                                             {1, 0, 0, 0, 1, -1},
                                             {1, 0, 0, 0, 0, -6}});
}

/// Known to four decimals only; assertions against it use widened
/// tolerances.
inline hollowstab::DenseMatrix fixture_m_noise_6x6() {
  return hollowstab::DenseMatrix::from_rows(
      {{0.0000, 0.6949, -1.3331, 1.9489, -0.3262, -1.1247},
       {-0.6949, -0.0000, -0.2634, 0.1201, -1.1153, -0.6950},
       {1.3331, 0.2634, 0.0000, -0.0300, 0.6217, -1.5717},
       {-1.9489, -0.1201, 0.0300, 0.0000, 0.9140, -0.6124},
       {0.3262, 1.1153, -0.6217, -0.9140, 0.0000, -0.8317},
       {1.1247, 0.6950, 1.5717, 0.6124, 0.8317, -0.0000}});
}

}  // namespace hstest
