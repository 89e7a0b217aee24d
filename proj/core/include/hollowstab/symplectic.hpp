#pragma once

#include <vector>

#include "hollowstab/accumulator.hpp"
#include "hollowstab/matrix.hpp"

namespace hollowstab {

/// Result of a symplectic-orthogonal diagonal-shaping transform on a
/// 2n x 2n matrix. All factors in `transform` are SymplecticGenerators,
/// so U^T J U = J up to roundoff for J = [[0, I], [-I, 0]].
struct SymplReport {
  OrthogonalAccumulator transform;
  DenseMatrix transformed;
  double diagonal_spread = 0.0;
};

/// ||U^T J U - J||_F for the pairing k <-> k+n.
double symplectic_residual(const DenseMatrix& u);

/// ||J M - (J M)^T||_F; zero exactly when M is Hamiltonian.
double hamiltonian_residual(const DenseMatrix& m);

struct EqualizeResult {
  DenseMatrix transformed;
  std::vector<SymplecticGenerator> factors;  // n givens_pair factors
};

/// First reduction step: one plane rotation per pair (k, k+n) makes the
/// two diagonal entries of each pair equal (angle from
/// tan 2t = (a_kk - a_{k+n,k+n}) / (2 a_{k,k+n}) of the symmetric
/// part). Both half-traces then equal half the total trace.
EqualizeResult equalize_halves(const DenseMatrix& a);

/// Direct symplectic-orthogonal hollowisation of a symmetric zero-trace
/// 4x4 matrix: a unit-quaternion factor S1 pairs the diagonal into
/// (x, y, -x, -y) shape, then two plane rotations S2 = G1 G2 annihilate
/// it. tol <= 0 selects 4e2 * eps; used for the trace and symmetry
/// checks relative to ||A||_F.
SymplReport sympl_hollowise_4x4(const DenseMatrix& a4, double tol = 0.0);

/// Symplectic-orthogonal similarity making the whole diagonal constant
/// (equal to tr A / 2n): equalize_halves, then simultaneous
/// hollowisation of the two diagonal blocks through a blockdiag(V, V)
/// factor, then the 4x4 routine on rows/columns {n-1, n, 2n-1, 2n}
/// (1-based), which are the only ones still off the common value.
SymplReport sympl_constant_diagonalise(const DenseMatrix& a);

}  // namespace hollowstab
