#pragma once

#include <array>
#include <span>
#include <variant>
#include <vector>

#include "hollowstab/givens.hpp"
#include "hollowstab/matrix.hpp"

namespace hollowstab {

/// Exchange of coordinates i and j (a symmetric permutation).
struct IndexSwap {
  int i = 0;
  int j = 0;
};

/// Dense orthogonal 3x3 block acting on coordinates idx[0..2]; the
/// realized matrix is the identity elsewhere.
struct EmbeddedBlock3 {
  std::array<int, 3> idx{};
  std::array<double, 9> block{};  // row-major
};

/// Elementary symplectic-orthogonal factor on a 2n-dimensional space
/// with the pairing k <-> k+n, i.e. J = [[0, I], [-I, 0]]. Every
/// realized matrix U satisfies U^T J U = J up to roundoff.
struct SymplecticGenerator {
  enum class Kind {
    givens_pair,    // plane rotation on (k, k+n)
    double_givens,  // one rotation applied on (i, j) and on (i+n, j+n)
    double_swap,    // coordinate swap on (i, j) and on (i+n, j+n)
    double_embed3,  // one 3x3 block applied at (i,j,k) and its +n copy
    quaternion,     // unit-quaternion 4x4 block on (k, k+1, k+n, k+n+1)
    block_v,        // blockdiag(V, V) with V orthogonal
  };

  Kind kind = Kind::givens_pair;
  std::array<int, 3> idx{};      // indices within the first half
  std::array<double, 4> par{};   // (c, s, -, -) or (p0, p1, p2, p3)
  std::array<double, 9> block{}; // for double_embed3
  DenseMatrix v;                 // for block_v

  static SymplecticGenerator givens_pair(int k, double c, double s);
  static SymplecticGenerator double_givens(int i, int j, double c, double s);
  static SymplecticGenerator double_swap(int i, int j);
  static SymplecticGenerator double_embed3(std::array<int, 3> idx,
                                           std::array<double, 9> block);
  static SymplecticGenerator quaternion(int k, double p0, double p1,
                                        double p2, double p3);
  static SymplecticGenerator block_diag(DenseMatrix v);

  /// The unit-quaternion 4x4 matrix for parameters p (row-major).
  static std::array<double, 16> quaternion_block(double p0, double p1,
                                                 double p2, double p3);
};

/// A full dense orthogonal matrix treated as one factor (used when a
/// transform comes from outside instead of being built up).
struct DenseFactor {
  DenseMatrix q;
};

using TransformFactor = std::variant<GivensRotation, IndexSwap, EmbeddedBlock3,
                                     SymplecticGenerator, DenseFactor>;

/// A <- F^T A F. Structured factors touch O(1) rows and columns, so the
/// cost is O(n) (block_v factors are the dense exception).
void apply_similarity_inplace(DenseMatrix& a, const TransformFactor& f);

/// Q <- Q * F.
void apply_right_inplace(DenseMatrix& q, const TransformFactor& f);

/// The factor as a dense n x n matrix.
DenseMatrix realize(const TransformFactor& f, int n);

/// Ordered product of elementary orthogonal factors, kept both as an
/// explicit matrix Q and as the factor list. Q is updated in O(n) per
/// structured factor, and the list can be replayed onto other matrices
/// or audited against Q.
class OrthogonalAccumulator {
 public:
  explicit OrthogonalAccumulator(int n);

  int dimension() const { return q_.rows(); }
  const DenseMatrix& matrix() const { return q_; }
  std::span<const TransformFactor> factors() const { return factors_; }

  /// Q <- Q * F and appends F to the log.
  void push(TransformFactor f);

  /// push(f) plus A <- F^T A F for every target.
  void push_apply(TransformFactor f, std::span<DenseMatrix*> targets);
  void push_apply(TransformFactor f, DenseMatrix& target);

  double orthogonality_residual() const;

 private:
  DenseMatrix q_;
  std::vector<TransformFactor> factors_;
};

}  // namespace hollowstab
