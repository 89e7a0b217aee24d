#include "hollowstab/accumulator.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "hollowstab/errors.hpp"

namespace hollowstab {

namespace {

// A <- E^T A E for a dense m x m block E embedded at indices idx.
void embedded_similarity(DenseMatrix& a, std::span<const int> idx,
                         std::span<const double> block, int m) {
  const int n = a.rows();
  for (int q = 0; q < m; ++q) {
    if (idx[q] < 0 || idx[q] >= n) {
      throw PreconditionError("embedded block: index out of bounds");
    }
  }
  std::array<double, 4> tmp{};
  // Rows: new_row[r] = sum_q block[q][r] * row[idx[q]].
  for (int k = 0; k < n; ++k) {
    for (int r = 0; r < m; ++r) {
      double s = 0.0;
      for (int q = 0; q < m; ++q) s += block[q * m + r] * a(idx[q], k);
      tmp[static_cast<std::size_t>(r)] = s;
    }
    for (int r = 0; r < m; ++r) a(idx[r], k) = tmp[static_cast<std::size_t>(r)];
  }
  // Columns: new_col[r] = sum_q col[idx[q]] * block[q][r].
  for (int k = 0; k < n; ++k) {
    for (int r = 0; r < m; ++r) {
      double s = 0.0;
      for (int q = 0; q < m; ++q) s += a(k, idx[q]) * block[q * m + r];
      tmp[static_cast<std::size_t>(r)] = s;
    }
    for (int r = 0; r < m; ++r) a(k, idx[r]) = tmp[static_cast<std::size_t>(r)];
  }
}

// Q <- Q * E.
void embedded_right(DenseMatrix& q, std::span<const int> idx,
                    std::span<const double> block, int m) {
  const int n = q.rows();
  std::array<double, 4> tmp{};
  for (int k = 0; k < n; ++k) {
    for (int r = 0; r < m; ++r) {
      double s = 0.0;
      for (int p = 0; p < m; ++p) s += q(k, idx[p]) * block[p * m + r];
      tmp[static_cast<std::size_t>(r)] = s;
    }
    for (int r = 0; r < m; ++r) q(k, idx[r]) = tmp[static_cast<std::size_t>(r)];
  }
}

void swap_similarity(DenseMatrix& a, int i, int j) {
  const int n = a.rows();
  if (i == j) return;
  for (int k = 0; k < n; ++k) std::swap(a(i, k), a(j, k));
  for (int k = 0; k < n; ++k) std::swap(a(k, i), a(k, j));
}

int half_dimension(const DenseMatrix& a) {
  if (a.rows() % 2 != 0) {
    throw PreconditionError("symplectic factor: odd dimension");
  }
  return a.rows() / 2;
}

}  // namespace

SymplecticGenerator SymplecticGenerator::givens_pair(int k, double c, double s) {
  SymplecticGenerator g;
  g.kind = Kind::givens_pair;
  g.idx = {k, 0, 0};
  g.par = {c, s, 0.0, 0.0};
  return g;
}

SymplecticGenerator SymplecticGenerator::double_givens(int i, int j, double c,
                                                       double s) {
  if (i >= j) throw PreconditionError("double_givens: requires i < j");
  SymplecticGenerator g;
  g.kind = Kind::double_givens;
  g.idx = {i, j, 0};
  g.par = {c, s, 0.0, 0.0};
  return g;
}

SymplecticGenerator SymplecticGenerator::double_swap(int i, int j) {
  SymplecticGenerator g;
  g.kind = Kind::double_swap;
  g.idx = {i, j, 0};
  return g;
}

SymplecticGenerator SymplecticGenerator::double_embed3(
    std::array<int, 3> idx, std::array<double, 9> block) {
  SymplecticGenerator g;
  g.kind = Kind::double_embed3;
  g.idx = idx;
  g.block = block;
  return g;
}

SymplecticGenerator SymplecticGenerator::quaternion(int k, double p0, double p1,
                                                    double p2, double p3) {
  SymplecticGenerator g;
  g.kind = Kind::quaternion;
  g.idx = {k, 0, 0};
  g.par = {p0, p1, p2, p3};
  return g;
}

SymplecticGenerator SymplecticGenerator::block_diag(DenseMatrix v) {
  if (!v.square()) throw PreconditionError("block_diag: V not square");
  SymplecticGenerator g;
  g.kind = Kind::block_v;
  g.v = std::move(v);
  return g;
}

std::array<double, 16> SymplecticGenerator::quaternion_block(double p0,
                                                             double p1,
                                                             double p2,
                                                             double p3) {
  return {p0, -p1, -p2, -p3,
          p1,  p0, -p3,  p2,
          p2,  p3,  p0, -p1,
          p3, -p2,  p1,  p0};
}

namespace {

template <typename Apply2, typename Apply3, typename Apply4, typename Swap,
          typename BlockV>
void dispatch_symplectic(const SymplecticGenerator& g, int n, Apply2&& rot,
                         Apply3&& embed3, Apply4&& embed4, Swap&& swp,
                         BlockV&& blockv) {
  using Kind = SymplecticGenerator::Kind;
  switch (g.kind) {
    case Kind::givens_pair: {
      const int k = g.idx[0];
      rot(k, k + n, g.par[0], g.par[1]);
      break;
    }
    case Kind::double_givens: {
      rot(g.idx[0], g.idx[1], g.par[0], g.par[1]);
      rot(g.idx[0] + n, g.idx[1] + n, g.par[0], g.par[1]);
      break;
    }
    case Kind::double_swap: {
      swp(g.idx[0], g.idx[1]);
      swp(g.idx[0] + n, g.idx[1] + n);
      break;
    }
    case Kind::double_embed3: {
      embed3(std::array<int, 3>{g.idx[0], g.idx[1], g.idx[2]}, g.block);
      embed3(std::array<int, 3>{g.idx[0] + n, g.idx[1] + n, g.idx[2] + n},
             g.block);
      break;
    }
    case Kind::quaternion: {
      const int k = g.idx[0];
      const auto s4 =
          SymplecticGenerator::quaternion_block(g.par[0], g.par[1], g.par[2],
                                                g.par[3]);
      embed4(std::array<int, 4>{k, k + 1, k + n, k + n + 1}, s4);
      break;
    }
    case Kind::block_v:
      blockv(g.v);
      break;
  }
}

}  // namespace

void apply_similarity_inplace(DenseMatrix& a, const TransformFactor& f) {
  if (!a.square()) throw PreconditionError("similarity: matrix not square");
  std::visit(
      [&a](const auto& factor) {
        using T = std::decay_t<decltype(factor)>;
        if constexpr (std::is_same_v<T, GivensRotation>) {
          apply_givens_similarity_inplace(a, factor);
        } else if constexpr (std::is_same_v<T, IndexSwap>) {
          swap_similarity(a, factor.i, factor.j);
        } else if constexpr (std::is_same_v<T, EmbeddedBlock3>) {
          embedded_similarity(a, factor.idx, factor.block, 3);
        } else if constexpr (std::is_same_v<T, DenseFactor>) {
          if (factor.q.rows() != a.rows()) {
            throw PreconditionError("dense factor: size mismatch");
          }
          a = matmul(factor.q.transposed(), matmul(a, factor.q));
        } else {
          const int n = half_dimension(a);
          dispatch_symplectic(
              factor, n,
              [&a](int i, int j, double c, double s) {
                apply_givens_similarity_inplace(a, GivensRotation{i, j, c, s});
              },
              [&a](std::array<int, 3> idx, std::array<double, 9> b) {
                embedded_similarity(a, idx, b, 3);
              },
              [&a](std::array<int, 4> idx, std::array<double, 16> b) {
                embedded_similarity(a, idx, b, 4);
              },
              [&a](int i, int j) { swap_similarity(a, i, j); },
              [&a, n](const DenseMatrix& v) {
                if (v.rows() != n) {
                  throw PreconditionError("block_v: size mismatch");
                }
                // A <- blockdiag(V,V)^T A blockdiag(V,V), done blockwise.
                DenseMatrix out(2 * n, 2 * n);
                for (int bi = 0; bi < 2; ++bi) {
                  for (int bj = 0; bj < 2; ++bj) {
                    for (int i = 0; i < n; ++i) {
                      for (int j = 0; j < n; ++j) {
                        double s = 0.0;
                        for (int p = 0; p < n; ++p) {
                          double t = 0.0;
                          for (int q = 0; q < n; ++q) {
                            t += a(bi * n + p, bj * n + q) * v(q, j);
                          }
                          s += v(p, i) * t;
                        }
                        out(bi * n + i, bj * n + j) = s;
                      }
                    }
                  }
                }
                a = out;
              });
        }
      },
      f);
}

void apply_right_inplace(DenseMatrix& q, const TransformFactor& f) {
  if (!q.square()) throw PreconditionError("apply_right: matrix not square");
  std::visit(
      [&q](const auto& factor) {
        using T = std::decay_t<decltype(factor)>;
        if constexpr (std::is_same_v<T, GivensRotation>) {
          apply_givens_right_inplace(q, factor);
        } else if constexpr (std::is_same_v<T, IndexSwap>) {
          for (int k = 0; k < q.rows(); ++k) {
            std::swap(q(k, factor.i), q(k, factor.j));
          }
        } else if constexpr (std::is_same_v<T, EmbeddedBlock3>) {
          embedded_right(q, factor.idx, factor.block, 3);
        } else if constexpr (std::is_same_v<T, DenseFactor>) {
          if (factor.q.rows() != q.rows()) {
            throw PreconditionError("dense factor: size mismatch");
          }
          q = matmul(q, factor.q);
        } else {
          const int n = half_dimension(q);
          dispatch_symplectic(
              factor, n,
              [&q](int i, int j, double c, double s) {
                apply_givens_right_inplace(q, GivensRotation{i, j, c, s});
              },
              [&q](std::array<int, 3> idx, std::array<double, 9> b) {
                embedded_right(q, idx, b, 3);
              },
              [&q](std::array<int, 4> idx, std::array<double, 16> b) {
                embedded_right(q, idx, b, 4);
              },
              [&q](int i, int j) {
                for (int k = 0; k < q.rows(); ++k) std::swap(q(k, i), q(k, j));
              },
              [&q, n](const DenseMatrix& v) {
                if (v.rows() != n) {
                  throw PreconditionError("block_v: size mismatch");
                }
                DenseMatrix out(2 * n, 2 * n);
                for (int k = 0; k < 2 * n; ++k) {
                  for (int b = 0; b < 2; ++b) {
                    for (int j = 0; j < n; ++j) {
                      double s = 0.0;
                      for (int p = 0; p < n; ++p) s += q(k, b * n + p) * v(p, j);
                      out(k, b * n + j) = s;
                    }
                  }
                }
                q = out;
              });
        }
      },
      f);
}

DenseMatrix realize(const TransformFactor& f, int n) {
  DenseMatrix e = DenseMatrix::identity(n);
  apply_right_inplace(e, f);
  return e;
}

OrthogonalAccumulator::OrthogonalAccumulator(int n)
    : q_(DenseMatrix::identity(n)) {}

void OrthogonalAccumulator::push(TransformFactor f) {
  apply_right_inplace(q_, f);
  factors_.push_back(std::move(f));
}

void OrthogonalAccumulator::push_apply(TransformFactor f,
                                       std::span<DenseMatrix*> targets) {
  for (DenseMatrix* t : targets) apply_similarity_inplace(*t, f);
  push(std::move(f));
}

void OrthogonalAccumulator::push_apply(TransformFactor f, DenseMatrix& target) {
  apply_similarity_inplace(target, f);
  push(std::move(f));
}

double OrthogonalAccumulator::orthogonality_residual() const {
  return hollowstab::orthogonality_residual(q_);
}

}  // namespace hollowstab
