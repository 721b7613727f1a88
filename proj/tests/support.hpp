#pragma once

// Shared generators for property tests. Shapes stay at desk scale: block
// dimensions summing to at most 6, module rank at most 4.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "csframe/algebra.hpp"
#include "csframe/controlled.hpp"
#include "csframe/module_space.hpp"
#include "csframe/multipliers.hpp"
#include "csframe/random.hpp"

namespace testing {

inline csframe::AlgebraShape random_algebra(csframe::Rng& rng, int max_total = 6) {
  std::vector<int> dims;
  int total = 0;
  const int blocks = rng.uniform_int(1, 3);
  for (int b = 0; b < blocks && total < max_total; ++b) {
    const int d = rng.uniform_int(1, std::min(3, max_total - total));
    dims.push_back(d);
    total += d;
  }
  return csframe::AlgebraShape(dims);
}

inline csframe::ModuleShape random_module(csframe::Rng& rng, int max_rank = 4) {
  csframe::AlgebraShape a = random_algebra(rng);
  return {a, rng.uniform_int(1, max_rank)};
}

/// Hermitian part of every block; used to build self-adjoint elements.
inline csframe::AlgebraElement hermitian(const csframe::AlgebraElement& a) {
  return csframe::AlgebraElement(a.shape(), [&] {
    std::vector<csframe::Matrix> out;
    for (const auto& m : a.blocks()) out.push_back(csframe::detail::hermitian_part(m));
    return out;
  }());
}

inline double max_block_diff(const csframe::AlgebraElement& a, const csframe::AlgebraElement& b) {
  double m = 0.0;
  for (int i = 0; i < a.shape().num_blocks(); ++i) m = std::max(m, (a.block(i) - b.block(i)).cwiseAbs().maxCoeff());
  return m;
}

inline double op_diff(const csframe::ModuleOperator& a, const csframe::ModuleOperator& b) {
  return csframe::op_norm(a - b);
}

inline double vec_diff(const csframe::ModuleVector& a, const csframe::ModuleVector& b) {
  return csframe::module_norm(a - b);
}


struct Eigenframe {
  csframe::FrameSystem frame;
  csframe::Controller controller;
  csframe::Symbol weights;
};

/// A Hermitian controller with eigenvalues `lo` and `hi` in every block and a
/// frame whose vectors are eigenvectors of it: each block of psi_j has rows
/// in the eigenspace of the weight chosen for (j, b), so C psi_j = w_j psi_j.
inline Eigenframe eigenframe(const csframe::ModuleShape& shape, int count, double lo, double hi,
                             csframe::Rng& rng) {
  using namespace csframe;
  const int nb = shape.algebra.num_blocks();
  std::vector<Matrix> ctrl(static_cast<std::size_t>(nb));
  std::vector<std::vector<Matrix>> flats(static_cast<std::size_t>(count), std::vector<Matrix>(static_cast<std::size_t>(nb)));
  std::vector<std::vector<Complex>> w(static_cast<std::size_t>(count), std::vector<Complex>(static_cast<std::size_t>(nb)));
  for (int b = 0; b < nb; ++b) {
    const int d = shape.algebra.dim(b), dim = shape.flat_dim(b);
    const int k_lo = (dim + 1) / 2;
    const Matrix v = random_unitary(dim, rng);
    Eigen::VectorXd lam(dim);
    for (int i = 0; i < dim; ++i) lam(i) = i < k_lo ? lo : hi;
    ctrl[static_cast<std::size_t>(b)] = v * lam.cast<Complex>().asDiagonal() * v.adjoint();
    for (int j = 0; j < count; ++j) {
      // Alternate the weight per block so blocks get different patterns.
      const bool low = ((j + b) % 2 == 0) || dim - k_lo == 0;
      const Matrix basis = low ? Matrix(v.leftCols(k_lo)) : Matrix(v.rightCols(dim - k_lo));
      flats[static_cast<std::size_t>(j)][static_cast<std::size_t>(b)] = random_matrix(d, static_cast<int>(basis.cols()), rng) * basis.adjoint();
      w[static_cast<std::size_t>(j)][static_cast<std::size_t>(b)] = low ? lo : hi;
    }
  }
  std::vector<ModuleVector> vecs;
  std::vector<CentralElement> ws;
  for (int j = 0; j < count; ++j) {
    vecs.push_back(ModuleVector::from_flattening(shape, flats[static_cast<std::size_t>(j)]));
    ws.emplace_back(shape.algebra, w[static_cast<std::size_t>(j)]);
  }
  return {FrameSystem(vecs), Controller(ModuleOperator(shape, ctrl)), Symbol(shape.algebra, ws)};
}


/// Frame whose operator is, in every block, a direct sum of groups s_g K_g
/// with K_g a well-conditioned unit-diagonal (correlation) matrix. The scales
/// s_g run geometrically over [1, spread] across all groups of all blocks.
/// The Jacobi controller diag(Q)^{-1} is then group-wise s_g^{-1} and
/// commutes with Q.
inline csframe::FrameSystem jacobi_family(const csframe::ModuleShape& shape, int count, double spread,
                                          csframe::Rng& rng) {
  using namespace csframe;
  std::vector<std::vector<int>> lens;
  int total = 0;
  for (int b = 0; b < shape.algebra.num_blocks(); ++b) {
    const int dim = shape.flat_dim(b);
    const int groups = std::min(dim, 3);
    std::vector<int> l;
    for (int gi = 0; gi < groups; ++gi) l.push_back(dim / groups + (gi < dim % groups ? 1 : 0));
    lens.push_back(l);
    total += groups;
  }
  std::vector<Matrix> target;
  int index = 0;
  for (int b = 0; b < shape.algebra.num_blocks(); ++b) {
    const int dim = shape.flat_dim(b);
    Matrix q = Matrix::Zero(dim, dim);
    int start = 0;
    for (int len : lens[static_cast<std::size_t>(b)]) {
      Matrix k = random_hermitian_with_spectrum(len, 1.0, 2.0, rng);
      const Eigen::VectorXd d = k.diagonal().real().cwiseSqrt().cwiseInverse();
      k = d.cast<Complex>().asDiagonal() * k * d.cast<Complex>().asDiagonal();
      k.diagonal().setOnes();
      const double scale = total == 1 ? 1.0 : std::pow(spread, static_cast<double>(index) / (total - 1));
      q.block(start, start, len, len) = scale * k;
      start += len;
      ++index;
    }
    target.push_back(q);
  }
  return frame_with_operator(ModuleOperator(shape, target), count, rng);
}

/// T^p for a positive operator, by eigendecomposition.
inline csframe::ModuleOperator op_power(const csframe::ModuleOperator& t, double p) {
  using namespace csframe;
  std::vector<Matrix> out;
  for (const Matrix& m : t.blocks()) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(detail::hermitian_part(m));
    const Eigen::VectorXd ev = es.eigenvalues().array().pow(p);
    out.push_back(detail::hermitian_part(es.eigenvectors() * ev.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint()));
  }
  return ModuleOperator(t.shape(), out);
}

}  // namespace testing
