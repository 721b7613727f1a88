#pragma once

// Finite frames {psi_j} in H = A^n.
//
// With P_j the block-b flattening of psi_j, the frame operator
// S f = sum_j <f,psi_j> psi_j acts as F -> F Q with Q = sum_j P_j^* P_j,
// so every frame inequality in the Loewner order of A reduces to the
// spectrum of the Hermitian matrices Q_b.

#include <cstdint>
#include <vector>

#include "csframe/module_space.hpp"

namespace csframe {

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// A finite A-valued sequence with <a,b> = sum_j a_j b_j^*.
class CoefficientSequence {
 public:
  CoefficientSequence(AlgebraShape shape, std::vector<AlgebraElement> coeffs);

  const AlgebraShape& shape() const { return shape_; }
  std::size_t size() const { return coeffs_.size(); }
  const AlgebraElement& operator[](std::size_t j) const { return coeffs_[j]; }
  const std::vector<AlgebraElement>& coeffs() const { return coeffs_; }

 private:
  AlgebraShape shape_;
  std::vector<AlgebraElement> coeffs_;
};

AlgebraElement inner(const CoefficientSequence& a, const CoefficientSequence& b);

class FrameSystem {
 public:
  /// Requires at least one vector, all of one shape. Assembles the frame
  /// operator eagerly.
  explicit FrameSystem(std::vector<ModuleVector> vectors);

  const ModuleShape& shape() const { return vectors_.front().shape(); }
  std::size_t size() const { return vectors_.size(); }
  const ModuleVector& operator[](std::size_t j) const { return vectors_[j]; }
  const std::vector<ModuleVector>& vectors() const { return vectors_; }
  /// Cached S, exactly Hermitian in every block.
  const ModuleOperator& frame_op() const { return frame_op_; }

  /// {e_1, ..., e_n}, a Parseval frame.
  static FrameSystem standard_basis(const ModuleShape& shape);

 private:
  std::vector<ModuleVector> vectors_;
  ModuleOperator frame_op_;
};

CoefficientSequence analysis(const FrameSystem& frame, const ModuleVector& f);
ModuleVector synthesis(const FrameSystem& frame, const CoefficientSequence& c);
ModuleOperator frame_operator(const FrameSystem& frame);

/// Spectral extremes of S over all blocks: the largest C and smallest D with
/// C<f,f> <= <Sf,f> <= D<f,f>.
FrameBounds optimal_bounds(const FrameSystem& frame);

/// Lower optimal bound exceeds tol * upper.
bool is_frame(const FrameSystem& frame, double tol = kDefaultTol);
/// Always true for finite systems; see optimal_bounds().upper for the bound.
bool is_bessel(const FrameSystem& frame, double tol = kDefaultTol);

/// Outcome of sampling ||<Tf,f>|| against lower*||f||^2 and upper*||f||^2.
/// Margins are normalised by ||f||^2, so a negative margin is a violation.
struct NormCheckReport {
  FrameBounds bounds;
  int samples = 0;
  double worst_lower_margin = 0.0;
  double worst_upper_margin = 0.0;
  /// Smallest of the two margins over spectral and generator witnesses.
  double tightest_witness_margin = 0.0;
  /// min over witnesses of ||<Tf,f>|| / ||f||^2.
  double min_witness_ratio = 0.0;
  bool pass = false;
};

/// Checks lower ||f||^2 <= ||<Tf,f>|| <= upper ||f||^2 on `samples` random
/// unit vectors plus the spectral and generator witnesses of `t`.
NormCheckReport check_norm_inequality(const ModuleOperator& t, FrameBounds bounds, int samples,
                                      std::uint64_t seed, double tol = 1e-9);

/// The norm characterisation of frames, at the optimal bounds. `pass` also
/// requires a positive lower bound.
NormCheckReport norm_characterization_check(const FrameSystem& frame, int samples,
                                            std::uint64_t seed, double tol = 1e-9);

/// {S^{-1} psi_j}. Throws NotAFrame.
FrameSystem canonical_dual(const FrameSystem& frame, double tol = kDefaultTol);

/// Residual of f = sum_j <f, g_j> f_j over all generators E_{kl} e_i, as a
/// max of module norms.
double dual_pair_residual(const FrameSystem& f, const FrameSystem& g);
/// dual_pair_residual(f, g) <= tol.
bool is_dual_pair(const FrameSystem& f, const FrameSystem& g, double tol = 1e-8);

/// sum_j <f, g_j> f_j.
ModuleVector reconstruct(const FrameSystem& f, const FrameSystem& g, const ModuleVector& x);

}  // namespace csframe
