#pragma once

// Multipliers with central symbols, controlled multipliers and weighted
// frames.
//
// Argument order follows M_{m,F,G} f = sum_j m_j <f, F_j> G_j: the first
// system is analysed, the second synthesises. In block b the representation
// is R = sum_j m_j^{(b)} P_j^{F*} P_j^{G}.

#include <cstdint>
#include <vector>

#include "csframe/controlled.hpp"
#include "csframe/frames.hpp"

namespace csframe {

/// A finite sequence of central elements, used both as multiplier symbol m
/// and as weight sequence w.
class Symbol {
 public:
  Symbol(AlgebraShape shape, std::vector<CentralElement> values);

  static Symbol constant(const AlgebraShape& shape, std::size_t count, Complex value);
  /// Same real scalar in every block for entry j.
  static Symbol from_reals(const AlgebraShape& shape, const std::vector<double>& values);

  const AlgebraShape& shape() const { return shape_; }
  std::size_t size() const { return values_.size(); }
  const CentralElement& operator[](std::size_t j) const { return values_[j]; }
  const std::vector<CentralElement>& values() const { return values_; }

  /// max_j ||m_j||.
  double sup_norm() const;

  Symbol operator+(const Symbol& other) const;

 private:
  AlgebraShape shape_;
  std::vector<CentralElement> values_;
};

struct SemiNormalizedWitness {
  double a = 0.0;
  double b = 0.0;
};

/// Every blockwise scalar has real part > 0 and |imag| <= tol.
bool is_positive_symbol(const Symbol& m, double tol = kDefaultTol);
/// Blockwise square root of a positive symbol. Throws NotPositiveWeights.
Symbol sqrt_symbol(const Symbol& m, double tol = kDefaultTol);
/// Blockwise absolute value.
Symbol abs_symbol(const Symbol& m);

/// Throws ShapeMismatch on length or algebra mismatch.
ModuleOperator multiplier(const Symbol& m, const FrameSystem& f, const FrameSystem& g);
/// Direct evaluation of sum_j m_j <x, F_j> G_j.
ModuleVector apply_multiplier_by_summation(const Symbol& m, const FrameSystem& f,
                                           const FrameSystem& g, const ModuleVector& x);

/// x -> C(M_{m,F,G} x) = sum_j m_j <x, F_j> C G_j.
ModuleOperator controlled_multiplier(const Symbol& m, const FrameSystem& f, const FrameSystem& g,
                                     const Controller& c);
ModuleVector apply_controlled_multiplier_by_summation(const Symbol& m, const FrameSystem& f,
                                                      const FrameSystem& g, const Controller& c,
                                                      const ModuleVector& x);

/// sup|m| * sqrt(D_F D_G) with D the optimal upper bounds.
double multiplier_norm_bound(const Symbol& m, const FrameSystem& f, const FrameSystem& g);

struct WFrameResult {
  bool is_w_frame = false;
  FrameBounds bounds;
};

/// Spectral decision on Q_w = sum_j w_j P_j^* P_j. Throws NotPositiveWeights.
WFrameResult is_w_frame(const FrameSystem& frame, const Symbol& w, double tol = kDefaultTol);

/// {w_j psi_j}.
FrameSystem reweight_frame(const FrameSystem& frame, const Symbol& w);
/// {(w_j^*)^{-1} S^{-1} psi_j}; for real weights this is w_j^{-1} psi~_j.
/// Throws NotSemiNormalized or NotAFrame.
FrameSystem dual_reweighted(const FrameSystem& frame, const Symbol& w, double tol = kDefaultTol);

/// a = min, b = max of blockwise magnitudes. Throws NotSemiNormalized if a <= tol.
SemiNormalizedWitness semi_normalized_witness(const Symbol& m, double tol = kDefaultTol);

struct Lemma46Report {
  SemiNormalizedWitness witness;
  FrameBounds frame_bounds;
  FrameBounds reweighted_bounds;
  double bracket_lower_margin = 0.0;  // reweighted.lower - a^2 C
  double bracket_upper_margin = 0.0;  // b^2 D - reweighted.upper
  double dual_residual = 0.0;
  bool pass = false;
};

/// Reweighting by a semi-normalized w keeps a frame, with bounds in
/// [a^2 C, b^2 D], and {w_j^{-1} psi~_j} is dual to {w_j psi_j}.
Lemma46Report verify_lemma_4_6(const FrameSystem& frame, const Symbol& w, double tol = 1e-9);

struct Lemma47Report {
  bool negative_symbol = false;
  /// ||M_{m,F} -/+ S_{sqrt|m| F}|| / ||M||.
  double relative_defect = 0.0;
  bool definite = false;  // positive (or negative for negative symbols)
  bool self_adjoint = false;
  bool invertible = false;
  bool pass = false;
};

/// Symbols must be uniformly positive or uniformly negative and
/// semi-normalized. Throws NotSemiNormalized / NotPositiveWeights.
Lemma47Report verify_lemma_4_7(const FrameSystem& frame, const Symbol& m, double tol = 1e-10);

struct Thm48Report {
  bool frame = false;                   // (1)
  bool multiplier_pos_inv = false;      // (2)
  bool w_frame = false;                 // (3)
  bool sqrt_reweighted_frame = false;   // (4)
  bool other_multipliers_pos_inv = false;  // (5), all sampled w'
  bool reweighted_frame = false;        // (6)
  int other_symbols_checked = 0;
  bool all_agree = false;

  std::vector<bool> predicates() const {
    return {frame, multiplier_pos_inv, w_frame, sqrt_reweighted_frame,
            other_multipliers_pos_inv, reweighted_frame};
  }
};

/// Evaluates the six equivalent weighted-frame conditions. Item (5) is
/// sampled with `other_symbols` random positive weights in [0.5, 3].
Thm48Report verify_thm_4_8(const FrameSystem& frame, const Symbol& w, int other_symbols = 5,
                           std::uint64_t seed = 0, double tol = kDefaultTol);

struct DiagonalExtraction {
  Symbol weights;
  /// max_j ||C psi_j - w_j psi_j|| / ||psi_j|| (blockwise Frobenius).
  double max_relative_residual = 0.0;
  SemiNormalizedWitness witness;
  SpectralBounds controller_bounds;
  /// ||C - M_{W, dual, F}||.
  double reconstruction_defect = 0.0;
  bool pass = false;
};

/// Recovers W with C psi_j = w_j psi_j by per-block least squares.
/// Throws NotSelfAdjoint, NotDiagonalOnFrame (relative residual above
/// `residual_tol`), NotSemiNormalized.
DiagonalExtraction extract_diagonal_controller(const FrameSystem& frame, const Controller& c,
                                               double residual_tol = 1e-8);

}  // namespace csframe
