#pragma once

// Controlled frames. For a controller C with representation R, the
// controlled frame operator S_C f = sum_j <f,psi_j> C psi_j = C(S f) has
// representation Q R per block, and sum_j <f,psi_j><C psi_j, f> = F Q R F^*.
// A two-sided Loewner bound on that sum forces Q R to be Hermitian, so the
// decision procedure requires it (within tolerance) and reads m, M off the
// spectrum.

#include <cstdint>
#include <vector>

#include "csframe/frames.hpp"

namespace csframe {

/// An invertible adjointable operator on H.
class Controller {
 public:
  /// Throws Singular if `op` is not invertible at `tol`.
  explicit Controller(ModuleOperator op, double tol = kDefaultTol);

  static Controller identity(const ModuleShape& shape);
  /// Left multiplication by a central element; throws Singular if any
  /// scalar vanishes.
  static Controller block_scalar(const ModuleShape& shape, const CentralElement& c);
  /// sum_k coeffs[k] S^k for the frame operator S of `frame`.
  static Controller polynomial_in_frame_operator(const FrameSystem& frame,
                                                 const std::vector<double>& coeffs);
  /// S^{-1}.
  static Controller inverse_frame_operator(const FrameSystem& frame);
  /// diag(Q_b)^{-1} per block.
  static Controller jacobi(const FrameSystem& frame);

  const ModuleOperator& op() const { return op_; }
  const ModuleShape& shape() const { return op_.shape(); }

 private:
  ModuleOperator op_;
};

struct ControlledFrameReport {
  bool is_controlled_frame = false;
  FrameBounds bounds;  // m, M of the Hermitian part of Q R
  /// max_b ||Q R - (Q R)^*||.
  double self_adjoint_defect = 0.0;
  /// ||C S - S C^*||.
  double commutation_defect = 0.0;
  /// Scale used to make the defects relative: ||S|| * ||C||.
  double scale = 0.0;
};

ModuleOperator controlled_frame_operator(const FrameSystem& frame, const Controller& c);
/// Direct evaluation of sum_j <f,psi_j> C psi_j.
ModuleVector apply_controlled_by_summation(const FrameSystem& frame, const Controller& c,
                                           const ModuleVector& f);

/// Accepts iff self_adjoint_defect <= tol * ||S|| ||C|| and m > tol * |M|.
ControlledFrameReport is_controlled_frame(const FrameSystem& frame, const Controller& c,
                                          double tol = 1e-9);

/// Norm characterisation at the spectral (m, M). Throws NotControlledFrame.
NormCheckReport controlled_characterization_check(const FrameSystem& frame, const Controller& c,
                                                  int samples, std::uint64_t seed,
                                                  double tol = 1e-9);

struct AdjointabilityReport {
  bool applicable = false;  // the pair is an accepted controlled frame
  double adjoint_defect = 0.0;  // ||S_C^* - S C^*|| / (||S|| ||C||)
  bool positive = false;
  bool self_adjoint = false;
  bool invertible = false;
  FrameBounds bounds;
  bool pass = false;
};

/// S_C is adjointable with S_C^* = S C^*, and positive, self-adjoint and
/// invertible.
AdjointabilityReport verify_prop_3_4(const FrameSystem& frame, const Controller& c,
                                     double tol = 1e-10);

struct CommutationReport {
  bool applicable = false;
  /// ||C S - S C^*|| / (||C|| ||S||).
  double commutation_defect = 0.0;
  /// max over samples of ||sum <f,psi_j> C psi_j - sum <f, C psi_j> psi_j|| / ||f||.
  double summation_defect = 0.0;
  FrameBounds bounds;
  bool pass = false;
};

/// C S = S C^* and the two summation forms agree, on accepted pairs.
CommutationReport verify_prop_3_9(const FrameSystem& frame, const Controller& c, int samples = 16,
                                  std::uint64_t seed = 0, double tol = 1e-9);

struct SelfAdjointControllerReport {
  bool controlled_frame = false;  // left side
  bool frame = false;
  bool controller_positive = false;
  bool commutes = false;
  double commutator_defect = 0.0;  // ||C S - S C|| / (||C|| ||S||)
  bool rhs = false;
  bool agree = false;
};

/// For self-adjoint C: controlled frame <=> frame, C positive and C S = S C.
/// Throws NotSelfAdjoint.
SelfAdjointControllerReport verify_prop_3_10(const FrameSystem& frame, const Controller& c,
                                             double tol = 1e-9);

}  // namespace csframe
