#include "csframe/controlled.hpp"

#include <algorithm>
#include <cmath>

#include "csframe/errors.hpp"
#include "csframe/random.hpp"

namespace csframe {

Controller::Controller(ModuleOperator op, double tol) : op_(std::move(op)) {
  if (!op_is_invertible(op_, tol)) throw Singular("controller is not invertible");
}

Controller Controller::identity(const ModuleShape& shape) {
  return Controller(ModuleOperator::identity(shape));
}

Controller Controller::block_scalar(const ModuleShape& shape, const CentralElement& c) {
  return Controller(ModuleOperator::central(shape, c));
}

Controller Controller::polynomial_in_frame_operator(const FrameSystem& frame,
                                                    const std::vector<double>& coeffs) {
  if (coeffs.empty()) throw InvalidArgument("polynomial needs at least one coefficient");
  const ModuleOperator& s = frame.frame_op();
  // Horner, with S Hermitian so all powers commute.
  ModuleOperator acc = Complex(coeffs.back(), 0.0) * ModuleOperator::identity(s.shape());
  for (auto it = std::next(coeffs.rbegin()); it != coeffs.rend(); ++it) {
    acc = op_compose(acc, s) + Complex(*it, 0.0) * ModuleOperator::identity(s.shape());
  }
  return Controller(std::move(acc));
}

Controller Controller::inverse_frame_operator(const FrameSystem& frame) {
  return Controller(op_inverse(frame.frame_op()));
}

Controller Controller::jacobi(const FrameSystem& frame) {
  std::vector<Matrix> mats;
  for (const Matrix& q : frame.frame_op().blocks()) {
    Matrix d = Matrix::Zero(q.rows(), q.cols());
    for (Eigen::Index i = 0; i < q.rows(); ++i) {
      if (std::abs(q(i, i)) == 0.0) throw Singular("jacobi controller: zero diagonal entry");
      d(i, i) = 1.0 / q(i, i).real();
    }
    mats.push_back(std::move(d));
  }
  return Controller(ModuleOperator(frame.shape(), std::move(mats)));
}

ModuleOperator controlled_frame_operator(const FrameSystem& frame, const Controller& c) {
  require_same_shape(frame.shape(), c.shape(), "controlled_frame_operator");
  return op_compose(c.op(), frame.frame_op());
}

ModuleVector apply_controlled_by_summation(const FrameSystem& frame, const Controller& c,
                                           const ModuleVector& f) {
  require_same_shape(frame.shape(), c.shape(), "controlled summation");
  ModuleVector acc = ModuleVector::zero(frame.shape());
  for (const ModuleVector& psi : frame.vectors()) acc = acc + inner(f, psi) * op_apply(c.op(), psi);
  return acc;
}

ControlledFrameReport is_controlled_frame(const FrameSystem& frame, const Controller& c, double tol) {
  const ModuleOperator sc = controlled_frame_operator(frame, c);
  const ModuleOperator& s = frame.frame_op();
  ControlledFrameReport r;
  r.scale = op_norm(s) * op_norm(c.op());
  for (const Matrix& m : sc.blocks()) {
    r.self_adjoint_defect = std::max(r.self_adjoint_defect, detail::spectral_norm(m - m.adjoint()));
  }
  r.commutation_defect =
      op_norm(op_compose(c.op(), s) - op_compose(s, op_adjoint(c.op())));
  SpectralBounds sb = op_spectral_bounds(sc);
  r.bounds = {sb.lower, sb.upper};
  r.is_controlled_frame = r.self_adjoint_defect <= tol * r.scale &&
                          r.bounds.lower > tol * std::abs(r.bounds.upper) && r.bounds.lower > 0.0;
  return r;
}

NormCheckReport controlled_characterization_check(const FrameSystem& frame, const Controller& c,
                                                  int samples, std::uint64_t seed, double tol) {
  ControlledFrameReport cr = is_controlled_frame(frame, c, tol);
  if (!cr.is_controlled_frame) throw NotControlledFrame("controlled_characterization_check: pair rejected");
  return check_norm_inequality(controlled_frame_operator(frame, c), cr.bounds, samples, seed, tol);
}

AdjointabilityReport verify_prop_3_4(const FrameSystem& frame, const Controller& c, double tol) {
  AdjointabilityReport r;
  ControlledFrameReport cr = is_controlled_frame(frame, c);
  r.applicable = cr.is_controlled_frame;
  r.bounds = cr.bounds;
  const ModuleOperator sc = controlled_frame_operator(frame, c);
  const ModuleOperator& s = frame.frame_op();
  // S after C^*.
  const ModuleOperator s_cstar = op_compose(s, op_adjoint(c.op()));
  r.adjoint_defect = op_norm(op_adjoint(sc) - s_cstar) / cr.scale;
  r.positive = op_is_positive(sc, tol);
  r.self_adjoint = op_is_self_adjoint(sc, tol);
  r.invertible = op_is_invertible(sc, tol);
  r.pass = r.applicable && r.adjoint_defect <= tol && r.positive && r.self_adjoint && r.invertible;
  return r;
}

CommutationReport verify_prop_3_9(const FrameSystem& frame, const Controller& c, int samples,
                                  std::uint64_t seed, double tol) {
  CommutationReport r;
  ControlledFrameReport cr = is_controlled_frame(frame, c, tol);
  r.applicable = cr.is_controlled_frame;
  r.bounds = cr.bounds;
  r.commutation_defect = cr.commutation_defect / cr.scale;

  // Second form: sum_j <f, C psi_j> psi_j.
  std::vector<ModuleVector> c_psi;
  for (const ModuleVector& psi : frame.vectors()) c_psi.push_back(op_apply(c.op(), psi));
  Rng rng(seed);
  for (int k = 0; k < samples; ++k) {
    const ModuleVector f = random_unit_vector(frame.shape(), rng);
    ModuleVector other = ModuleVector::zero(frame.shape());
    for (std::size_t j = 0; j < frame.size(); ++j) other = other + inner(f, c_psi[j]) * frame[j];
    const double d = module_norm(apply_controlled_by_summation(frame, c, f) - other) /
                     std::max(1.0, cr.scale);
    r.summation_defect = std::max(r.summation_defect, d);
  }
  r.pass = r.applicable && r.commutation_defect <= tol && r.summation_defect <= 10 * tol;
  return r;
}

SelfAdjointControllerReport verify_prop_3_10(const FrameSystem& frame, const Controller& c,
                                             double tol) {
  if (!op_is_self_adjoint(c.op(), tol)) throw NotSelfAdjoint("verify_prop_3_10: controller is not self-adjoint");
  SelfAdjointControllerReport r;
  r.controlled_frame = is_controlled_frame(frame, c, tol).is_controlled_frame;
  r.frame = is_frame(frame);
  r.controller_positive = op_is_positive(c.op(), tol);
  const ModuleOperator& s = frame.frame_op();
  r.commutator_defect = op_norm(op_compose(c.op(), s) - op_compose(s, c.op())) /
                        (op_norm(c.op()) * op_norm(s));
  r.commutes = r.commutator_defect <= tol;
  r.rhs = r.frame && r.controller_positive && r.commutes;
  r.agree = r.controlled_frame == r.rhs;
  return r;
}

}  // namespace csframe
