#include "csframe/multipliers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "csframe/errors.hpp"
#include "csframe/random.hpp"

namespace csframe {

Symbol::Symbol(AlgebraShape shape, std::vector<CentralElement> values)
    : shape_(std::move(shape)), values_(std::move(values)) {
  for (const CentralElement& v : values_) require_same_shape(shape_, v.shape(), "symbol value");
}

Symbol Symbol::constant(const AlgebraShape& shape, std::size_t count, Complex value) {
  return {shape, std::vector<CentralElement>(count, CentralElement::constant(shape, value))};
}

Symbol Symbol::from_reals(const AlgebraShape& shape, const std::vector<double>& values) {
  std::vector<CentralElement> v;
  for (double x : values) v.push_back(CentralElement::constant(shape, Complex(x, 0.0)));
  return {shape, std::move(v)};
}

double Symbol::sup_norm() const {
  double n = 0.0;
  for (const CentralElement& v : values_) n = std::max(n, v.norm());
  return n;
}

Symbol Symbol::operator+(const Symbol& other) const {
  require_same_shape(shape_, other.shape_, "symbol add");
  if (size() != other.size()) throw ShapeMismatch("symbols differ in length");
  std::vector<CentralElement> out;
  for (std::size_t j = 0; j < size(); ++j) {
    std::vector<Complex> s;
    for (int b = 0; b < shape_.num_blocks(); ++b) s.push_back(values_[j].scalar(b) + other[j].scalar(b));
    out.emplace_back(shape_, std::move(s));
  }
  return {shape_, std::move(out)};
}

bool is_positive_symbol(const Symbol& m, double tol) {
  for (const CentralElement& v : m.values()) {
    for (Complex s : v.scalars()) {
      if (!(s.real() > 0.0) || std::abs(s.imag()) > tol) return false;
    }
  }
  return true;
}

namespace {

template <typename F>
Symbol map_scalars(const Symbol& m, F f) {
  std::vector<CentralElement> out;
  for (const CentralElement& v : m.values()) {
    std::vector<Complex> s;
    for (Complex c : v.scalars()) s.push_back(f(c));
    out.emplace_back(m.shape(), std::move(s));
  }
  return {m.shape(), std::move(out)};
}

void require_compatible(const Symbol& m, const FrameSystem& f, const FrameSystem& g) {
  require_same_shape(f.shape(), g.shape(), "multiplier systems");
  require_same_shape(f.shape().algebra, m.shape(), "multiplier symbol");
  if (f.size() != g.size() || f.size() != m.size()) {
    throw ShapeMismatch("multiplier: symbol and systems have lengths " + std::to_string(m.size()) +
                        ", " + std::to_string(f.size()) + ", " + std::to_string(g.size()));
  }
}

// sum_j w_j P_j^{F*} P_j^{G}, per block.
ModuleOperator weighted_gram(const Symbol& m, const FrameSystem& f, const FrameSystem& g) {
  std::vector<Matrix> mats;
  const ModuleShape& shape = f.shape();
  for (int b = 0; b < shape.algebra.num_blocks(); ++b) {
    Matrix acc = Matrix::Zero(shape.flat_dim(b), shape.flat_dim(b));
    for (std::size_t j = 0; j < f.size(); ++j) {
      acc += m[j].scalar(b) * (f[j].flat(b).adjoint() * g[j].flat(b));
    }
    mats.push_back(std::move(acc));
  }
  return {shape, std::move(mats)};
}

}  // namespace

Symbol sqrt_symbol(const Symbol& m, double tol) {
  if (!is_positive_symbol(m, tol)) throw NotPositiveWeights("sqrt_symbol: weights are not positive");
  return map_scalars(m, [](Complex c) { return Complex(std::sqrt(c.real()), 0.0); });
}

Symbol abs_symbol(const Symbol& m) {
  return map_scalars(m, [](Complex c) { return Complex(std::abs(c), 0.0); });
}

ModuleOperator multiplier(const Symbol& m, const FrameSystem& f, const FrameSystem& g) {
  require_compatible(m, f, g);
  return weighted_gram(m, f, g);
}

ModuleVector apply_multiplier_by_summation(const Symbol& m, const FrameSystem& f,
                                           const FrameSystem& g, const ModuleVector& x) {
  require_compatible(m, f, g);
  ModuleVector acc = ModuleVector::zero(f.shape());
  for (std::size_t j = 0; j < f.size(); ++j) {
    acc = acc + (m[j].to_element() * inner(x, f[j])) * g[j];
  }
  return acc;
}

ModuleOperator controlled_multiplier(const Symbol& m, const FrameSystem& f, const FrameSystem& g,
                                     const Controller& c) {
  require_same_shape(f.shape(), c.shape(), "controlled multiplier");
  return op_compose(c.op(), multiplier(m, f, g));
}

ModuleVector apply_controlled_multiplier_by_summation(const Symbol& m, const FrameSystem& f,
                                                      const FrameSystem& g, const Controller& c,
                                                      const ModuleVector& x) {
  require_compatible(m, f, g);
  require_same_shape(f.shape(), c.shape(), "controlled multiplier");
  ModuleVector acc = ModuleVector::zero(f.shape());
  for (std::size_t j = 0; j < f.size(); ++j) {
    acc = acc + (m[j].to_element() * inner(x, f[j])) * op_apply(c.op(), g[j]);
  }
  return acc;
}

double multiplier_norm_bound(const Symbol& m, const FrameSystem& f, const FrameSystem& g) {
  return m.sup_norm() * std::sqrt(optimal_bounds(f).upper * optimal_bounds(g).upper);
}

WFrameResult is_w_frame(const FrameSystem& frame, const Symbol& w, double tol) {
  if (!is_positive_symbol(w, tol)) throw NotPositiveWeights("is_w_frame: weights are not positive");
  const ModuleOperator qw = multiplier(w, frame, frame);
  SpectralBounds s = op_spectral_bounds(qw);
  WFrameResult r;
  r.bounds = {s.lower, s.upper};
  r.is_w_frame = s.upper > 0.0 && s.lower > tol * s.upper;
  return r;
}

FrameSystem reweight_frame(const FrameSystem& frame, const Symbol& w) {
  require_same_shape(frame.shape().algebra, w.shape(), "reweight symbol");
  if (w.size() != frame.size()) throw ShapeMismatch("reweight: symbol length differs from frame size");
  std::vector<ModuleVector> v;
  for (std::size_t j = 0; j < frame.size(); ++j) v.push_back(w[j] * frame[j]);
  return FrameSystem(std::move(v));
}

FrameSystem dual_reweighted(const FrameSystem& frame, const Symbol& w, double tol) {
  semi_normalized_witness(w, tol);
  const FrameSystem dual = canonical_dual(frame, tol);
  const Symbol inv = map_scalars(w, [](Complex c) { return 1.0 / std::conj(c); });
  return reweight_frame(dual, inv);
}

SemiNormalizedWitness semi_normalized_witness(const Symbol& m, double tol) {
  if (m.size() == 0) throw NotSemiNormalized("empty symbol");
  SemiNormalizedWitness w{std::numeric_limits<double>::infinity(), 0.0};
  for (const CentralElement& v : m.values()) {
    for (Complex s : v.scalars()) {
      w.a = std::min(w.a, std::abs(s));
      w.b = std::max(w.b, std::abs(s));
    }
  }
  if (w.a <= tol) throw NotSemiNormalized("symbol has a value of magnitude " + std::to_string(w.a));
  return w;
}

Lemma46Report verify_lemma_4_6(const FrameSystem& frame, const Symbol& w, double tol) {
  Lemma46Report r;
  r.witness = semi_normalized_witness(w);
  r.frame_bounds = optimal_bounds(frame);
  const FrameSystem rw = reweight_frame(frame, w);
  r.reweighted_bounds = optimal_bounds(rw);
  const double a2 = r.witness.a * r.witness.a;
  const double b2 = r.witness.b * r.witness.b;
  r.bracket_lower_margin = r.reweighted_bounds.lower - a2 * r.frame_bounds.lower;
  r.bracket_upper_margin = b2 * r.frame_bounds.upper - r.reweighted_bounds.upper;
  r.dual_residual = dual_pair_residual(rw, dual_reweighted(frame, w));
  r.pass = is_frame(frame) && r.bracket_lower_margin >= -tol && r.bracket_upper_margin >= -tol &&
           r.dual_residual <= 1e-8;
  return r;
}

Lemma47Report verify_lemma_4_7(const FrameSystem& frame, const Symbol& m, double tol) {
  semi_normalized_witness(m);
  Lemma47Report r;
  const Symbol neg = map_scalars(m, [](Complex c) { return -c; });
  if (is_positive_symbol(m)) {
    r.negative_symbol = false;
  } else if (is_positive_symbol(neg)) {
    r.negative_symbol = true;
  } else {
    throw NotPositiveWeights("verify_lemma_4_7: symbol is neither positive nor negative");
  }
  const ModuleOperator mult = multiplier(m, frame, frame);
  const Symbol root = sqrt_symbol(r.negative_symbol ? neg : m);
  const ModuleOperator s_root = reweight_frame(frame, root).frame_op();
  const ModuleOperator expected = r.negative_symbol ? Complex(-1.0, 0.0) * s_root : s_root;
  r.relative_defect = op_norm(mult - expected) / std::max(op_norm(mult), 1e-300);
  r.self_adjoint = op_is_self_adjoint(mult, tol);
  r.definite = op_is_positive(r.negative_symbol ? Complex(-1.0, 0.0) * mult : mult, tol);
  r.invertible = op_is_invertible(mult, tol);
  r.pass = r.relative_defect <= tol && r.self_adjoint && r.definite && r.invertible;
  return r;
}

Thm48Report verify_thm_4_8(const FrameSystem& frame, const Symbol& w, int other_symbols,
                           std::uint64_t seed, double tol) {
  semi_normalized_witness(w, tol);
  if (!is_positive_symbol(w, tol)) throw NotPositiveWeights("verify_thm_4_8: weights are not positive");
  auto pos_inv = [&](const ModuleOperator& t) {
    const double scale = tol * op_norm(t);
    return op_is_positive(t, tol) && op_min_singular_value(t) > scale;
  };
  Thm48Report r;
  r.frame = is_frame(frame, tol);
  r.multiplier_pos_inv = pos_inv(multiplier(w, frame, frame));
  r.w_frame = is_w_frame(frame, w, tol).is_w_frame;
  r.sqrt_reweighted_frame = is_frame(reweight_frame(frame, sqrt_symbol(w, tol)), tol);
  Rng rng(seed);
  r.other_multipliers_pos_inv = true;
  for (int k = 0; k < other_symbols; ++k) {
    const Symbol other = random_symbol(w.shape(), static_cast<int>(w.size()), 0.5, 3.0, rng);
    r.other_multipliers_pos_inv = r.other_multipliers_pos_inv && pos_inv(multiplier(other, frame, frame));
    ++r.other_symbols_checked;
  }
  r.reweighted_frame = is_frame(reweight_frame(frame, w), tol);
  const std::vector<bool> p = r.predicates();
  r.all_agree = std::all_of(p.begin(), p.end(), [&](bool x) { return x == p.front(); });
  return r;
}

DiagonalExtraction extract_diagonal_controller(const FrameSystem& frame, const Controller& c,
                                               double residual_tol) {
  require_same_shape(frame.shape(), c.shape(), "extract_diagonal_controller");
  if (!op_is_self_adjoint(c.op(), kDefaultTol)) {
    throw NotSelfAdjoint("extract_diagonal_controller: controller is not self-adjoint");
  }
  const AlgebraShape& alg = frame.shape().algebra;
  std::vector<CentralElement> weights;
  double worst = 0.0;
  for (std::size_t j = 0; j < frame.size(); ++j) {
    const ModuleVector cpsi = op_apply(c.op(), frame[j]);
    std::vector<Complex> s;
    double num = 0.0;
    double den = 0.0;
    for (int b = 0; b < alg.num_blocks(); ++b) {
      const Matrix& p = frame[j].flat(b);
      const double pp = p.squaredNorm();
      // Least-squares ratio <P R, P>_F / ||P||_F^2; a zero block leaves
      // the weight unconstrained, so fall back to the other blocks' value 1.
      const Complex omega = pp > 0.0 ? (p.conjugate().cwiseProduct(cpsi.flat(b))).sum() / pp
                                     : Complex(1.0, 0.0);
      num += (cpsi.flat(b) - omega * p).squaredNorm();
      den += pp;
      s.push_back(omega);
    }
    worst = std::max(worst, den > 0.0 ? std::sqrt(num / den) : 0.0);
    weights.emplace_back(alg, std::move(s));
  }
  if (worst > residual_tol) {
    throw NotDiagonalOnFrame("controller is not diagonal on the frame (relative residual " +
                             std::to_string(worst) + ")");
  }
  DiagonalExtraction r{Symbol(alg, std::move(weights)), worst, {}, {}, 0.0, false};
  r.witness = semi_normalized_witness(r.weights);
  r.controller_bounds = op_spectral_bounds(c.op());
  const ModuleOperator rebuilt = multiplier(r.weights, canonical_dual(frame), frame);
  r.reconstruction_defect = op_norm(c.op() - rebuilt);
  const double slack = 1e-9 * std::max(1.0, r.controller_bounds.upper);
  r.pass = is_positive_symbol(r.weights, 1e-8) &&
           r.witness.a >= r.controller_bounds.lower - slack &&
           r.witness.b <= r.controller_bounds.upper + slack && r.reconstruction_defect <= 1e-9;
  return r;
}

}  // namespace csframe
