#include "csframe/frames.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "csframe/errors.hpp"
#include "csframe/random.hpp"

namespace csframe {

CoefficientSequence::CoefficientSequence(AlgebraShape shape, std::vector<AlgebraElement> coeffs)
    : shape_(std::move(shape)), coeffs_(std::move(coeffs)) {
  for (const AlgebraElement& c : coeffs_) require_same_shape(shape_, c.shape(), "coefficient");
}

AlgebraElement inner(const CoefficientSequence& a, const CoefficientSequence& b) {
  require_same_shape(a.shape(), b.shape(), "coefficient inner");
  if (a.size() != b.size()) throw ShapeMismatch("coefficient sequences differ in length");
  AlgebraElement acc = AlgebraElement::zero(a.shape());
  for (std::size_t j = 0; j < a.size(); ++j) acc = acc + a[j] * adjoint(b[j]);
  return acc;
}

namespace {

bool lex_less(const Matrix& a, const Matrix& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const Complex x = a.data()[i], y = b.data()[i];
    if (x.real() != y.real()) return x.real() < y.real();
    if (x.imag() != y.imag()) return x.imag() < y.imag();
  }
  return false;
}

// Terms are put in lexicographic order and then summed pairwise, so the
// result is bit-identical across runs and under permutation of the vectors.
Matrix tree_sum(std::vector<Matrix> terms) {
  std::sort(terms.begin(), terms.end(), lex_less);
  while (terms.size() > 1) {
    std::vector<Matrix> next;
    next.reserve((terms.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < terms.size(); i += 2) next.push_back(terms[i] + terms[i + 1]);
    if (terms.size() % 2 == 1) next.push_back(std::move(terms.back()));
    terms = std::move(next);
  }
  return std::move(terms.front());
}

ModuleOperator assemble_frame_operator(const std::vector<ModuleVector>& vectors) {
  if (vectors.empty()) throw InvalidArgument("a frame system needs at least one vector");
  const ModuleShape& shape = vectors.front().shape();
  for (const ModuleVector& v : vectors) require_same_shape(shape, v.shape(), "frame vector");
  std::vector<Matrix> blocks;
  for (int b = 0; b < shape.algebra.num_blocks(); ++b) {
    std::vector<Matrix> terms;
    terms.reserve(vectors.size());
    for (const ModuleVector& v : vectors) terms.push_back(v.flat(b).adjoint() * v.flat(b));
    Matrix q = tree_sum(std::move(terms));
    blocks.push_back((q + q.adjoint()) * 0.5);
  }
  return {shape, std::move(blocks)};
}

}  // namespace

FrameSystem::FrameSystem(std::vector<ModuleVector> vectors)
    : vectors_(std::move(vectors)), frame_op_(assemble_frame_operator(vectors_)) {}

FrameSystem FrameSystem::standard_basis(const ModuleShape& shape) {
  std::vector<ModuleVector> v;
  for (int i = 0; i < shape.rank; ++i) v.push_back(ModuleVector::generator(shape, i));
  return FrameSystem(std::move(v));
}

CoefficientSequence analysis(const FrameSystem& frame, const ModuleVector& f) {
  require_same_shape(frame.shape(), f.shape(), "analysis");
  std::vector<AlgebraElement> c;
  c.reserve(frame.size());
  for (const ModuleVector& psi : frame.vectors()) c.push_back(inner(f, psi));
  return {frame.shape().algebra, std::move(c)};
}

ModuleVector synthesis(const FrameSystem& frame, const CoefficientSequence& c) {
  require_same_shape(frame.shape().algebra, c.shape(), "synthesis");
  if (c.size() != frame.size()) {
    throw ShapeMismatch("synthesis: " + std::to_string(c.size()) + " coefficients for " +
                        std::to_string(frame.size()) + " frame vectors");
  }
  ModuleVector out = ModuleVector::zero(frame.shape());
  for (std::size_t j = 0; j < frame.size(); ++j) out = out + c[j] * frame[j];
  return out;
}

ModuleOperator frame_operator(const FrameSystem& frame) { return frame.frame_op(); }

FrameBounds optimal_bounds(const FrameSystem& frame) {
  SpectralBounds s = op_spectral_bounds(frame.frame_op());
  return {s.lower, s.upper};
}

bool is_frame(const FrameSystem& frame, double tol) {
  FrameBounds b = optimal_bounds(frame);
  return b.upper > 0.0 && b.lower > tol * b.upper;
}

bool is_bessel(const FrameSystem& frame, double /*tol*/) {
  return std::isfinite(optimal_bounds(frame).upper);
}

NormCheckReport check_norm_inequality(const ModuleOperator& t, FrameBounds bounds, int samples,
                                      std::uint64_t seed, double tol) {
  if (samples < 1) throw InvalidArgument("norm check needs at least one sample");
  NormCheckReport r;
  r.bounds = bounds;
  r.samples = samples;
  r.worst_lower_margin = std::numeric_limits<double>::infinity();
  r.worst_upper_margin = std::numeric_limits<double>::infinity();

  auto margins = [&](const ModuleVector& f) {
    const double nf = module_norm(f);
    const double nf2 = nf * nf;
    const double q = norm(inner(op_apply(t, f), f)) / nf2;
    return std::pair{q - bounds.lower, bounds.upper - q};
  };

  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    auto [lo, hi] = margins(random_unit_vector(t.shape(), rng));
    r.worst_lower_margin = std::min(r.worst_lower_margin, lo);
    r.worst_upper_margin = std::min(r.worst_upper_margin, hi);
  }

  r.tightest_witness_margin = std::numeric_limits<double>::infinity();
  r.min_witness_ratio = std::numeric_limits<double>::infinity();
  std::vector<ModuleVector> witnesses = spectral_witnesses(t);
  std::vector<ModuleVector> gens = generator_witnesses(t.shape());
  witnesses.insert(witnesses.end(), gens.begin(), gens.end());
  for (const ModuleVector& w : witnesses) {
    auto [lo, hi] = margins(w);
    r.worst_lower_margin = std::min(r.worst_lower_margin, lo);
    r.worst_upper_margin = std::min(r.worst_upper_margin, hi);
    r.tightest_witness_margin = std::min({r.tightest_witness_margin, std::abs(lo), std::abs(hi)});
    r.min_witness_ratio = std::min(r.min_witness_ratio, lo + bounds.lower);
  }
  r.pass = r.worst_lower_margin >= -tol && r.worst_upper_margin >= -tol;
  return r;
}

NormCheckReport norm_characterization_check(const FrameSystem& frame, int samples,
                                            std::uint64_t seed, double tol) {
  NormCheckReport r = check_norm_inequality(frame.frame_op(), optimal_bounds(frame), samples, seed, tol);
  r.pass = r.pass && is_frame(frame);
  return r;
}

FrameSystem canonical_dual(const FrameSystem& frame, double tol) {
  if (!is_frame(frame, tol)) throw NotAFrame("canonical_dual: system is not a frame");
  const ModuleOperator s_inv = op_inverse(frame.frame_op());
  std::vector<ModuleVector> dual;
  dual.reserve(frame.size());
  for (const ModuleVector& psi : frame.vectors()) dual.push_back(op_apply(s_inv, psi));
  return FrameSystem(std::move(dual));
}

ModuleVector reconstruct(const FrameSystem& f, const FrameSystem& g, const ModuleVector& x) {
  return synthesis(f, analysis(g, x));
}

double dual_pair_residual(const FrameSystem& f, const FrameSystem& g) {
  require_same_shape(f.shape(), g.shape(), "is_dual_pair");
  if (f.size() != g.size()) throw ShapeMismatch("is_dual_pair: systems differ in length");
  double worst = 0.0;
  for (const ModuleVector& e : generator_witnesses(f.shape())) {
    worst = std::max(worst, module_norm(reconstruct(f, g, e) - e));
  }
  return worst;
}

bool is_dual_pair(const FrameSystem& f, const FrameSystem& g, double tol) {
  return dual_pair_residual(f, g) <= tol;
}

}  // namespace csframe
