#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "csframe/errors.hpp"
#include "csframe/frames.hpp"
#include "csframe/random.hpp"
#include "oracle/oracle.hpp"
#include "support.hpp"

using namespace csframe;

namespace {

const AlgebraShape kC({1});

ModuleVector cvec(std::vector<Complex> xs) {
  std::vector<AlgebraElement> e;
  for (Complex x : xs) e.push_back(AlgebraElement::scalar(kC, x));
  return ModuleVector(ModuleShape(kC, static_cast<int>(xs.size())), e);
}

// {e1, e2, e1} in C^2.
FrameSystem e1e2e1() { return FrameSystem({cvec({1, 0}), cvec({0, 1}), cvec({1, 0})}); }

FrameSystem scaled(const FrameSystem& f, double t) {
  std::vector<ModuleVector> v;
  for (const ModuleVector& x : f.vectors()) v.push_back(Complex(t) * x);
  return FrameSystem(v);
}

}  // namespace

TEST_CASE("analysis") {
  const ModuleShape s(AlgebraShape({2, 1}), 3);
  const FrameSystem basis = FrameSystem::standard_basis(s);
  const CoefficientSequence c = analysis(basis, ModuleVector::generator(s, 0));
  REQUIRE(c.size() == 3);
  CHECK(c[0] == AlgebraElement::identity(s.algebra));
  CHECK(c[1] == AlgebraElement::zero(s.algebra));
  const CoefficientSequence z = analysis(basis, ModuleVector::zero(s));
  for (const AlgebraElement& x : z.coeffs()) CHECK(x == AlgebraElement::zero(s.algebra));

  // Entrywise recomputation sum_i f_i psi_{j,i}^*.
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const ModuleShape t = testing::random_module(rng);
    const FrameSystem f = random_frame(t, rng.uniform_int(1, 6), rng);
    const ModuleVector x = random_vector(t, rng);
    const CoefficientSequence got = analysis(f, x);
    for (std::size_t j = 0; j < f.size(); ++j) {
      AlgebraElement ref = AlgebraElement::zero(t.algebra);
      for (int i = 0; i < t.rank; ++i) ref = ref + mul(x.entry(i), adjoint(f[j].entry(i)));
      CHECK(testing::max_block_diff(got[j], ref) <= 1e-12 * (1.0 + norm(ref)));
    }
  }
}

TEST_CASE("synthesis") {
  Rng rng(32);
  const ModuleShape s(AlgebraShape({2}), 2);
  const FrameSystem basis = FrameSystem::standard_basis(s);
  const ModuleVector x = random_vector(s, rng);
  CHECK(testing::vec_diff(synthesis(basis, analysis(basis, x)), x) <= 1e-14);

  const FrameSystem f = random_frame(s, 4, rng);
  std::vector<AlgebraElement> unit(4, AlgebraElement::zero(s.algebra));
  unit[2] = AlgebraElement::identity(s.algebra);
  CHECK(testing::vec_diff(synthesis(f, CoefficientSequence(s.algebra, unit)), f[2]) == 0.0);
  CHECK_THROWS_AS(synthesis(f, CoefficientSequence(s.algebra, {unit[0]})), ShapeMismatch);

  for (int trial = 0; trial < 50; ++trial) {
    const ModuleShape t = testing::random_module(rng);
    const int n = rng.uniform_int(1, 6);
    const FrameSystem fr = random_frame(t, n, rng);
    std::vector<AlgebraElement> cs;
    for (int j = 0; j < n; ++j) cs.push_back(random_element(t.algebra, rng));
    const CoefficientSequence c(t.algebra, cs);
    const ModuleVector g = random_vector(t, rng);
    const AlgebraElement lhs = inner(synthesis(fr, c), g);
    const AlgebraElement rhs = inner(c, analysis(fr, g));
    CHECK(norm(lhs - rhs) <= 1e-10 * (1.0 + norm(lhs)));
  }
}

TEST_CASE("frame operator") {
  const ModuleShape s(AlgebraShape({1, 2}), 2);
  CHECK(testing::op_diff(frame_operator(FrameSystem::standard_basis(s)), ModuleOperator::identity(s)) == 0.0);

  const ModuleOperator q = frame_operator(e1e2e1());
  CHECK(q.block(0)(0, 0) == Complex(2, 0));
  CHECK(q.block(0)(1, 1) == Complex(1, 0));
  CHECK(q.block(0)(0, 1) == Complex(0, 0));

  Rng rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    const ModuleShape t = testing::random_module(rng);
    const FrameSystem f = random_frame(t, rng.uniform_int(1, 8), rng);
    const ModuleVector x = random_unit_vector(t, rng);
    const ModuleVector via_op = op_apply(frame_operator(f), x);
    const ModuleVector via_sums = synthesis(f, analysis(f, x));
    CHECK(testing::vec_diff(via_op, via_sums) <= 1e-12 * (1.0 + module_norm(via_op)));
    CHECK(op_is_self_adjoint(f.frame_op(), 0.0));
  }
}

TEST_CASE("frame operator is invariant under permutation") {
  Rng rng(34);
  for (int trial = 0; trial < 30; ++trial) {
    const ModuleShape t = testing::random_module(rng);
    const FrameSystem f = random_frame(t, rng.uniform_int(2, 10), rng);
    std::vector<ModuleVector> v = f.vectors();
    std::shuffle(v.begin(), v.end(), rng.engine());
    const FrameSystem g(v);
    for (int b = 0; b < t.algebra.num_blocks(); ++b) CHECK(f.frame_op().block(b) == g.frame_op().block(b));
    CHECK(optimal_bounds(f).lower == optimal_bounds(g).lower);
    CHECK(optimal_bounds(f).upper == optimal_bounds(g).upper);
  }
}

TEST_CASE("optimal bounds") {
  const FrameBounds pb = optimal_bounds(FrameSystem::standard_basis(ModuleShape(AlgebraShape({2, 1}), 3)));
  CHECK(pb.lower == doctest::Approx(1.0));
  CHECK(pb.upper == doctest::Approx(1.0));
  const FrameBounds b = optimal_bounds(e1e2e1());
  CHECK(b.lower == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(b.upper == doctest::Approx(2.0).epsilon(1e-14));

  Rng rng(35);
  for (int trial = 0; trial < 30; ++trial) {
    const ModuleShape t = testing::random_module(rng);
    const FrameSystem f = random_frame(t, t.rank * 3, rng);
    const double s = rng.uniform(0.2, 3.0);
    const FrameBounds b0 = optimal_bounds(f);
    const FrameBounds b1 = optimal_bounds(scaled(f, s));
    CHECK(b1.lower == doctest::Approx(s * s * b0.lower).epsilon(1e-10));
    CHECK(b1.upper == doctest::Approx(s * s * b0.upper).epsilon(1e-10));
  }
}

TEST_CASE("is_frame") {
  const ModuleShape s(AlgebraShape({2}), 2);
  CHECK_FALSE(is_frame(FrameSystem({ModuleVector::generator(s, 0)})));
  CHECK(is_frame(FrameSystem::standard_basis(s)));
  CHECK(is_bessel(FrameSystem({ModuleVector::generator(s, 0)})));
  CHECK_THROWS_AS(FrameSystem({}), InvalidArgument);
  CHECK_THROWS_AS(FrameSystem({ModuleVector::generator(s, 0), ModuleVector::generator(ModuleShape(AlgebraShape({2}), 3), 0)}),
                  ShapeMismatch);

  Rng rng(36);
  for (int trial = 0; trial < 50; ++trial) {
    const ModuleShape t = testing::random_module(rng);
    int maxd = 0;
    for (int d : t.algebra.dims()) maxd = std::max(maxd, d);
    const FrameSystem f = random_frame(t, t.rank * maxd, rng);
    CHECK(is_frame(f));
    // Same decision from the oracle spectrum.
    double lo = 1e300;
    for (const auto& blk : f.frame_op().blocks()) lo = std::min(lo, oracle::hermitian_eigenvalues(oracle::from_eigen(blk)).front());
    CHECK(lo > 0.0);
    CHECK(std::abs(lo - optimal_bounds(f).lower) <= 1e-10 * optimal_bounds(f).upper);
  }
}

TEST_CASE("norm characterisation") {
  const ModuleShape s(AlgebraShape({2, 1}), 2);
  const NormCheckReport parseval = norm_characterization_check(FrameSystem::standard_basis(s), 50, 1);
  CHECK(parseval.pass);
  CHECK(std::abs(parseval.worst_lower_margin) <= 1e-10);
  CHECK(std::abs(parseval.worst_upper_margin) <= 1e-10);

  const NormCheckReport r = norm_characterization_check(e1e2e1(), 1000, 2);
  CHECK(r.pass);
  CHECK(r.samples == 1000);
  CHECK(r.worst_lower_margin >= -1e-9);
  CHECK(r.worst_upper_margin >= -1e-9);
  CHECK(r.tightest_witness_margin <= 1e-12);

  // {e_1} violates any positive lower bound at f = e_2.
  const ModuleShape c2(kC, 2);
  const FrameSystem deficient({ModuleVector::generator(c2, 0)});
  const NormCheckReport bad = check_norm_inequality(frame_operator(deficient), {0.5, 1.0}, 10, 3);
  CHECK_FALSE(bad.pass);
  CHECK(bad.worst_lower_margin <= -0.5 + 1e-12);
  CHECK_FALSE(norm_characterization_check(deficient, 10, 3).pass);
}

TEST_CASE("canonical dual and reconstruction") {
  const ModuleShape s(AlgebraShape({2}), 2);
  const FrameSystem basis = FrameSystem::standard_basis(s);
  const FrameSystem bd = canonical_dual(basis);
  for (std::size_t j = 0; j < basis.size(); ++j) CHECK(testing::vec_diff(bd[j], basis[j]) == 0.0);

  const FrameSystem d = canonical_dual(e1e2e1());
  CHECK(testing::vec_diff(d[0], cvec({0.5, 0})) <= 1e-15);
  CHECK(testing::vec_diff(d[1], cvec({0, 1})) <= 1e-15);
  CHECK(testing::vec_diff(d[2], cvec({0.5, 0})) <= 1e-15);

  CHECK_THROWS_AS(canonical_dual(FrameSystem({ModuleVector::generator(s, 0)})), NotAFrame);

  Rng rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const ModuleShape t = testing::random_module(rng);
    const FrameSystem f = frame_with_condition(t, t.rank + rng.uniform_int(0, 4), rng.uniform(1.0, 50.0), rng);
    const FrameSystem g = canonical_dual(f);
    const ModuleVector x = random_vector(t, rng);
    CHECK(module_norm(x - reconstruct(f, g, x)) <= 1e-8 * module_norm(x));
    CHECK(module_norm(x - reconstruct(g, f, x)) <= 1e-8 * module_norm(x));
  }
}

TEST_CASE("dual pairs") {
  const ModuleShape s(AlgebraShape({2, 1}), 2);
  const FrameSystem basis = FrameSystem::standard_basis(s);
  CHECK(is_dual_pair(basis, basis));
  Rng rng(38);
  const FrameSystem f = random_frame(s, 5, rng);
  const FrameSystem d = canonical_dual(f);
  CHECK(is_dual_pair(f, d));
  CHECK(is_dual_pair(d, f));

  std::vector<ModuleVector> perturbed = d.vectors();
  perturbed[1] = perturbed[1] + Complex(1e-2) * ModuleVector::generator(s, 0);
  const FrameSystem p(perturbed);
  CHECK(dual_pair_residual(f, p) > 1e-6);
  CHECK_FALSE(is_dual_pair(f, p, 1e-6));
  CHECK_THROWS_AS(dual_pair_residual(f, FrameSystem({f[0]})), ShapeMismatch);
}

TEST_CASE("A = C agrees with classical frame theory") {
  Rng rng(39);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = rng.uniform_int(1, 4);
    const int count = n + rng.uniform_int(0, 5);
    std::vector<oracle::Vec> psi;
    std::vector<ModuleVector> vs;
    for (int j = 0; j < count; ++j) {
      oracle::Vec v;
      for (int i = 0; i < n; ++i) v.push_back(rng.complex_normal());
      psi.push_back(v);
      vs.push_back(cvec(v));
    }
    const FrameSystem f(vs);
    // Q = conj(S) for the right-action representation.
    const auto s = oracle::classical::frame_operator(psi);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) CHECK(std::abs(f.frame_op().block(0)(i, k) - std::conj(s[i][k])) <= 1e-12);
    const auto ev = oracle::hermitian_eigenvalues(s);
    CHECK(std::abs(optimal_bounds(f).lower - ev.front()) <= 1e-10 * (1.0 + ev.back()));
    CHECK(std::abs(optimal_bounds(f).upper - ev.back()) <= 1e-10 * (1.0 + ev.back()));
  }
}
