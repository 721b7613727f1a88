#include "csframe/solver.hpp"

#include <algorithm>
#include <cmath>

#include "csframe/errors.hpp"
#include "csframe/random.hpp"

namespace csframe {

double measured_contraction(const std::vector<double>& residuals) {
  const std::size_t n = residuals.size();
  if (n < 2) return 0.0;
  // Skip trailing entries that sit at round-off level.
  std::size_t last = n - 1;
  while (last > 1 && residuals[last] < 1e-13 * residuals.front()) --last;
  const std::size_t mid = last / 2;
  if (last == mid || residuals[mid] <= 0.0) return 0.0;
  return std::pow(residuals[last] / residuals[mid], 1.0 / static_cast<double>(last - mid));
}

SolveResult solve_frame_equation(const FrameSystem& frame, const ModuleVector& g,
                                 const SolveConfig& cfg) {
  require_same_shape(frame.shape(), g.shape(), "solve_frame_equation");
  if (cfg.max_iters < 1) throw InvalidArgument("max_iters must be >= 1");
  if (!(cfg.target_residual > 0.0)) throw InvalidArgument("target residual must be > 0");
  if (!is_frame(frame)) throw NotAFrame("solve_frame_equation: system is not a frame");

  const ModuleOperator& s = frame.frame_op();
  const Controller precond = cfg.controller ? *cfg.controller : Controller::identity(frame.shape());
  const ControlledFrameReport eff = is_controlled_frame(frame, precond);
  if (!eff.is_controlled_frame) {
    throw NotControlledFrame("preconditioned operator P S is not Hermitian positive definite");
  }

  ConvergenceTrace trace;
  trace.effective_bounds = eff.bounds;
  const double lo = eff.bounds.lower;
  const double hi = eff.bounds.upper;
  trace.theoretical_rate = (hi - lo) / (hi + lo);
  trace.relaxation = cfg.relaxation.value_or(2.0 / (lo + hi));
  if (!(trace.relaxation > 0.0) || !(trace.relaxation < 2.0 / hi)) {
    throw DivergentConfig("relaxation " + std::to_string(trace.relaxation) +
                          " outside (0, " + std::to_string(2.0 / hi) + ")");
  }

  const ModuleVector exact = op_apply(op_inverse(s), g);
  const double exact_norm = module_norm(exact);
  const double g_norm = module_norm(g);
  const Complex lambda(trace.relaxation, 0.0);

  ModuleVector f = ModuleVector::zero(frame.shape());
  auto record = [&](const ModuleVector& x, const ModuleVector& r) {
    trace.residuals.push_back(exact_norm > 0.0 ? module_norm(x - exact) / exact_norm : 0.0);
    trace.equation_residuals.push_back(g_norm > 0.0 ? module_norm(r) / g_norm : 0.0);
  };

  ModuleVector r = g;
  record(f, r);
  int growth = 0;
  while (trace.equation_residuals.back() > cfg.target_residual && trace.iterations < cfg.max_iters) {
    f = f + lambda * op_apply(precond.op(), r);
    r = g - op_apply(s, f);
    ++trace.iterations;
    record(f, r);
    const std::size_t k = trace.equation_residuals.size();
    growth = trace.equation_residuals[k - 1] > trace.equation_residuals[k - 2] ? growth + 1 : 0;
    if (growth >= 10) throw DivergentConfig("residual grew for 10 consecutive iterations");
  }
  trace.converged = trace.equation_residuals.back() <= cfg.target_residual;
  trace.measured_rate = measured_contraction(trace.residuals);
  return {std::move(f), std::move(trace)};
}

std::vector<BenchmarkRow> benchmark_preconditioning(const FrameSystem& frame,
                                                    const std::vector<NamedController>& controllers,
                                                    const SolveConfig& cfg) {
  Rng rng(cfg.seed);
  const ModuleVector g = random_vector(frame.shape(), rng);

  const Controller id = Controller::identity(frame.shape());
  const bool has_identity = std::any_of(controllers.begin(), controllers.end(), [&](const NamedController& nc) {
    return nc.controller.shape() == id.shape() && nc.controller.op().blocks() == id.op().blocks();
  });
  std::vector<NamedController> all;
  if (!has_identity) all.push_back({"identity", id});
  all.insert(all.end(), controllers.begin(), controllers.end());

  std::vector<BenchmarkRow> rows;
  for (const NamedController& nc : all) {
    BenchmarkRow row;
    row.name = nc.name;
    try {
      SolveConfig c = cfg;
      c.controller = nc.controller;
      c.relaxation.reset();
      const SolveResult res = solve_frame_equation(frame, g, c);
      row.ok = true;
      row.effective_bounds = res.trace.effective_bounds;
      row.condition = row.effective_bounds.upper / row.effective_bounds.lower;
      row.iterations = res.trace.iterations;
      row.converged = res.trace.converged;
      row.measured_rate = res.trace.measured_rate;
      row.theoretical_rate = res.trace.theoretical_rate;
    } catch (const Error& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace csframe
