#pragma once

// Preconditioned Richardson iteration for S f = g:
//
//   f_0 = 0,   f_{k+1} = f_k + lambda * P(g - S f_k)
//
// with P an optional controller. The effective operator is P S (representation
// Q R_P), which must be an accepted controlled frame operator; with its
// optimal bounds C, D and lambda = 2/(C+D) the error contracts by
// (D-C)/(D+C) per step.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "csframe/controlled.hpp"

namespace csframe {

struct SolveConfig {
  int max_iters = 10000;
  double target_residual = 1e-10;
  /// Defaults to 2/(C+D) of the effective operator.
  std::optional<double> relaxation;
  std::optional<Controller> controller;
  std::uint64_t seed = 0;
};

struct ConvergenceTrace {
  /// ||f_k - f*|| / ||f*|| for k = 0..iterations.
  std::vector<double> residuals;
  /// ||S f_k - g|| / ||g||, the stopping quantity.
  std::vector<double> equation_residuals;
  double measured_rate = 0.0;
  double theoretical_rate = 0.0;
  double relaxation = 0.0;
  FrameBounds effective_bounds;
  int iterations = 0;
  bool converged = false;
};

struct SolveResult {
  ModuleVector solution;
  ConvergenceTrace trace;
};

/// Throws NotAFrame, NotControlledFrame (P S rejected), DivergentConfig
/// (relaxation outside (0, 2/D) or residual growth over 10 consecutive steps),
/// InvalidArgument.
SolveResult solve_frame_equation(const FrameSystem& frame, const ModuleVector& g,
                                 const SolveConfig& cfg);

/// Geometric-mean contraction of `residuals` over the second half of the run.
double measured_contraction(const std::vector<double>& residuals);

struct NamedController {
  std::string name;
  Controller controller;
};

struct BenchmarkRow {
  std::string name;
  bool ok = false;
  std::string error;
  FrameBounds effective_bounds;
  double condition = 0.0;
  int iterations = 0;
  bool converged = false;
  double measured_rate = 0.0;
  double theoretical_rate = 0.0;
};

/// One row per controller, preceded by an identity baseline row unless the
/// list already contains the identity. The right hand side is a random
/// vector drawn from cfg.seed. Rows that throw are reported with ok = false.
std::vector<BenchmarkRow> benchmark_preconditioning(const FrameSystem& frame,
                                                    const std::vector<NamedController>& controllers,
                                                    const SolveConfig& cfg);

}  // namespace csframe
