#include "csframe/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "csframe/json_io.hpp"
#include "csframe/random.hpp"
#include "csframe/solver.hpp"

namespace csframe::cli {

double default_tolerance() {
  if (const char* env = std::getenv("CSFRAME_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0) return v;
  }
  return kDefaultTol;
}

namespace {

std::string sha256_of_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string data = buf.str();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
  return hex.str();
}

Json bounds_json(FrameBounds b) { return Json{{"lower", b.lower}, {"upper", b.upper}}; }
Json mM_json(FrameBounds b) { return Json{{"m", b.lower}, {"M", b.upper}}; }

struct Context {
  double tol = kDefaultTol;
  std::uint64_t seed = 0;
  std::string report_path;
  std::ostream* out = nullptr;
  Json inputs = Json::object();

  FrameSystem load_frame(const std::string& path) {
    inputs["frame"] = Json{{"path", path}, {"sha256", sha256_of_file(path)}};
    return frame_from_json(read_json_file(path));
  }
  Symbol load_symbol(const std::string& path) {
    inputs["symbol"] = Json{{"path", path}, {"sha256", sha256_of_file(path)}};
    return symbol_from_json(read_json_file(path));
  }
  // A controller is a file or one of "identity", "jacobi", "inverse".
  Controller load_controller(const std::string& arg, const FrameSystem& frame) {
    if (arg == "identity") return Controller::identity(frame.shape());
    if (arg == "jacobi") return Controller::jacobi(frame);
    if (arg == "inverse") return Controller::inverse_frame_operator(frame);
    inputs["controller"] = Json{{"path", arg}, {"sha256", sha256_of_file(arg)}};
    ModuleOperator op = module_operator_from_json(read_json_file(arg));
    require_same_shape(frame.shape(), op.shape(), "controller");
    return Controller(std::move(op), tol);
  }

  int emit(const std::string& command, bool pass, Json details, Json tolerances = Json::object()) {
    tolerances["tol"] = tol;
    Json report{{"command", command},
                {"inputs", inputs},
                {"pass", pass},
                {"details", std::move(details)},
                {"seed", seed},
                {"tolerances", std::move(tolerances)}};
    if (report_path.empty()) {
      *out << report.dump(2) << '\n';
    } else {
      write_json_file(report_path, report);
    }
    return pass ? kPass : kCheckFailed;
  }
};

std::vector<int> parse_blocks(const std::string& s) {
  std::vector<int> dims;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      dims.push_back(std::stoi(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("invalid --blocks list '" + s + "'");
    }
  }
  return dims;
}

void write_or_print(const std::string& path, const Json& j, std::ostream& out) {
  if (path.empty()) out << j.dump(1) << '\n';
  else write_json_file(path, j);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frames, controlled frames and multipliers in Hilbert C*-modules over A = M_d1 + ... + M_dB", "csframe"};
  app.require_subcommand(1);
  app.fallthrough();

  Context ctx;
  ctx.out = &out;
  ctx.tol = default_tolerance();
  app.add_option("--tol", ctx.tol, "Base tolerance (default 1e-10, or CSFRAME_TOL)");
  app.add_option("--seed", ctx.seed, "Seed for sampled checks and generators");
  app.add_option("--out", ctx.report_path, "Write the JSON report (or generated file) here instead of stdout");

  std::function<int()> action;

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a random frame, controller or symbol");
  std::string gen_kind;
  std::string blocks = "1";
  int rank = 2;
  int count = 3;
  double cond = 0.0;
  std::vector<double> range{1.0, 2.0};
  std::string controller_kind = "poly";
  std::string gen_frame;
  gen->add_option("object", gen_kind, "frame | controller | symbol")->required()
      ->check(CLI::IsMember({"frame", "controller", "symbol"}));
  gen->add_option("--blocks", blocks, "Comma-separated block dimensions, e.g. 1,2");
  gen->add_option("--rank", rank, "Module rank n");
  gen->add_option("--count", count, "Number of frame vectors / symbol entries");
  gen->add_option("--cond", cond, "Frame: condition number of the frame operator (0 = Gaussian frame)");
  gen->add_option("--range", range, "Symbol: value range lo hi")->expected(2);
  gen->add_option("--kind", controller_kind, "Controller: identity | poly | inverse | jacobi | random-positive | scalar");
  gen->add_option("--frame", gen_frame, "Controller: frame file the controller is built from");
  gen->callback([&] {
    action = [&]() -> int {
      Rng rng(ctx.seed);
      if (gen_kind == "frame") {
        const ModuleShape shape(AlgebraShape(parse_blocks(blocks)), rank);
        const FrameSystem f = cond > 0.0 ? frame_with_condition(shape, count, cond, rng)
                                         : random_frame(shape, count, rng);
        write_or_print(ctx.report_path, to_json(f), out);
      } else if (gen_kind == "symbol") {
        write_or_print(ctx.report_path,
                       to_json(random_symbol(AlgebraShape(parse_blocks(blocks)), count, range[0], range[1], rng)),
                       out);
      } else {
        std::optional<FrameSystem> f;
        if (!gen_frame.empty()) f = frame_from_json(read_json_file(gen_frame));
        const ModuleShape shape = f ? f->shape() : ModuleShape(AlgebraShape(parse_blocks(blocks)), rank);
        auto need_frame = [&]() -> const FrameSystem& {
          if (!f) throw ParseError("controller kind '" + controller_kind + "' needs --frame");
          return *f;
        };
        ModuleOperator op = ModuleOperator::identity(shape);
        if (controller_kind == "identity") {
        } else if (controller_kind == "poly") {
          // S^2 + I, normalised to unit norm.
          const ModuleOperator p = Controller::polynomial_in_frame_operator(need_frame(), {1.0, 0.0, 1.0}).op();
          op = Complex(1.0 / op_norm(p), 0.0) * p;
        } else if (controller_kind == "inverse") {
          op = Controller::inverse_frame_operator(need_frame()).op();
        } else if (controller_kind == "jacobi") {
          op = Controller::jacobi(need_frame()).op();
        } else if (controller_kind == "random-positive") {
          op = random_positive_operator(shape, range[0], range[1], rng);
        } else if (controller_kind == "scalar") {
          std::vector<Complex> s;
          for (int b = 0; b < shape.algebra.num_blocks(); ++b) s.emplace_back(rng.uniform(range[0], range[1]), 0.0);
          op = ModuleOperator::central(shape, CentralElement(shape.algebra, std::move(s)));
        } else {
          throw ParseError("unknown controller kind '" + controller_kind + "'");
        }
        write_or_print(ctx.report_path, to_json(op), out);
      }
      return kPass;
    };
  });

  // check
  auto* check = app.add_subcommand("check", "Decide whether a system is a frame or a controlled frame");
  std::string frame_path;
  std::string controller_spec;
  check->add_option("frame", frame_path, "Frame file")->required();
  check->add_option("--controller", controller_spec, "Controller file or identity | jacobi | inverse");
  check->callback([&] {
    action = [&]() -> int {
      const FrameSystem f = ctx.load_frame(frame_path);
      if (controller_spec.empty()) {
        const bool ok = is_frame(f, ctx.tol);
        return ctx.emit("check", ok, Json{{"is_frame", ok}, {"is_bessel", is_bessel(f)}, {"bounds", bounds_json(optimal_bounds(f))}});
      }
      const Controller c = ctx.load_controller(controller_spec, f);
      const double ctol = 10 * ctx.tol;
      const ControlledFrameReport r = is_controlled_frame(f, c, ctol);
      return ctx.emit("check", r.is_controlled_frame,
                      Json{{"is_controlled_frame", r.is_controlled_frame},
                           {"bounds", mM_json(r.bounds)},
                           {"self_adjoint_defect", r.self_adjoint_defect},
                           {"commutation_defect", r.commutation_defect}},
                      Json{{"controlled", ctol}});
    };
  });

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Optimal frame bounds");
  bounds->add_option("frame", frame_path, "Frame file")->required();
  bounds->callback([&] {
    action = [&]() -> int {
      const FrameSystem f = ctx.load_frame(frame_path);
      return ctx.emit("bounds", is_frame(f, ctx.tol), bounds_json(optimal_bounds(f)));
    };
  });

  // dual
  auto* dual = app.add_subcommand("dual", "Canonical dual frame");
  std::string write_path;
  dual->add_option("frame", frame_path, "Frame file")->required();
  dual->add_option("--write", write_path, "Write the dual frame file here");
  dual->callback([&] {
    action = [&]() -> int {
      const FrameSystem f = ctx.load_frame(frame_path);
      const FrameSystem d = canonical_dual(f, ctx.tol);
      if (!write_path.empty()) write_json_file(write_path, to_json(d));
      const double res = dual_pair_residual(f, d);
      const double res_rev = dual_pair_residual(d, f);
      const double dtol = 1e-8;
      return ctx.emit("dual", res <= dtol && res_rev <= dtol,
                      Json{{"dual_residual", res}, {"dual_residual_swapped", res_rev}, {"dual_bounds", bounds_json(optimal_bounds(d))},
                           {"written", write_path}},
                      Json{{"dual", dtol}});
    };
  });

  // mult
  auto* mult = app.add_subcommand("mult", "Assemble a (controlled) multiplier M_{m,F,G}");
  std::string symbol_path;
  std::string second_path;
  mult->add_option("frame", frame_path, "Analysis frame F")->required();
  mult->add_option("--symbol", symbol_path, "Symbol file")->required();
  mult->add_option("--second", second_path, "Synthesis frame G (default F)");
  mult->add_option("--controller", controller_spec, "Controller file or identity | jacobi | inverse");
  mult->add_option("--write", write_path, "Write the operator file here");
  mult->callback([&] {
    action = [&]() -> int {
      const FrameSystem f = ctx.load_frame(frame_path);
      std::optional<FrameSystem> g;
      if (!second_path.empty()) {
        ctx.inputs["second"] = Json{{"path", second_path}, {"sha256", sha256_of_file(second_path)}};
        g = frame_from_json(read_json_file(second_path));
      }
      const FrameSystem& gg = g ? *g : f;
      const Symbol m = ctx.load_symbol(symbol_path);
      ModuleOperator op = multiplier(m, f, gg);
      double bound = multiplier_norm_bound(m, f, gg);
      if (!controller_spec.empty()) {
        const Controller c = ctx.load_controller(controller_spec, f);
        op = controlled_multiplier(m, f, gg, c);
        bound *= op_norm(c.op());
      }
      if (!write_path.empty()) write_json_file(write_path, to_json(op));
      const double n = op_norm(op);
      return ctx.emit("mult", n <= bound + 1e-9,
                      Json{{"op_norm", n}, {"norm_bound", bound}, {"sup_norm", m.sup_norm()}, {"written", write_path}},
                      Json{{"norm_bound_slack", 1e-9}});
    };
  });

  // wframe
  auto* wframe = app.add_subcommand("wframe", "Decide whether (w, F) is a weighted frame");
  wframe->add_option("frame", frame_path, "Frame file")->required();
  wframe->add_option("--symbol", symbol_path, "Weight file")->required();
  wframe->callback([&] {
    action = [&]() -> int {
      const FrameSystem f = ctx.load_frame(frame_path);
      const WFrameResult r = is_w_frame(f, ctx.load_symbol(symbol_path), ctx.tol);
      return ctx.emit("wframe", r.is_w_frame, Json{{"is_w_frame", r.is_w_frame}, {"bounds", bounds_json(r.bounds)}});
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Run one structural check and report defects");
  std::string check_name;
  int samples = 200;
  verify->add_option("check", check_name, "Check name")->required()->check(CLI::IsMember(
      {"prop_3_4", "prop_3_9", "prop_3_10", "thm_2_1", "thm_3_6", "lemma_4_6", "lemma_4_7", "thm_4_8", "prop_4_4"}));
  verify->add_option("frame", frame_path, "Frame file")->required();
  verify->add_option("--controller", controller_spec, "Controller file or identity | jacobi | inverse");
  verify->add_option("--symbol", symbol_path, "Symbol / weight file");
  verify->add_option("--samples", samples, "Random samples for sampled checks");
  verify->callback([&] {
    action = [&]() -> int {
      const FrameSystem f = ctx.load_frame(frame_path);
      auto controller = [&] {
        if (controller_spec.empty()) throw ParseError(check_name + " needs --controller");
        return ctx.load_controller(controller_spec, f);
      };
      auto symbol = [&] {
        if (symbol_path.empty()) throw ParseError(check_name + " needs --symbol");
        return ctx.load_symbol(symbol_path);
      };
      auto finish = [&](bool pass, Json defects, Json bnds, Json extra, Json tols) {
        Json details{{"check", check_name}, {"pass", pass}, {"defects", std::move(defects)}, {"bounds", std::move(bnds)}};
        details.update(extra);
        return ctx.emit("verify", pass, std::move(details), std::move(tols));
      };
      const double ctol = 10 * ctx.tol;  // Hermitian-defect tolerance for controllers
      if (check_name == "prop_3_4") {
        const AdjointabilityReport r = verify_prop_3_4(f, controller(), ctx.tol);
        return finish(r.pass, Json{{"adjoint_defect", r.adjoint_defect}}, mM_json(r.bounds),
                      Json{{"applicable", r.applicable}, {"positive", r.positive}, {"self_adjoint", r.self_adjoint},
                           {"invertible", r.invertible}},
                      Json::object());
      }
      if (check_name == "prop_3_9") {
        const CommutationReport r = verify_prop_3_9(f, controller(), samples, ctx.seed, ctol);
        return finish(r.pass, Json{{"commutation_defect", r.commutation_defect}, {"summation_defect", r.summation_defect}},
                      mM_json(r.bounds), Json{{"applicable", r.applicable}}, Json{{"controlled", ctol}});
      }
      if (check_name == "prop_3_10") {
        const SelfAdjointControllerReport r = verify_prop_3_10(f, controller(), ctol);
        return finish(r.agree, Json{{"commutator_defect", r.commutator_defect}}, Json::object(),
                      Json{{"controlled_frame", r.controlled_frame}, {"frame", r.frame},
                           {"controller_positive", r.controller_positive}, {"commutes", r.commutes},
                           {"rhs", r.rhs}},
                      Json{{"controlled", ctol}});
      }
      if (check_name == "thm_2_1" || check_name == "thm_3_6") {
        const double mtol = 1e-9;
        const NormCheckReport r = check_name == "thm_2_1"
                                      ? norm_characterization_check(f, samples, ctx.seed, mtol)
                                      : controlled_characterization_check(f, controller(), samples, ctx.seed, mtol);
        return finish(r.pass,
                      Json{{"worst_lower_margin", r.worst_lower_margin}, {"worst_upper_margin", r.worst_upper_margin},
                           {"tightest_witness_margin", r.tightest_witness_margin}},
                      mM_json(r.bounds), Json{{"samples", r.samples}, {"min_witness_ratio", r.min_witness_ratio}},
                      Json{{"margin", mtol}});
      }
      if (check_name == "lemma_4_6") {
        const Lemma46Report r = verify_lemma_4_6(f, symbol());
        return finish(r.pass,
                      Json{{"bracket_lower_margin", r.bracket_lower_margin},
                           {"bracket_upper_margin", r.bracket_upper_margin}, {"dual_residual", r.dual_residual}},
                      mM_json(r.reweighted_bounds),
                      Json{{"a", r.witness.a}, {"b", r.witness.b}, {"frame_bounds", bounds_json(r.frame_bounds)}},
                      Json{{"bracket", 1e-9}, {"dual", 1e-8}});
      }
      if (check_name == "lemma_4_7") {
        const Lemma47Report r = verify_lemma_4_7(f, symbol(), ctx.tol);
        return finish(r.pass, Json{{"relative_defect", r.relative_defect}}, Json::object(),
                      Json{{"negative_symbol", r.negative_symbol}, {"definite", r.definite},
                           {"self_adjoint", r.self_adjoint}, {"invertible", r.invertible}},
                      Json::object());
      }
      if (check_name == "thm_4_8") {
        const Thm48Report r = verify_thm_4_8(f, symbol(), 5, ctx.seed, ctx.tol);
        return finish(r.all_agree, Json::object(), Json::object(),
                      Json{{"predicates", r.predicates()}, {"all_agree", r.all_agree},
                           {"other_symbols_checked", r.other_symbols_checked}},
                      Json::object());
      }
      // prop_4_4
      const DiagonalExtraction r = extract_diagonal_controller(f, controller());
      return finish(r.pass,
                    Json{{"max_relative_residual", r.max_relative_residual},
                         {"reconstruction_defect", r.reconstruction_defect}},
                    Json{{"m", r.controller_bounds.lower}, {"M", r.controller_bounds.upper}},
                    Json{{"weights", to_json(r.weights)}, {"a", r.witness.a}, {"b", r.witness.b}},
                    Json{{"residual", 1e-8}, {"reconstruction", 1e-9}});
    };
  });

  // solve and bench share the iteration settings.
  SolveConfig cfg;
  double relax = 0.0;
  std::string rhs_path;
  std::string trace_path;
  std::vector<std::string> controller_specs;

  auto* solve = app.add_subcommand("solve", "Invert the frame operator by (preconditioned) Richardson iteration");
  solve->add_option("frame", frame_path, "Frame file")->required();
  solve->add_option("--rhs", rhs_path, "Right-hand side vector file (default: random from --seed)");
  solve->add_option("--max-iters", cfg.max_iters, "Iteration cap");
  solve->add_option("--target", cfg.target_residual, "Relative residual target");
  solve->add_option("--relax", relax, "Relaxation (default 2/(C+D))");
  solve->add_option("--controller", controller_spec, "Controller file or identity | jacobi | inverse");
  solve->add_option("--trace", trace_path, "Write a CSV trace (iter,residual,ratio)");
  solve->add_option("--write", write_path, "Write the solution vector here");
  solve->callback([&] {
    action = [&]() -> int {
      const FrameSystem f = ctx.load_frame(frame_path);
      std::optional<ModuleVector> g;
      if (!rhs_path.empty()) {
        ctx.inputs["rhs"] = Json{{"path", rhs_path}, {"sha256", sha256_of_file(rhs_path)}};
        g = module_vector_from_json(read_json_file(rhs_path));
      } else {
        Rng rng(ctx.seed);
        g = random_vector(f.shape(), rng);
      }
      cfg.seed = ctx.seed;
      if (relax > 0.0) cfg.relaxation = relax;
      if (!controller_spec.empty()) cfg.controller = ctx.load_controller(controller_spec, f);
      const SolveResult res = solve_frame_equation(f, *g, cfg);
      const ConvergenceTrace& t = res.trace;
      if (!trace_path.empty()) {
        std::ofstream csv(trace_path);
        if (!csv) throw InvalidArgument("cannot write " + trace_path);
        csv << "iter,residual,ratio\n" << std::setprecision(17);
        for (std::size_t k = 0; k < t.residuals.size(); ++k) {
          csv << k << ',' << t.residuals[k] << ',';
          if (k > 0 && t.residuals[k - 1] > 0.0) csv << t.residuals[k] / t.residuals[k - 1];
          csv << '\n';
        }
      }
      if (!write_path.empty()) write_json_file(write_path, to_json(res.solution));
      return ctx.emit("solve", t.converged,
                      Json{{"iterations", t.iterations}, {"converged", t.converged},
                           {"final_residual", t.equation_residuals.back()},
                           {"final_error", t.residuals.back()},
                           {"measured_rate", t.measured_rate}, {"theoretical_rate", t.theoretical_rate},
                           {"relaxation", t.relaxation}, {"effective_bounds", bounds_json(t.effective_bounds)}},
                      Json{{"target_residual", cfg.target_residual}});
    };
  });

  auto* bench = app.add_subcommand("bench", "Compare iteration counts across preconditioning controllers");
  bench->add_option("frame", frame_path, "Frame file")->required();
  bench->add_option("--controller", controller_specs, "Controller file or identity | jacobi | inverse (repeatable)");
  bench->add_option("--max-iters", cfg.max_iters, "Iteration cap");
  bench->add_option("--target", cfg.target_residual, "Relative residual target");
  bench->callback([&] {
    action = [&]() -> int {
      const FrameSystem f = ctx.load_frame(frame_path);
      std::vector<NamedController> cs;
      for (const std::string& arg : controller_specs) cs.push_back({arg, ctx.load_controller(arg, f)});
      cfg.seed = ctx.seed;
      const std::vector<BenchmarkRow> rows = benchmark_preconditioning(f, cs, cfg);
      Json table = Json::array();
      bool all_ok = true;
      for (const BenchmarkRow& r : rows) {
        all_ok = all_ok && r.ok && r.converged;
        Json row{{"controller", r.name}, {"ok", r.ok}};
        if (r.ok) {
          row.update(Json{{"effective_bounds", bounds_json(r.effective_bounds)}, {"condition", r.condition},
                          {"iterations", r.iterations}, {"converged", r.converged},
                          {"measured_rate", r.measured_rate}, {"theoretical_rate", r.theoretical_rate}});
        } else {
          row["error"] = r.error;
        }
        table.push_back(std::move(row));
      }
      return ctx.emit("bench", all_ok, Json{{"rows", std::move(table)}},
                      Json{{"target_residual", cfg.target_residual}});
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kParseError;
  }

  try {
    return action();
  } catch (const ShapeMismatch& e) {
    err << "shape error: " << e.what() << '\n';
    return kShapeError;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const InvalidArgument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kParseError;
  } catch (const Error& e) {
    // Precondition failures of the invoked operation: report and fail.
    err << "check failed: " << e.what() << '\n';
    return ctx.emit(app.get_subcommands().front()->get_name(), false, Json{{"error", e.what()}});
  }
}

}  // namespace csframe::cli
