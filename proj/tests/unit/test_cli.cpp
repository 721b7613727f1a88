#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "csframe/cli.hpp"
#include "csframe/json_io.hpp"
#include "csframe/random.hpp"
#include "support.hpp"

using namespace csframe;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
  Json report() const { return Json::parse(out); }
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli::run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path tmp(const std::string& name) {
  const fs::path dir = fs::path(CSFRAME_TEST_TMP);
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

std::string gen(const std::vector<std::string>& args, const std::string& name) {
  const std::string path = tmp(name).string();
  std::vector<std::string> full{"gen"};
  full.insert(full.end(), args.begin(), args.end());
  full.push_back("--out");
  full.push_back(path);
  const Run r = run(full);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  return path;
}

}  // namespace

TEST_CASE("gen frame and check") {
  const std::string f = gen({"frame", "--blocks", "1", "--rank", "2", "--count", "3", "--seed", "7"}, "f7.json");
  const Run r = run({"check", f});
  CHECK(r.code == 0);
  const Json rep = r.report();
  CHECK(rep["command"] == "check");
  CHECK(rep["pass"] == true);
  CHECK(rep["details"]["is_frame"] == true);
  CHECK(rep["inputs"]["frame"]["sha256"].get<std::string>().size() == 64);
  CHECK(rep["tolerances"]["tol"] == 1e-10);
  CHECK(rep["seed"] == 0);

  const std::string deficient = gen({"frame", "--count", "1", "--rank", "2"}, "f1.json");
  const Run bad = run({"check", deficient});
  CHECK(bad.code == 1);
  CHECK(bad.report()["details"]["is_frame"] == false);
}

TEST_CASE("generation is deterministic") {
  const std::string a = gen({"frame", "--blocks", "2,1", "--rank", "3", "--count", "5", "--seed", "11"}, "det_a.json");
  const std::string b = gen({"frame", "--blocks", "2,1", "--rank", "3", "--count", "5", "--seed", "11"}, "det_b.json");
  const std::string c = gen({"frame", "--blocks", "2,1", "--rank", "3", "--count", "5", "--seed", "12"}, "det_c.json");
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a) != slurp(c));
  const std::string s1 = gen({"symbol", "--blocks", "2,1", "--count", "5", "--seed", "3"}, "det_s1.json");
  const std::string s2 = gen({"symbol", "--blocks", "2,1", "--count", "5", "--seed", "3"}, "det_s2.json");
  CHECK(slurp(s1) == slurp(s2));
  const std::string k1 = gen({"controller", "--kind", "poly", "--frame", a}, "det_k1.json");
  const std::string k2 = gen({"controller", "--kind", "poly", "--frame", a}, "det_k2.json");
  CHECK(slurp(k1) == slurp(k2));
}

TEST_CASE("gen symbol") {
  const std::string s = gen({"symbol", "--count", "3", "--range", "1", "2", "--seed", "5"}, "sym.json");
  const Symbol m = symbol_from_json(read_json_file(s));
  CHECK(m.size() == 3);
  const SemiNormalizedWitness w = semi_normalized_witness(m);
  CHECK(w.a >= 1.0);
  CHECK(w.b <= 2.0);
}

TEST_CASE("bounds of the standard basis") {
  const fs::path p = tmp("basis.json");
  write_json_file(p, to_json(FrameSystem::standard_basis(ModuleShape(AlgebraShape({2, 1}), 3))));
  const Run r = run({"bounds", p.string()});
  CHECK(r.code == 0);
  CHECK(r.report()["details"] == Json{{"lower", 1.0}, {"upper", 1.0}});
}

TEST_CASE("verify every check") {
  const std::string f = gen({"frame", "--blocks", "2,1", "--rank", "2", "--count", "6", "--seed", "21"}, "vf.json");
  const std::string w = gen({"symbol", "--blocks", "2,1", "--count", "6", "--range", "0.5", "3", "--seed", "22"}, "vw.json");
  const std::string poly = gen({"controller", "--kind", "poly", "--frame", f}, "vpoly.json");

  const Run thm = run({"verify", "thm_4_8", f, "--symbol", w, "--seed", "1"});
  CHECK(thm.code == 0);
  const Json d = thm.report()["details"];
  CHECK(d["check"] == "thm_4_8");
  CHECK(d["pass"] == true);
  REQUIRE(d["predicates"].size() == 6);
  for (const Json& p : d["predicates"]) CHECK(p == true);

  for (const char* name : {"prop_3_4", "prop_3_9", "prop_3_10", "thm_3_6"}) {
    const Run r = run({"verify", name, f, "--controller", poly});
    CHECK_MESSAGE(r.code == 0, name);
    CHECK(r.report()["details"].contains("defects"));
    CHECK(r.report()["details"].contains("bounds"));
  }
  CHECK(run({"verify", "thm_2_1", f, "--samples", "50"}).code == 0);
  CHECK(run({"verify", "lemma_4_6", f, "--symbol", w}).code == 0);
  CHECK(run({"verify", "lemma_4_7", f, "--symbol", w}).code == 0);
  CHECK(run({"verify", "prop_3_10", f, "--controller", "inverse"}).code == 0);

  // Diagonal controller on an eigenframe.
  Rng rng(23);
  const testing::Eigenframe ef = testing::eigenframe(ModuleShape(AlgebraShape({2, 1}), 2), 6, 1.0, 2.0, rng);
  write_json_file(tmp("ef.json"), to_json(ef.frame));
  write_json_file(tmp("ec.json"), to_json(ef.controller.op()));
  const Run p44 = run({"verify", "prop_4_4", tmp("ef.json").string(), "--controller", tmp("ec.json").string()});
  CHECK(p44.code == 0);
  CHECK(p44.report()["details"]["defects"]["reconstruction_defect"].get<double>() <= 1e-9);

  // A positive controller that does not commute with S fails prop_3_9.
  const std::string rp = gen({"controller", "--kind", "random-positive", "--blocks", "2,1", "--rank", "2", "--seed", "4"}, "vrp.json");
  const Run nc = run({"verify", "prop_3_9", f, "--controller", rp});
  CHECK(nc.code == 1);
  CHECK(nc.report()["details"]["applicable"] == false);
  // prop_3_10 agrees on it (both sides false).
  CHECK(run({"verify", "prop_3_10", f, "--controller", rp}).code == 0);
}

TEST_CASE("dual, mult, wframe") {
  const std::string f = gen({"frame", "--blocks", "1,2", "--rank", "2", "--count", "5", "--seed", "31"}, "df.json");
  const std::string d = tmp("dd.json").string();
  const Run r = run({"dual", f, "--write", d});
  CHECK(r.code == 0);
  CHECK(is_dual_pair(frame_from_json(read_json_file(f)), frame_from_json(read_json_file(d))));

  const std::string w = gen({"symbol", "--blocks", "1,2", "--count", "5", "--seed", "32"}, "dw.json");
  CHECK(run({"wframe", f, "--symbol", w}).code == 0);
  const std::string op = tmp("dm.json").string();
  const Run m = run({"mult", f, "--symbol", w, "--second", d, "--write", op});
  CHECK(m.code == 0);
  CHECK(module_operator_from_json(read_json_file(op)).shape() == ModuleShape(AlgebraShape({1, 2}), 2));
  CHECK(run({"mult", f, "--symbol", w, "--controller", "jacobi"}).code == 0);
}

TEST_CASE("solve and bench") {
  const std::string f = gen({"frame", "--blocks", "2", "--rank", "2", "--count", "4", "--cond", "20", "--seed", "41"}, "sf.json");
  const Run inv = run({"solve", f, "--controller", "inverse"});
  CHECK(inv.code == 0);
  CHECK(inv.report()["details"]["iterations"] == 1);

  const fs::path trace = tmp("trace.csv");
  const fs::path sol = tmp("sol.json");
  const Run plain = run({"solve", f, "--trace", trace.string(), "--write", sol.string(), "--seed", "3"});
  CHECK(plain.code == 0);
  const std::string csv = slurp(trace);
  CHECK(csv.rfind("iter,residual,ratio\n0,1,\n", 0) == 0);
  CHECK(module_vector_from_json(read_json_file(sol)).rank() == 2);

  const Run capped = run({"solve", f, "--max-iters", "2"});
  CHECK(capped.code == 1);
  CHECK(capped.report()["details"]["converged"] == false);
  CHECK(run({"solve", f, "--relax", "10"}).code == 1);

  const Run b = run({"bench", f, "--controller", "inverse"});
  CHECK(b.code == 0);
  const Json rows = b.report()["details"]["rows"];
  REQUIRE(rows.size() == 2);
  CHECK(rows[0]["controller"] == "identity");
  CHECK(rows[1]["iterations"] == 1);

  // Jacobi does not keep a generic frame controlled; the row says so.
  const Run bj = run({"bench", f, "--controller", "inverse", "--controller", "jacobi"});
  CHECK(bj.code == 1);
  const Json jrows = bj.report()["details"]["rows"];
  REQUIRE(jrows.size() == 3);
  CHECK(jrows[2]["ok"] == false);
  CHECK(jrows[2].contains("error"));
}

TEST_CASE("report to file and tolerance overrides") {
  const std::string f = gen({"frame", "--blocks", "1", "--rank", "2", "--count", "3", "--seed", "7"}, "tf.json");
  const fs::path rep = tmp("report.json");
  const Run r = run({"--tol", "1e-8", "--out", rep.string(), "check", f});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(read_json_file(rep)["tolerances"]["tol"] == 1e-8);

  setenv("CSFRAME_TOL", "1e-6", 1);
  CHECK(cli::default_tolerance() == 1e-6);
  CHECK(run({"check", f}).report()["tolerances"]["tol"] == 1e-6);
  setenv("CSFRAME_TOL", "garbage", 1);
  CHECK(cli::default_tolerance() == kDefaultTol);
  unsetenv("CSFRAME_TOL");
  CHECK(cli::default_tolerance() == kDefaultTol);
}

TEST_CASE("exit codes on malformed inputs") {
  const std::string f = gen({"frame", "--blocks", "2", "--rank", "2", "--count", "4", "--seed", "51"}, "ef1.json");
  const std::string other = gen({"frame", "--blocks", "2", "--rank", "3", "--count", "4", "--seed", "52"}, "ef2.json");
  const std::string k3 = gen({"controller", "--kind", "identity", "--blocks", "2", "--rank", "3"}, "ek3.json");
  const std::string w5 = gen({"symbol", "--blocks", "2", "--count", "5"}, "ew5.json");
  write_text(tmp("trunc.json"), "{\"algebra\": {\"block_dims\": [1]}, \"rank\": ");
  write_text(tmp("nokey.json"), "{\"algebra\": {\"block_dims\": [1]}, \"rank\": 1}");
  write_text(tmp("badnum.json"), R"({"algebra": {"block_dims": [1]}, "rank": 1, "vectors": [{"algebra": {"block_dims": [1]}, "rank": 1, "entries": [{"block_dims": [1], "blocks": [[["x", 0]]]}]}]})");
  write_text(tmp("badshape.json"), R"({"algebra": {"block_dims": [2]}, "rank": 1, "vectors": [{"algebra": {"block_dims": [2]}, "rank": 1, "entries": [{"block_dims": [2], "blocks": [[[[1,0]]]]}]}]})");

  // Parse errors.
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"check"}).code == 2);
  CHECK(run({"check", tmp("does_not_exist.json").string()}).code == 2);
  CHECK(run({"check", tmp("trunc.json").string()}).code == 2);
  CHECK(run({"check", tmp("nokey.json").string()}).code == 2);
  CHECK(run({"check", tmp("badnum.json").string()}).code == 2);
  CHECK(run({"check", f, "--bogus"}).code == 2);
  CHECK(run({"gen", "widget"}).code == 2);
  CHECK(run({"gen", "frame", "--blocks", "1,x"}).code == 2);
  CHECK(run({"gen", "frame", "--blocks", "0"}).code == 2);
  CHECK(run({"gen", "controller", "--kind", "poly"}).code == 2);
  CHECK(run({"verify", "prop_9_9", f}).code == 2);
  CHECK(run({"verify", "prop_3_4", f}).code == 2);
  CHECK(run({"verify", "lemma_4_6", f}).code == 2);
  CHECK(run({"solve", f, "--max-iters", "many"}).code == 2);

  // Shape errors.
  CHECK(run({"check", tmp("badshape.json").string()}).code == 3);
  CHECK(run({"check", f, "--controller", k3}).code == 3);
  CHECK(run({"wframe", f, "--symbol", w5}).code == 3);
  CHECK(run({"mult", f, "--symbol", w5}).code == 3);
  CHECK(run({"mult", f, "--symbol", gen({"symbol", "--blocks", "2", "--count", "4"}, "ew4.json"), "--second", other}).code == 3);

  // Check failures report and exit 1.
  const std::string deficient = gen({"frame", "--blocks", "2", "--rank", "2", "--count", "1"}, "ed.json");
  const Run nf = run({"dual", deficient});
  CHECK(nf.code == 1);
  CHECK(nf.report()["pass"] == false);
  CHECK(nf.report()["details"].contains("error"));
  CHECK(run({"solve", deficient}).code == 1);
  CHECK(run({"--help"}).code == 0);
}
