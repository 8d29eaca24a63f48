#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "fairmso/cli.hpp"
#include "support.hpp"

using namespace fairmso;
using namespace fairmso::testing;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("fairmso_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string write(const std::string& name, const std::string& body) const {
    const std::string p = (path_ / name).string();
    std::ofstream(p) << body;
    return p;
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("solve text output") {
  TempDir tmp;
  const std::string p4 = tmp.write("p4.graph", "4 3\n0 1\n1 2\n2 3\n");
  Result r = run_cli({"solve", "--graph", p4, "--problem", "vc"});
  CHECK(r.code == cli::kExitAnswered);
  CHECK(r.out.find("modulator: 1 (cvd)\n") == 0);
  CHECK(r.out.find("alpha=3 gamma=6 heuristic-parameters (theoretical alpha=9 gamma=6)\n") != std::string::npos);
  CHECK(r.out.find("k*=1 X={1,2}\n") != std::string::npos);
  CHECK(r.out.find("verification_failures=0") != std::string::npos);

  Result d = run_cli({"solve", "--graph", p4, "--problem", "vc", "--k", "0"});
  CHECK(d.code == cli::kExitAbsent);
  CHECK(d.out.find("k=0 infeasible\n") != std::string::npos);
}

TEST_CASE("solve json output") {
  TempDir tmp;
  const std::string c5 = tmp.write("c5.graph", "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\nmodulator: 0 2\n");
  Result r = run_cli({"solve", "--graph", c5, "--problem", "ds", "--json", "--dump-shapes"});
  REQUIRE(r.code == cli::kExitAnswered);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["command"] == "solve");
  CHECK(j["modulator_source"] == "file");
  CHECK(j["modulator"] == nlohmann::json({0, 2}));
  CHECK(j["mode"] == "minimize");
  Graph g = cycle_graph(5);
  auto expected = bf_min_fair(g, [&](const VertexSet& x) { return bf_dominating(g, x); });
  CHECK(j["k_star"] == *expected);
  VertexSet w(5);
  for (int v : j["witness"]) w.insert(v);
  CHECK(bf_dominating(g, w));
  CHECK(bf_fair_cost(g, w) == *expected);
  CHECK(j["fair_cost"] == *expected);
  CHECK(j["stats"]["verification_failures"] == 0);
  CHECK(j["shapes"].is_array());
  CHECK(j["shapes"].size() == j["stats"]["shapes_evaluated"].get<std::size_t>());

  Result again = run_cli({"solve", "--graph", c5, "--problem", "ds", "--json", "--dump-shapes", "--jobs", "3"});
  CHECK(again.out == r.out);
}

TEST_CASE("modulator precedence") {
  TempDir tmp;
  const std::string g = tmp.write("g.graph", "4 3\n0 1\n1 2\n2 3\nmodulator: 2\n");
  auto source = [&](std::vector<std::string> extra) {
    std::vector<std::string> args{"solve", "--graph", g, "--problem", "vc", "--json"};
    args.insert(args.end(), extra.begin(), extra.end());
    Result r = run_cli(args);
    REQUIRE(r.code == cli::kExitAnswered);
    auto j = nlohmann::json::parse(r.out);
    return std::pair{j["modulator_source"].get<std::string>(), j["modulator"]};
  };
  CHECK(source({}) == std::pair{std::string("file"), nlohmann::json({2})});
  CHECK(source({"--modulator", "1"}) == std::pair{std::string("flag"), nlohmann::json({1})});
  Result bad = run_cli({"solve", "--graph", g, "--problem", "vc", "--modulator", "0"});
  CHECK(bad.code == cli::kExitError);
  CHECK(bad.err.find("error: ") == 0);
}

TEST_CASE("custom formulas and parameter limits") {
  TempDir tmp;
  const std::string g = tmp.write("g.graph", "3 2\n0 1\n1 2\n");
  const std::string fo = tmp.write("cover.mso", "; vertex cover\n" + fo_corpus()[2] + "\n");
  Result r = run_cli({"solve", "--graph", g, "--formula", fo});
  CHECK(r.code == cli::kExitAnswered);
  CHECK(r.out.find("k*=1") != std::string::npos);

  const std::string so = tmp.write("so.mso", "(existsS S (forallV x (implies (in x S) (in x Free))))\n");
  Result lim = run_cli({"solve", "--graph", g, "--formula", so});
  CHECK(lim.code == cli::kExitError);
  CHECK(lim.err.find("pass --alpha and --gamma") != std::string::npos);
  Result forced = run_cli({"solve", "--graph", g, "--formula", so, "--alpha", "3", "--gamma", "4"});
  CHECK(forced.code == cli::kExitAnswered);
  CHECK(forced.out.find("heuristic-parameters") != std::string::npos);
}

TEST_CASE("usage errors") {
  TempDir tmp;
  const std::string g = tmp.write("g.graph", "2 1\n0 1\n");
  CHECK(run_cli({}).code == cli::kExitError);
  CHECK(run_cli({"--help"}).code == 0);
  CHECK(run_cli({"solve", "--graph", g}).code == cli::kExitError);
  CHECK(run_cli({"solve", "--graph", g, "--problem", "tsp"}).code == cli::kExitError);
  CHECK(run_cli({"solve", "--graph", g, "--problem", "sigma-rho"}).code == cli::kExitError);
  CHECK(run_cli({"solve", "--graph", g, "--problem", "vc", "--sigma", "0"}).code == cli::kExitError);
  CHECK(run_cli({"solve", "--graph", tmp.file("missing.graph"), "--problem", "vc"}).code == cli::kExitError);
  CHECK(run_cli({"solve", "--graph", g, "--problem", "vc", "--jobs", "0"}).code == cli::kExitError);
  const std::string broken = tmp.write("broken.mso", "(forallV x (in x Free)\n");
  Result p = run_cli({"solve", "--graph", g, "--formula", broken});
  CHECK(p.code == cli::kExitError);
  CHECK(p.err.find("error: ") == 0);
}

TEST_CASE("oracle, cvd and check subcommands") {
  TempDir tmp;
  const std::string p4 = tmp.write("p4.graph", "4 3\n0 1\n1 2\n2 3\n");
  Result o = run_cli({"oracle", "--graph", p4, "--problem", "vc"});
  CHECK(o.code == cli::kExitAnswered);
  CHECK(o.out.find("k*=1 X={1,2}\n") == 0);
  CHECK(o.out.find("subsets_checked=") != std::string::npos);
  CHECK(run_cli({"oracle", "--graph", p4, "--problem", "vc", "--max-n", "3"}).code == cli::kExitError);
  CHECK(run_cli({"oracle", "--graph", p4, "--problem", "vc", "--k", "0"}).code == cli::kExitAbsent);

  Result c = run_cli({"cvd", "--graph", p4});
  CHECK(c.code == cli::kExitAnswered);
  CHECK(c.out == "modulator: 1\n");
  CHECK(run_cli({"cvd", "--graph", p4, "--k", "0"}).code == cli::kExitAbsent);
  auto cj = nlohmann::json::parse(run_cli({"cvd", "--graph", p4, "--json"}).out);
  CHECK(cj["modulator"] == nlohmann::json({1}));

  Result ok = run_cli({"check", "--graph", p4, "--problem", "vc", "--set", "1,2"});
  CHECK(ok.code == cli::kExitAnswered);
  CHECK(ok.out.find("satisfies: yes") != std::string::npos);
  CHECK(ok.out.find("fair_cost: 1") != std::string::npos);
  CHECK(run_cli({"check", "--graph", p4, "--problem", "vc", "--set", "0,3"}).code == cli::kExitAbsent);
  CHECK(run_cli({"check", "--graph", p4, "--problem", "vc", "--set", "1,2", "--k", "0"}).code == cli::kExitAbsent);
  CHECK(run_cli({"check", "--graph", p4, "--problem", "vc", "--set", "9"}).code == cli::kExitError);
}

TEST_CASE("gen-hard writes a solvable instance") {
  TempDir tmp;
  const std::string bp = tmp.write("bp.txt", "2 3\n1\n2\n1\n2\n");
  const std::string prefix = tmp.file("hard");
  Result r = run_cli({"gen-hard", "--binpack", bp, "--out", prefix});
  REQUIRE(r.code == cli::kExitAnswered);
  CHECK(r.out.find("n=14 k=3 modulator: 0 1\n") != std::string::npos);
  auto meta = nlohmann::json::parse(slurp(prefix + ".meta"));
  CHECK(meta["expected"] == "YES");

  ::setenv("FAIRMSO_MAX_ORACLE_N", "20", 1);
  Result o = run_cli({"oracle", "--graph", prefix + ".graph", "--formula", prefix + ".mso", "--k", "3"});
  ::unsetenv("FAIRMSO_MAX_ORACLE_N");
  CHECK(o.code == cli::kExitAnswered);

  const std::string few = tmp.write("few.txt", "2 3\n1 1\n");
  Result w = run_cli({"gen-hard", "--dtuple", few, "--out", tmp.file("few")});
  CHECK(w.code == cli::kExitAnswered);
  CHECK(w.err.find("tuples survive") != std::string::npos);
  CHECK(run_cli({"gen-hard", "--binpack", bp, "--dtuple", few, "--out", prefix}).code == cli::kExitError);
}

TEST_CASE("small worked examples") {
  TempDir tmp;
  const std::string p3 = tmp.write("p3.graph", "3 2\n0 1\n1 2\n");
  Result r = run_cli({"solve", "--graph", p3, "--problem", "vc"});
  CHECK(r.code == cli::kExitAnswered);
  CHECK(r.out.find("k*=1 X={1}\n") != std::string::npos);
  CHECK(run_cli({"check", "--graph", p3, "--problem", "vc", "--set", "1", "--k", "1"}).code == cli::kExitAnswered);

  const std::string k2 = tmp.write("k2.graph", "2 1\n0 1\n");
  CHECK(run_cli({"solve", "--graph", k2, "--problem", "vc", "--k", "0"}).code == cli::kExitAbsent);
  CHECK(run_cli({"solve", "--graph", k2, "--problem", "vc", "--alpha", "4", "--gamma", "4"}).code == cli::kExitError);

  // a JSON witness goes back through check unchanged
  const std::string c6 = tmp.write("c6.graph", "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n");
  auto j = nlohmann::json::parse(run_cli({"solve", "--graph", c6, "--problem", "fvs", "--json"}).out);
  std::string set;
  for (int v : j["witness"]) set += (set.empty() ? "" : ",") + std::to_string(v);
  Result c = run_cli({"check", "--graph", c6, "--problem", "fvs", "--set", set, "--k",
                      std::to_string(j["k_star"].get<int>()), "--json"});
  CHECK(c.code == cli::kExitAnswered);
  auto cj = nlohmann::json::parse(c.out);
  CHECK(cj["fair_cost"] == j["k_star"]);
}
