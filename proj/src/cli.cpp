#include "fairmso/cli.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fairmso/cvd.hpp"
#include "fairmso/error.hpp"
#include "fairmso/evaluate.hpp"
#include "fairmso/hardness.hpp"
#include "fairmso/oracle.hpp"
#include "fairmso/presets.hpp"
#include "fairmso/solver.hpp"

namespace fairmso::cli {

namespace {

using Json = nlohmann::ordered_json;

struct UsageError : Error {
  using Error::Error;
};

struct InputFlags {
  std::string graph;
  std::string formula;
  std::string problem;
  std::string sigma;
  std::string rho;
  bool json = false;
};

struct LoadedFormula {
  Formula phi;
  std::optional<Problem> problem;
  std::string label;
};

struct ResolvedModulator {
  std::vector<Vertex> vertices;
  std::string source;
};

struct Params {
  int alpha = 1;
  long long gamma = 1;
  bool heuristic = false;
  long long theoretical_alpha = 1;
  std::string theoretical_gamma;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<Vertex> parse_vertex_list(const std::string& text, const char* what) {
  std::vector<Vertex> out;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    try {
      std::size_t used = 0;
      int v = std::stoi(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw UsageError(std::string(what) + ": '" + token + "' is not a vertex index");
    }
    token.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '\t')
      flush();
    else
      token += c;
  }
  flush();
  return out;
}

std::string set_text(const std::vector<Vertex>& vs) {
  std::string s = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + std::to_string(vs[i]);
  return s + "}";
}

std::string list_text(const std::vector<Vertex>& vs) {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? " " : "") + std::to_string(vs[i]);
  return s;
}

void add_input_flags(CLI::App* cmd, InputFlags& f, bool needs_formula) {
  cmd->add_option("--graph", f.graph, "graph file")->required();
  if (!needs_formula) return;
  auto* formula = cmd->add_option("--formula", f.formula, "formula file");
  auto* problem = cmd->add_option("--problem", f.problem, "vc, fvs, oct, ds or sigma-rho");
  formula->excludes(problem);
  cmd->add_option("--sigma", f.sigma, "sigma-rho: sigma as a list or N");
  cmd->add_option("--rho", f.rho, "sigma-rho: rho as a list, N or coN:GAP");
}

LoadedFormula load_formula(const InputFlags& f) {
  if (f.formula.empty() == f.problem.empty()) throw UsageError("give exactly one of --formula and --problem");
  LoadedFormula lf;
  if (!f.formula.empty()) {
    lf.phi = parse_formula(read_text(f.formula));
    lf.label = f.formula;
    return lf;
  }
  ProblemKind kind = parse_problem_kind(f.problem);
  Problem p;
  switch (kind) {
    case ProblemKind::VC: p = Problem::vc(); break;
    case ProblemKind::FVS: p = Problem::fvs(); break;
    case ProblemKind::OCT: p = Problem::oct(); break;
    case ProblemKind::DS: p = Problem::ds(); break;
    case ProblemKind::SigmaRho:
      if (f.sigma.empty() || f.rho.empty()) throw UsageError("sigma-rho needs --sigma and --rho");
      p = Problem::sigma_rho(CountSet::parse(f.sigma), CountSet::parse(f.rho));
      break;
  }
  if (kind != ProblemKind::SigmaRho && (!f.sigma.empty() || !f.rho.empty()))
    throw UsageError("--sigma/--rho only apply to sigma-rho");
  lf.phi = preset_formula(p);
  lf.label = p.name();
  lf.problem = p;
  return lf;
}

ResolvedModulator resolve_modulator(const GraphDocument& doc, const std::string& flag) {
  if (!flag.empty()) return {parse_vertex_list(flag, "--modulator"), "flag"};
  if (doc.modulator) return {*doc.modulator, "file"};
  return {find_modulator_min(doc.graph).modulator, "cvd"};
}

Params choose_params(const LoadedFormula& lf, int d, std::optional<int> alpha, std::optional<long long> gamma) {
  FormulaMetrics m = metrics(lf.phi);
  ParamOverrides ov;
  if (lf.problem) {
    ov.alpha = alpha.value_or(recommended_alpha(preset_pattern_filter(*lf.problem)));
    ov.gamma = gamma.value_or(recommended_gamma(m));
  } else {
    ov.alpha = alpha;
    ov.gamma = gamma;
  }
  DerivedParams dp = derive_params(m, d, ov);
  const DerivedParams plain = derive_params(m, d);
  Params p;
  p.theoretical_alpha = plain.theoretical_alpha;
  p.theoretical_gamma = plain.gamma_text;
  if (dp.alpha > kMaxAutoAlpha && !ov.alpha)
    throw ResourceLimitError("theoretical alpha=" + std::to_string(dp.alpha) + " gamma=" + p.theoretical_gamma +
                             " exceed the limits; pass --alpha and --gamma");
  if ((!dp.gamma_exact || dp.gamma > kMaxAutoGamma) && !ov.gamma)
    throw ResourceLimitError("theoretical alpha=" + std::to_string(dp.theoretical_alpha) +
                             " gamma=" + p.theoretical_gamma + " exceed the limits; pass --alpha and --gamma");
  p.alpha = static_cast<int>(dp.alpha);
  p.gamma = dp.gamma;
  p.heuristic = dp.heuristic;
  return p;
}

Json stats_json(const SolveReport& r) {
  return {{"shapes_enumerated", r.shapes_enumerated},   {"shapes_evaluated", r.shapes_evaluated},
          {"shapes_satisfying", r.shapes_satisfying},   {"ilp_feasible", r.ilp_feasible},
          {"shapes_incoherent_skipped", r.shapes_incoherent_skipped},
          {"verification_failures", r.verification_failures}};
}

struct SolveFlags {
  InputFlags in;
  std::string modulator;
  std::optional<int> k;
  std::optional<int> alpha;
  std::optional<long long> gamma;
  bool dump_shapes = false;
  bool report_skipped = false;
  int jobs = 1;
  long long max_shapes = SolveConfig{}.max_shapes;
};

int cmd_solve(const SolveFlags& f, std::ostream& out) {
  GraphDocument doc = read_graph_file(f.in.graph);
  LoadedFormula lf = load_formula(f.in);
  ResolvedModulator rm = resolve_modulator(doc, f.modulator);
  ModulatedGraph mg = validate_modulator(doc.graph, rm.vertices);
  Params p = choose_params(lf, mg.modulator_size(), f.alpha, f.gamma);
  if (f.jobs < 1) throw UsageError("--jobs must be positive");

  SolveConfig cfg;
  cfg.alpha = p.alpha;
  cfg.gamma = p.gamma;
  if (lf.problem) cfg.filter = preset_pattern_filter(*lf.problem);
  cfg.coherence = f.report_skipped ? CoherencePolicy::ReportSkipped : CoherencePolicy::CoherentOnly;
  cfg.jobs = f.jobs;
  cfg.max_shapes = f.max_shapes;
  std::vector<std::pair<Shape, bool>> dumped;
  if (f.dump_shapes) cfg.on_shape = [&dumped](const Shape& s, bool v) { dumped.emplace_back(s, v); };

  SolveReport rep = f.k ? solve_decision(mg, lf.phi, *f.k, cfg) : solve_min(mg, lf.phi, cfg);
  // worker scheduling decides callback order
  std::sort(dumped.begin(), dumped.end());

  const bool found = rep.answer.has_value();
  std::vector<Vertex> witness = found ? rep.answer->x.members() : std::vector<Vertex>{};
  if (f.in.json) {
    Json j;
    j["command"] = "solve";
    j["formula"] = lf.label;
    j["modulator"] = rm.vertices;
    j["modulator_source"] = rm.source;
    j["alpha"] = p.alpha;
    j["gamma"] = p.gamma;
    j["heuristic_parameters"] = p.heuristic;
    j["theoretical_alpha"] = p.theoretical_alpha;
    j["theoretical_gamma"] = p.theoretical_gamma;
    j["mode"] = f.k ? "decision" : "minimize";
    if (f.k) j["k"] = *f.k;
    if (f.k)
      j["feasible"] = found;
    else
      j["k_star"] = rep.k_star ? Json(*rep.k_star) : Json(nullptr);
    j["witness"] = found ? Json(witness) : Json(nullptr);
    if (found) j["fair_cost"] = rep.answer->fair_cost;
    j["stats"] = stats_json(rep);
    if (f.dump_shapes) {
      Json shapes = Json::array();
      for (const auto& [s, v] : dumped) shapes.push_back({{"value", v}, {"shape", shape_text(s)}});
      j["shapes"] = shapes;
    }
    out << j.dump(2) << '\n';
  } else {
    if (f.dump_shapes) {
      for (const auto& [s, v] : dumped) out << "shape value=" << (v ? "true" : "false") << '\n' << shape_text(s);
      out << "--\n";
    }
    out << "modulator:" << (rm.vertices.empty() ? "" : " ") << list_text(rm.vertices) << " (" << rm.source << ")\n";
    out << "alpha=" << p.alpha << " gamma=" << p.gamma;
    if (p.heuristic)
      out << " heuristic-parameters (theoretical alpha=" << p.theoretical_alpha << " gamma=" << p.theoretical_gamma
          << ")";
    out << '\n';
    if (f.k)
      out << "k=" << *f.k << (found ? " X=" + set_text(witness) : " infeasible") << '\n';
    else
      out << "k*=" << (rep.k_star ? std::to_string(*rep.k_star) + " X=" + set_text(witness) : "none") << '\n';
    out << "shapes: enumerated=" << rep.shapes_enumerated << " evaluated=" << rep.shapes_evaluated
        << " satisfying=" << rep.shapes_satisfying << " ilp_feasible=" << rep.ilp_feasible
        << " incoherent_skipped=" << rep.shapes_incoherent_skipped
        << " verification_failures=" << rep.verification_failures << '\n';
  }
  return found ? kExitAnswered : kExitAbsent;
}

struct OracleFlags {
  InputFlags in;
  std::optional<int> k;
  int max_n = 0;
};

int cmd_oracle(const OracleFlags& f, std::ostream& out) {
  GraphDocument doc = read_graph_file(f.in.graph);
  LoadedFormula lf = load_formula(f.in);
  OracleConfig cfg;
  cfg.max_n = f.max_n;
  std::optional<VertexSet> hit;
  std::optional<int> k_star;
  long long checked = -1;
  if (f.k) {
    hit = oracle_decision(doc.graph, lf.phi, *f.k, cfg);
  } else {
    OracleResult r = oracle_min(doc.graph, lf.phi, cfg);
    k_star = r.k_star;
    checked = r.subsets_checked;
    if (!r.witnesses.empty()) hit = r.witnesses.front();
  }
  std::vector<Vertex> witness = hit ? hit->members() : std::vector<Vertex>{};
  if (f.in.json) {
    Json j;
    j["command"] = "oracle";
    j["formula"] = lf.label;
    j["mode"] = f.k ? "decision" : "minimize";
    if (f.k) {
      j["k"] = *f.k;
      j["feasible"] = hit.has_value();
    } else {
      j["k_star"] = k_star ? Json(*k_star) : Json(nullptr);
      j["subsets_checked"] = checked;
    }
    j["witness"] = hit ? Json(witness) : Json(nullptr);
    if (hit) j["fair_cost"] = fair_cost(doc.graph, *hit);
    out << j.dump(2) << '\n';
  } else if (f.k) {
    out << "k=" << *f.k << (hit ? " X=" + set_text(witness) : " infeasible") << '\n';
  } else {
    out << "k*=" << (k_star ? std::to_string(*k_star) + " X=" + set_text(witness) : "none") << '\n';
    out << "subsets_checked=" << checked << '\n';
  }
  return hit ? kExitAnswered : kExitAbsent;
}

struct CvdFlags {
  InputFlags in;
  std::optional<int> k;
};

int cmd_cvd(const CvdFlags& f, std::ostream& out) {
  Graph g = read_graph_file(f.in.graph).graph;
  std::optional<CvdResult> r;
  if (f.k) {
    if (*f.k < 0) throw UsageError("--k must be non-negative");
    r = find_modulator_exact(g, *f.k);
  } else {
    r = find_modulator_min(g);
  }
  if (f.in.json) {
    Json j;
    j["command"] = "cvd";
    if (f.k) j["k"] = *f.k;
    j["modulator"] = r ? Json(r->modulator) : Json(nullptr);
    out << j.dump(2) << '\n';
  } else if (r) {
    out << "modulator:" << (r->modulator.empty() ? "" : " ") << list_text(r->modulator) << '\n';
  } else {
    out << "no modulator of size <= " << *f.k << '\n';
  }
  return r ? kExitAnswered : kExitAbsent;
}

struct GenFlags {
  std::string binpack;
  std::string dtuple;
  std::string out;
};

int cmd_gen_hard(const GenFlags& f, std::ostream& out, std::ostream& err) {
  if (f.binpack.empty() == f.dtuple.empty()) throw UsageError("give exactly one of --binpack and --dtuple");
  std::optional<BinPackingInstance> bp;
  DTupleInstance dt;
  if (!f.binpack.empty()) {
    bp = parse_binpack(read_text(f.binpack));
    dt = binpack_to_dtuple(*bp);
  } else {
    dt = parse_dtuple(read_text(f.dtuple));
  }
  HardInstance inst = dtuple_to_fairfo(dt);
  write_hard_instance(f.out, inst, hard_meta_json(inst, dt, bp ? &*bp : nullptr));
  for (const auto& w : inst.warnings) err << "warning: " << w << '\n';
  out << "wrote " << f.out << ".graph " << f.out << ".mso " << f.out << ".meta\n";
  out << "n=" << inst.graph.size() << " k=" << inst.k << " modulator: " << list_text(inst.modulator) << '\n';
  return kExitAnswered;
}

struct CheckFlags {
  InputFlags in;
  std::string modulator;
  std::string set;
  std::optional<int> k;
  std::optional<int> alpha;
};

int cmd_check(const CheckFlags& f, std::ostream& out) {
  GraphDocument doc = read_graph_file(f.in.graph);
  LoadedFormula lf = load_formula(f.in);
  std::vector<Vertex> members = parse_vertex_list(f.set, "--set");
  for (Vertex v : members)
    if (v < 0 || v >= doc.graph.size()) throw DomainError("--set vertex " + std::to_string(v) + " out of range");
  VertexSet x = VertexSet::from_list(doc.graph.size(), members);
  ResolvedModulator rm = resolve_modulator(doc, f.modulator);
  ModulatedGraph mg = validate_modulator(doc.graph, rm.vertices);
  int alpha;
  if (f.alpha) {
    if (*f.alpha < 1 || *f.alpha % 2 == 0) throw DomainError("alpha must be a positive odd integer");
    alpha = *f.alpha;
  } else if (lf.problem) {
    alpha = recommended_alpha(preset_pattern_filter(*lf.problem));
  } else {
    alpha = static_cast<int>(derive_params(metrics(lf.phi), mg.modulator_size()).alpha);
  }

  const bool sat = evaluate(doc.graph, x, lf.phi);
  const int cost = fair_cost(doc.graph, x);
  const bool within = !f.k || cost <= *f.k;
  const bool compliant = is_compliant(mg, x, alpha);
  if (f.in.json) {
    Json j;
    j["command"] = "check";
    j["formula"] = lf.label;
    j["set"] = x.members();
    j["satisfies"] = sat;
    j["fair_cost"] = cost;
    if (f.k) j["k"] = *f.k;
    j["within_k"] = within;
    j["alpha"] = alpha;
    j["compliant"] = compliant;
    out << j.dump(2) << '\n';
  } else {
    out << "X=" << set_text(x.members()) << '\n';
    out << "satisfies: " << (sat ? "yes" : "no") << '\n';
    out << "fair_cost: " << cost;
    if (f.k) out << (within ? " <= " : " > ") << *f.k;
    out << '\n';
    out << "compliant (alpha=" << alpha << "): " << (compliant ? "yes" : "no") << '\n';
  }
  return sat && within ? kExitAnswered : kExitAbsent;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fair vertex set solver over cluster modulators", "fairmso"};
  app.require_subcommand(1);

  SolveFlags solve;
  auto* s = app.add_subcommand("solve", "minimize fair cost, or decide it with --k");
  add_input_flags(s, solve.in, true);
  s->add_option("--modulator", solve.modulator, "modulator vertices i1,i2,...");
  s->add_option("--k", solve.k, "decide fair cost <= k instead of minimizing");
  s->add_option("--alpha", solve.alpha, "odd clique-part cap");
  s->add_option("--gamma", solve.gamma, "shape multiplicity cap");
  s->add_option("--jobs", solve.jobs, "worker threads");
  s->add_option("--max-shapes", solve.max_shapes, "shape enumeration limit");
  s->add_flag("--dump-shapes", solve.dump_shapes, "print every evaluated shape");
  s->add_flag("--report-skipped", solve.report_skipped, "count incoherent shapes");
  s->add_flag("--json", solve.in.json, "JSON output");

  OracleFlags oracle;
  auto* o = app.add_subcommand("oracle", "brute-force minimum or decision");
  add_input_flags(o, oracle.in, true);
  o->add_option("--k", oracle.k, "decide fair cost <= k");
  o->add_option("--max-n", oracle.max_n, "vertex limit (default FAIRMSO_MAX_ORACLE_N or 15)");
  o->add_flag("--json", oracle.in.json, "JSON output");

  CvdFlags cvd;
  auto* c = app.add_subcommand("cvd", "cluster vertex deletion set");
  add_input_flags(c, cvd.in, false);
  c->add_option("--k", cvd.k, "size budget");
  c->add_flag("--json", cvd.in.json, "JSON output");

  GenFlags gen;
  auto* g = app.add_subcommand("gen-hard", "write a hardness instance");
  auto* bpf = g->add_option("--binpack", gen.binpack, "unary bin packing file");
  auto* dtf = g->add_option("--dtuple", gen.dtuple, "unary d-tuple file");
  bpf->excludes(dtf);
  g->add_option("--out", gen.out, "output prefix")->required();

  CheckFlags check;
  auto* k = app.add_subcommand("check", "verify a claimed witness");
  add_input_flags(k, check.in, true);
  k->add_option("--set", check.set, "witness vertices i1,i2,...")->required();
  k->add_option("--modulator", check.modulator, "modulator vertices i1,i2,...");
  k->add_option("--k", check.k, "fair cost budget");
  k->add_option("--alpha", check.alpha, "compliance cap");
  k->add_flag("--json", check.in.json, "JSON output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitAnswered : kExitError;
  }

  try {
    if (s->parsed()) return cmd_solve(solve, out);
    if (o->parsed()) return cmd_oracle(oracle, out);
    if (c->parsed()) return cmd_cvd(cvd, out);
    if (g->parsed()) return cmd_gen_hard(gen, out, err);
    if (k->parsed()) return cmd_check(check, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace fairmso::cli
