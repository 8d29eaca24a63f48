#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "fairmso/cli.hpp"
#include "fairmso/cvd.hpp"
#include "fairmso/error.hpp"
#include "fairmso/evaluate.hpp"
#include "fairmso/hardness.hpp"
#include "fairmso/oracle.hpp"
#include "fairmso/presets.hpp"
#include "fairmso/solver.hpp"

namespace py = pybind11;
using namespace fairmso;

namespace {

VertexSet to_set(const Graph& g, const std::vector<Vertex>& members) {
  for (Vertex v : members)
    if (v < 0 || v >= g.size()) throw DomainError("vertex " + std::to_string(v) + " out of range");
  return VertexSet::from_list(g.size(), members);
}

Problem make_problem(const std::string& name, const std::string& sigma, const std::string& rho) {
  ProblemKind kind = parse_problem_kind(name);
  if (kind == ProblemKind::SigmaRho) return Problem::sigma_rho(CountSet::parse(sigma), CountSet::parse(rho));
  return {kind, {}, {}};
}

py::object opt_int(const std::optional<int>& v) { return v ? py::object(py::int_(*v)) : py::object(py::none()); }

py::dict report_dict(const SolveReport& r, const ModulatedGraph& mg, const SolveConfig& cfg) {
  py::dict d;
  d["modulator"] = std::vector<Vertex>(mg.modulator().begin(), mg.modulator().end());
  d["alpha"] = cfg.alpha;
  d["gamma"] = cfg.gamma;
  d["k_star"] = opt_int(r.k_star);
  d["feasible"] = r.answer.has_value();
  d["witness"] = r.answer ? py::object(py::cast(r.answer->x.members())) : py::object(py::none());
  d["fair_cost"] = r.answer ? py::object(py::int_(r.answer->fair_cost)) : py::object(py::none());
  d["shapes_enumerated"] = r.shapes_enumerated;
  d["shapes_evaluated"] = r.shapes_evaluated;
  d["shapes_satisfying"] = r.shapes_satisfying;
  d["ilp_feasible"] = r.ilp_feasible;
  d["verification_failures"] = r.verification_failures;
  d["decisions"] = r.decisions;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fair vertex-set problems on graphs with a small cluster vertex deletion set";

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<ModulatorError>(m, "ModulatorError", error.ptr());
  py::register_exception<DomainError>(m, "DomainError", error.ptr());
  py::register_exception<ResourceLimitError>(m, "ResourceLimitError", error.ptr());

  py::class_<Graph>(m, "Graph")
      .def(py::init([](int n, const std::vector<Edge>& edges) { return Graph(n, edges); }), py::arg("n"),
           py::arg("edges") = std::vector<Edge>{})
      .def_static("parse", &load_graph, py::arg("text"))
      .def_property_readonly("n", &Graph::size)
      .def_property_readonly("m", &Graph::edge_count)
      .def("edges", &Graph::edges)
      .def("adjacent", &Graph::adjacent)
      .def("neighbors", [](const Graph& g, Vertex v) {
        if (v < 0 || v >= g.size()) throw DomainError("vertex " + std::to_string(v) + " out of range");
        auto s = g.neighbors(v);
        return std::vector<Vertex>(s.begin(), s.end());
      })
      .def("__len__", &Graph::size)
      .def("__eq__", &Graph::operator==)
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.size()) + ", m=" + std::to_string(g.edge_count()) + ")";
      })
      .def("to_text", [](const Graph& g, const std::vector<Vertex>& modulator) { return format_graph(g, modulator); },
           py::arg("modulator") = std::vector<Vertex>{});

  py::class_<Formula>(m, "Formula")
      .def_static("parse", &parse_formula, py::arg("text"))
      .def_static(
          "preset",
          [](const std::string& name, const std::string& sigma, const std::string& rho) {
            return preset_formula(make_problem(name, sigma, rho));
          },
          py::arg("problem"), py::arg("sigma") = "N", py::arg("rho") = "N")
      .def_property_readonly("q_v", [](const Formula& f) { return metrics(f).q_v; })
      .def_property_readonly("q_S", [](const Formula& f) { return metrics(f).q_S; })
      .def_property_readonly("is_fo", [](const Formula& f) { return metrics(f).is_fo; })
      .def("__str__", [](const Formula& f) { return to_string(f); });

  m.def("fair_cost", [](const Graph& g, const std::vector<Vertex>& x) { return fair_cost(g, to_set(g, x)); },
        py::arg("graph"), py::arg("x"));
  m.def(
      "evaluate", [](const Graph& g, const std::vector<Vertex>& x, const Formula& phi) {
        return evaluate(g, to_set(g, x), phi);
      },
      py::arg("graph"), py::arg("x"), py::arg("formula"));

  m.def(
      "find_modulator",
      [](const Graph& g, std::optional<int> k) -> std::optional<std::vector<Vertex>> {
        py::gil_scoped_release release;
        if (!k) return find_modulator_min(g).modulator;
        auto r = find_modulator_exact(g, *k);
        if (!r) return std::nullopt;
        return r->modulator;
      },
      py::arg("graph"), py::arg("k") = py::none());

  m.def(
      "solve",
      [](const Graph& g, const std::string& problem, std::optional<Formula> formula,
         std::optional<std::vector<Vertex>> modulator, std::optional<int> k, std::optional<int> alpha,
         std::optional<long long> gamma, const std::string& sigma, const std::string& rho, int jobs) {
        const std::vector<Vertex> mod = modulator ? *modulator : find_modulator_min(g).modulator;
        ModulatedGraph mg = validate_modulator(g, mod);
        SolveConfig cfg;
        cfg.jobs = jobs;
        Formula phi;
        if (formula) {
          phi = *formula;
          DerivedParams dp = derive_params(metrics(phi), mg.modulator_size(), {alpha, gamma});
          cfg.alpha = static_cast<int>(dp.alpha);
          cfg.gamma = dp.gamma;
        } else {
          Problem p = make_problem(problem, sigma, rho);
          phi = preset_formula(p);
          cfg.filter = preset_pattern_filter(p);
          cfg.alpha = alpha.value_or(recommended_alpha(cfg.filter));
          cfg.gamma = gamma.value_or(recommended_gamma(metrics(phi)));
          if (cfg.alpha < 1 || cfg.alpha % 2 == 0) throw DomainError("alpha must be a positive odd integer");
        }
        SolveReport r;
        {
          py::gil_scoped_release release;
          r = k ? solve_decision(mg, phi, *k, cfg) : solve_min(mg, phi, cfg);
        }
        return report_dict(r, mg, cfg);
      },
      py::arg("graph"), py::arg("problem") = "vc", py::arg("formula") = py::none(), py::arg("modulator") = py::none(),
      py::arg("k") = py::none(), py::arg("alpha") = py::none(), py::arg("gamma") = py::none(),
      py::arg("sigma") = "N", py::arg("rho") = "N", py::arg("jobs") = 1);

  m.def(
      "oracle",
      [](const Graph& g, const Formula& phi, std::optional<int> k, int max_n) {
        OracleConfig cfg;
        cfg.max_n = max_n;
        py::dict d;
        if (k) {
          std::optional<VertexSet> x;
          {
            py::gil_scoped_release release;
            x = oracle_decision(g, phi, *k, cfg);
          }
          d["feasible"] = x.has_value();
          d["witness"] = x ? py::object(py::cast(x->members())) : py::object(py::none());
          return d;
        }
        OracleResult r;
        {
          py::gil_scoped_release release;
          r = oracle_min(g, phi, cfg);
        }
        std::vector<std::vector<Vertex>> ws;
        for (const VertexSet& w : r.witnesses) ws.push_back(w.members());
        d["k_star"] = opt_int(r.k_star);
        d["witnesses"] = ws;
        d["subsets_checked"] = r.subsets_checked;
        return d;
      },
      py::arg("graph"), py::arg("formula"), py::arg("k") = py::none(), py::arg("max_n") = 0);

  m.def(
      "hard_instance",
      [](int bins, int capacity, const std::vector<int>& sizes) {
        BinPackingInstance bp{sizes, bins, capacity};
        DTupleInstance dt = binpack_to_dtuple(bp);
        HardInstance h = dtuple_to_fairfo(dt);
        py::dict d;
        d["graph"] = h.graph;
        d["formula"] = h.formula;
        d["k"] = h.k;
        d["modulator"] = h.modulator;
        d["expected"] = binpack_feasible(bp);
        d["warnings"] = h.warnings;
        return d;
      },
      py::arg("bins"), py::arg("capacity"), py::arg("sizes"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
