#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ruletree/audit.hpp"
#include "ruletree/bounds.hpp"
#include "ruletree/generators.hpp"
#include "ruletree/solver.hpp"
#include "ruletree/tree_io.hpp"

namespace py = pybind11;
using namespace ruletree;

namespace {

ProblemKind as_problem(const std::string& name) {
  auto c = problem_from_string(name);
  if (!c) throw py::value_error("unknown problem: " + name);
  return *c;
}

ReduceMode as_mode(const std::string& name) {
  if (name == "sr" || name == "SR") return ReduceMode::SR;
  if (name == "ad" || name == "AD") return ReduceMode::AD;
  throw py::value_error("unknown reduce mode: " + name);
}

py::dict profile_dict(const RuleSystem& s) {
  const auto& p = s.profile();
  py::dict values;
  for (const auto& [a, vs] : p.values) {
    py::list out;
    for (Value v : vs) out.append(v.as_int());
    values[py::int_(a.index)] = out;
  }
  py::list attrs;
  for (AttrId a : p.attrs) attrs.append(a.index);
  py::dict d;
  d["n"] = p.n;
  d["d"] = p.d;
  d["k"] = p.k;
  d["attrs"] = attrs;
  d["decisions"] = p.decisions;
  d["values"] = values;
  return d;
}

}  // namespace

PYBIND11_MODULE(ruletree, m) {
  m.doc() = "decision rule systems and the decision trees derived from them";

  py::register_exception<ParseError>(m, "DslParseError", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceededError", PyExc_RuntimeError);

  py::class_<RuleSystem>(m, "RuleSystem")
      .def("__len__", &RuleSystem::size)
      .def("__eq__", [](const RuleSystem& a, const RuleSystem& b) { return a == b; })
      .def("to_dsl", [](const RuleSystem& s) { return to_dsl(s); })
      .def("profile", &profile_dict)
      .def("digest", &system_digest_hex)
      .def("rule",
           [](const RuleSystem& s, int i) {
             if (i < 0 || i >= static_cast<int>(s.size()))
               throw py::index_error();
             py::list lhs;
             for (const auto& e : s[i].lhs())
               lhs.append(py::make_tuple(e.attr.index, e.value.as_int()));
             return py::make_tuple(lhs, s[i].rhs());
           })
      .def("__repr__", [](const RuleSystem& s) {
        return "<RuleSystem of " + std::to_string(s.size()) + " rules>";
      });

  py::class_<DecisionTree>(m, "DecisionTree")
      .def("depth", [](const DecisionTree& t) { return depth(t); })
      .def("variant",
           [](const DecisionTree& t) {
             return t.variant() == TreeVariant::E ? "e" : "o";
           })
      .def("to_json",
           [](const DecisionTree& t, const RuleSystem& s) {
             return tree_to_json(t, s);
           })
      .def("to_dot", [](const DecisionTree& t) { return tree_to_dot(t); });

  m.def("parse_system", [](const std::string& text) { return parse_system(text); });
  m.def("reduce",
        [](const RuleSystem& s, const std::string& mode) {
          return reduce(s, as_mode(mode));
        },
        py::arg("system"), py::arg("mode"));
  m.def("core_subsystem",
        [](const RuleSystem& s, const std::string& mode) {
          return core_subsystem(s, as_mode(mode));
        },
        py::arg("system"), py::arg("mode"));
  m.def("restrict",
        [](const RuleSystem& s, const std::string& alpha)
            -> std::optional<RuleSystem> {
          return restrict_system(s, parse_assignment(alpha));
        },
        py::arg("system"), py::arg("alpha"),
        "S_alpha, or None when the restriction is empty");
  m.def("is_complete",
        [](const RuleSystem& s) { return is_complete(s); });
  m.def("node_cover_number",
        [](const RuleSystem& s) { return node_cover_number(s); });

  m.def("solve",
        [](const RuleSystem& s, const std::string& problem,
           std::uint64_t max_states, double timeout) {
          SolveResult r = min_depth(s, as_problem(problem),
                                    SolveLimits{max_states, timeout});
          py::dict stats;
          stats["states_visited"] = r.stats.states_visited;
          stats["memo_hits"] = r.stats.memo_hits;
          stats["elapsed_seconds"] = r.stats.elapsed_seconds;
          return py::make_tuple(r.depth, std::move(r.tree), stats);
        },
        py::arg("system"), py::arg("problem"),
        py::arg("max_states") = SolveLimits{}.max_states,
        py::arg("timeout") = SolveLimits{}.timeout_seconds,
        "returns (depth, witness tree, stats)");

  m.def("verify",
        [](const DecisionTree& t, const RuleSystem& s, const std::string& problem) {
          VerifyResult v = verify(t, s, as_problem(problem));
          return py::make_tuple(v.ok, v.reason);
        },
        py::arg("tree"), py::arg("system"), py::arg("problem"));

  m.def("tree_from_json", [](const std::string& text) {
    LoadedTree lt = tree_from_json(text);
    return py::make_tuple(std::move(lt.tree), lt.system_digest);
  });

  m.def("project_o", [](const DecisionTree& t) { return project_o(t); });
  m.def("restrict_tree",
        [](const DecisionTree& t, const std::string& alpha, const RuleSystem& s) {
          return restrict_tree(t, parse_assignment(alpha), s);
        });
  m.def("lift_from_reduced",
        [](const DecisionTree& t, const RuleSystem& s, const std::string& mode) {
          return lift_from_reduced(t, s, as_mode(mode));
        });

  m.def("gen_family",
        [](const std::string& family, int n, int d, int k) {
          auto f = family_from_string(family);
          if (!f) throw py::value_error("unknown family: " + family);
          GeneratedSystem g = gen_family({*f, n, d, k});
          return py::make_tuple(
              std::move(g.system), std::move(g.tree),
              g.tree_problem ? py::cast(to_string(*g.tree_problem))
                             : py::none());
        },
        py::arg("family"), py::arg("n"), py::arg("d") = 1, py::arg("k") = 1);
  m.def("family_names", &family_names);
  m.def("random_system",
        [](int n, int d, int k, std::uint64_t seed, bool sr_reduced,
           bool ad_reduced, bool exact) {
          RandomSystemOptions opts;
          opts.sr_reduced = sr_reduced;
          opts.ad_reduced = ad_reduced;
          opts.force_exact_params = exact;
          return random_system(n, d, k, seed, opts);
        },
        py::arg("n"), py::arg("d"), py::arg("k"), py::arg("seed") = 0,
        py::arg("sr_reduced") = false, py::arg("ad_reduced") = false,
        py::arg("exact_params") = false);

  m.def("theorem_bounds",
        [](const std::string& problem, const std::string& extremum, bool reduced,
           int n, int d, int k) {
          BoundQuery q{as_problem(problem), reduced,
                       extremum == "max" ? Extremum::MAX : Extremum::MIN, n, d, k};
          BoundInterval b = theorem_bounds(q);
          py::dict out;
          out["lower"] = b.lower;
          out["upper"] = b.upper;
          out["exact"] = b.exact;
          out["case"] = b.case_label;
          return out;
        },
        py::arg("problem"), py::arg("extremum"), py::arg("reduced") = false,
        py::arg("n") = 1, py::arg("d") = 1, py::arg("k") = 1);

  m.def("run_audit",
        [](int max_n, int max_k, int trials, std::uint64_t seed,
           bool exhaustive_tiny) {
          AuditConfig cfg;
          cfg.max_n = max_n;
          cfg.max_k = max_k;
          cfg.trials = trials;
          cfg.seed = seed;
          cfg.exhaustive_tiny = exhaustive_tiny;
          AuditReport r = run_audit(cfg);
          return py::make_tuple(r.total_failed(), r.to_text());
        },
        py::arg("max_n") = 4, py::arg("max_k") = 2, py::arg("trials") = 10,
        py::arg("seed") = 1, py::arg("exhaustive_tiny") = false);
}
