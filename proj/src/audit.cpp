#include "ruletree/audit.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "ruletree/bounds.hpp"
#include "ruletree/generators.hpp"
#include "ruletree/solver.hpp"
#include "ruletree/tree_io.hpp"

namespace ruletree {

bool AuditConfig::has(ProblemKind c) const {
  return std::find(problems.begin(), problems.end(), c) != problems.end();
}

void AuditCheck::expect(bool ok, const std::string& what,
                        const std::string& artifact) {
  if (ok) {
    ++passed;
    return;
  }
  ++failed;
  std::string entry = what;
  if (!artifact.empty()) entry += "\n" + artifact;
  failures.push_back(std::move(entry));
}

int AuditReport::total_failed() const {
  int t = 0;
  for (const auto& c : checks) t += c.failed;
  return t;
}

std::string AuditReport::to_text() const {
  std::string out;
  for (const auto& c : checks) {
    out += std::string(c.failed == 0 ? "[PASS] " : "[FAIL] ") + c.name + ": " +
           std::to_string(c.passed) + " passed, " + std::to_string(c.failed) +
           " failed\n";
    for (const auto& f : c.failures) out += "  counterexample: " + f + "\n";
  }
  out += (total_failed() == 0 ? "audit: ok\n"
                              : "audit: " + std::to_string(total_failed()) +
                                    " failure(s)\n");
  return out;
}

namespace {

// The worked example systems used across the test surface.
namespace fx {
constexpr const char* kMixedThree =
    "a1=0 & a2=0 & a3=0 -> 3\na1=1 & a4=0 -> 4\na1=2 -> 5\n";
constexpr const char* kRealizablePair = "a1=0 & a2=0 -> 0\na1=0 & a3=1 -> 1\n";
constexpr const char* kNestedChain =
    "a1=0 & a2=0 & a3=0 -> 0\na1=0 & a2=0 -> 1\na1=0 -> 0\n";
constexpr const char* kBranchTriple =
    "a1=0 & a2=0 -> 0\na1=1 & a3=0 -> 0\na1=1 -> 0\n";
constexpr const char* kFourRules =
    "a1=0 & a2=0 -> 0\na1=1 & a3=0 -> 1\na1=1 -> 1\na1=1 -> 2\n";
constexpr const char* kChainReduce =
    "a1=0 & a2=0 & a3=0 -> 0\na1=0 & a2=0 -> 0\na1=0 -> 1\n";
constexpr const char* kTriangle =
    "a1=0 & a2=0 -> 0\na1=1 & a3=0 -> 0\na2=1 & a3=1 -> 0\n";
constexpr const char* kZeroLenMix = "a1=0 -> 0\na1=1 -> 1\n-> 1\n-> 2\n";
constexpr const char* kIncompleteSquare =
    "a1=0 & a2=0 -> 0\na1=1 & a2=0 -> 0\na1=0 & a2=1 -> 0\n";
}  // namespace fx

using Edges = std::vector<DecisionTree::Edge>;
using NodePtr = DecisionTree::NodePtr;

NodePtr leaf(std::vector<int> rules) {
  return DecisionTree::terminal(std::move(rules));
}

NodePtr on(int attr, Edges edges) {
  return DecisionTree::working(AttrId{attr}, std::move(edges));
}

DecisionTree::Edge edge(std::int64_t v, NodePtr child) {
  return {Value::integer(v), std::move(child)};
}

DecisionTree::Edge star_edge(NodePtr child) {
  return {Value::star(), std::move(child)};
}

// Fig-style o-tree solving AR over kBranchTriple.
DecisionTree branch_triple_o_tree() {
  Edges root;
  root.push_back(edge(0, on(2, [] {
                          Edges e;
                          e.push_back(edge(0, leaf({0})));
                          return e;
                        }())));
  root.push_back(edge(1, on(3, [] {
                          Edges e;
                          e.push_back(edge(0, leaf({1, 2})));
                          return e;
                        }())));
  return DecisionTree(TreeVariant::O, on(1, std::move(root)));
}

// Fig-style e-tree solving EAR over kBranchTriple.
DecisionTree branch_triple_e_tree() {
  Edges a2;
  a2.push_back(edge(0, leaf({0})));
  a2.push_back(star_edge(leaf({})));
  Edges a3;
  a3.push_back(edge(0, leaf({1, 2})));
  a3.push_back(star_edge(leaf({2})));
  Edges root;
  root.push_back(edge(0, on(2, std::move(a2))));
  root.push_back(edge(1, on(3, std::move(a3))));
  root.push_back(star_edge(leaf({})));
  return DecisionTree(TreeVariant::E, on(1, std::move(root)));
}

// The three o-trees over kFourRules solving AR, AD and SR.
DecisionTree four_rules_tree(ProblemKind c) {
  auto left = [] {
    Edges e;
    e.push_back(edge(0, leaf({0})));
    return on(2, std::move(e));
  };
  Edges root;
  root.push_back(edge(0, left()));
  switch (c) {
    case ProblemKind::AR: {
      Edges a3;
      a3.push_back(edge(0, leaf({1, 2, 3})));
      root.push_back(edge(1, on(3, std::move(a3))));
      break;
    }
    case ProblemKind::AD:
      root.push_back(edge(1, leaf({2, 3})));
      break;
    default:
      root.push_back(edge(1, leaf({2})));
      break;
  }
  return DecisionTree(TreeVariant::O, on(1, std::move(root)));
}

// AR-solving o-tree over kTriangle, querying a3 first.
DecisionTree triangle_tree() {
  auto a2_node = [](std::vector<int> at0, std::vector<int> at1) {
    Edges e;
    e.push_back(edge(0, leaf(std::move(at0))));
    e.push_back(edge(1, leaf(std::move(at1))));
    return on(2, std::move(e));
  };
  Edges low;  // a3 = 0
  low.push_back(edge(0, a2_node({0}, {})));
  low.push_back(edge(1, leaf({1})));
  Edges high;  // a3 = 1
  high.push_back(edge(0, a2_node({0}, {2})));
  high.push_back(edge(1, a2_node({}, {2})));
  Edges root;
  root.push_back(edge(0, on(1, std::move(low))));
  root.push_back(edge(1, on(1, std::move(high))));
  return DecisionTree(TreeVariant::O, on(3, std::move(root)));
}

// Is Z an acceptable terminal label for problem c once alpha is known?
bool valid_stop_label(const RuleSystem& s, const Assignment& alpha,
                      ProblemKind c, const std::vector<int>& z) {
  std::set<int> in_z(z.begin(), z.end());
  auto realizable = [&](const DecisionRule& r) {
    for (const auto& e : r.lhs())
      if (alpha.value_of(e.attr) != e.value) return false;
    return true;
  };
  auto dead = [&](const DecisionRule& r) {
    for (const auto& e : r.lhs()) {
      auto b = alpha.value_of(e.attr);
      if (b && *b != e.value) return true;
    }
    return false;
  };
  for (int i : z)
    if (!realizable(s[i])) return false;
  std::set<std::int64_t> covered;
  for (int i : z) covered.insert(s[i].rhs());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (in_z.count(static_cast<int>(i))) continue;
    switch (c) {
      case ProblemKind::AR:
      case ProblemKind::EAR:
        if (!dead(s[i])) return false;
        break;
      case ProblemKind::AD:
      case ProblemKind::EAD:
        if (!covered.count(s[i].rhs()) && !dead(s[i])) return false;
        break;
      case ProblemKind::SR:
      case ProblemKind::ESR:
        if (z.empty() && !dead(s[i])) return false;
        break;
    }
  }
  return true;
}

std::string dsl_artifact(const RuleSystem& s) {
  return "system:\n" + to_dsl(s);
}

Assignment total_tuple(const RuleSystem& s, const std::vector<std::int64_t>& vals) {
  Assignment t;
  const auto& attrs = s.profile().attrs;
  for (std::size_t i = 0; i < attrs.size(); ++i)
    t.set(attrs[i], Value::integer(vals[i]));
  return t;
}

}  // namespace

void audit_example_regression(AuditCheck& out) {
  out.name = "worked-example regression";

  {  // profile of the three-rule mixed system
    RuleSystem s = parse_system(fx::kMixedThree);
    const auto& p = s.profile();
    out.expect(p.n == 4 && p.d == 3 && p.k == 3, "mixed-three profile (n,d,k)",
               dsl_artifact(s));
    out.expect(p.decisions == std::vector<std::int64_t>({3, 4, 5}),
               "mixed-three decision set", dsl_artifact(s));
    out.expect(p.values_of(AttrId{1}) ==
                   std::vector<Value>({Value::integer(0), Value::integer(1),
                                       Value::integer(2)}),
               "mixed-three V_S(a1)", dsl_artifact(s));
    out.expect(p.ev_values_of(AttrId{1}).size() == 4, "mixed-three EV_S(a1)",
               dsl_artifact(s));
  }
  {  // realizability of the two-rule system at (0,0,0)
    RuleSystem s = parse_system(fx::kRealizablePair);
    Assignment t = total_tuple(s, {0, 0, 0});
    out.expect(is_realizable(s, s[0], t) && !is_realizable(s, s[1], t),
               "realizability on the pair system", dsl_artifact(s));
  }
  {  // accepted stop labels on the nested chain
    RuleSystem s = parse_system(fx::kNestedChain);
    Assignment t = total_tuple(s, {0, 0, 0});
    auto ar = terminal_label(s, t, ProblemKind::AR);
    out.expect(ar && *ar == std::vector<int>({0, 1, 2}),
               "nested-chain: AR label is the full rule set", dsl_artifact(s));
    out.expect(valid_stop_label(s, t, ProblemKind::AD, {1, 2}),
               "nested-chain: {r2,r3} is an AD solution", dsl_artifact(s));
    out.expect(valid_stop_label(s, t, ProblemKind::SR, {2}),
               "nested-chain: {r3} is an SR solution", dsl_artifact(s));
  }
  {  // the o-/e-tree pair over the branch triple
    RuleSystem s = parse_system(fx::kBranchTriple);
    DecisionTree o = branch_triple_o_tree();
    DecisionTree e = branch_triple_e_tree();
    out.expect(verify(o, s, ProblemKind::AR).ok, "branch-triple o-tree solves AR",
               dsl_artifact(s));
    out.expect(verify(e, s, ProblemKind::EAR).ok,
               "branch-triple e-tree solves EAR", dsl_artifact(s));
    bool found = false;
    for (const auto& path : complete_paths(o)) {
      if (path.terminal_rules != std::vector<int>({1, 2})) continue;
      found = path.attrs() == std::vector<AttrId>({AttrId{1}, AttrId{3}}) &&
              path.hops == std::vector<Equation>({{AttrId{1}, Value::integer(1)},
                                                  {AttrId{3}, Value::integer(0)}});
    }
    out.expect(found, "branch-triple path to {r2,r3} has K = {a1=1, a3=0}",
               dsl_artifact(s));
    DecisionTree projected = project_o(e);
    out.expect(verify(projected, s, ProblemKind::AR).ok,
               "projection of the e-tree solves AR", dsl_artifact(s));
  }
  {  // AR/AD/SR trees over the four-rule system
    RuleSystem s = parse_system(fx::kFourRules);
    for (ProblemKind c : {ProblemKind::AR, ProblemKind::AD, ProblemKind::SR})
      out.expect(verify(four_rules_tree(c), s, c).ok,
                 "four-rule tree solves " + to_string(c), dsl_artifact(s));
  }
  {  // reductions of the chain system (per the reduction definitions)
    RuleSystem s = parse_system(fx::kChainReduce);
    out.expect(reduce(s, ReduceMode::AD) ==
                   parse_system("a1=0 & a2=0 -> 0\na1=0 -> 1\n"),
               "chain system AD-reduction", dsl_artifact(s));
    out.expect(reduce(s, ReduceMode::SR) == parse_system("a1=0 -> 1\n"),
               "chain system SR-reduction", dsl_artifact(s));
  }
  {  // restriction of the triangle system and of its tree
    RuleSystem s = parse_system(fx::kTriangle);
    Assignment alpha = parse_assignment("a3=0");
    auto sa = restrict_system(s, alpha);
    out.expect(sa.has_value() &&
                   *sa == parse_system("a1=0 & a2=0 -> 0\na1=1 -> 0\n"),
               "triangle restriction at a3=0", dsl_artifact(s));
    out.expect(node_cover_number(s) == 2, "triangle cover number",
               dsl_artifact(s));
    DecisionTree t = triangle_tree();
    out.expect(verify(t, s, ProblemKind::AR).ok, "triangle tree solves AR",
               dsl_artifact(s));
    if (sa) {
      DecisionTree ta = restrict_tree(t, alpha, s);
      out.expect(verify(ta, *sa, ProblemKind::AR).ok,
                 "restricted triangle tree solves AR over S_alpha",
                 dsl_artifact(*sa));
      Edges want_a2;
      want_a2.push_back(edge(0, leaf({0})));
      Edges want_root;
      want_root.push_back(edge(0, on(2, std::move(want_a2))));
      want_root.push_back(edge(1, leaf({1})));
      DecisionTree want(TreeVariant::O, on(1, std::move(want_root)));
      out.expect(ta == want, "restricted triangle tree shape",
                 tree_to_json(ta, *sa));
    }
  }
  {  // core subsystems of the zero-length mix
    RuleSystem s = parse_system(fx::kZeroLenMix);
    out.expect(core_subsystem(s, ReduceMode::SR) == parse_system("-> 1\n-> 2\n"),
               "zero-length mix I_SR", dsl_artifact(s));
    out.expect(core_subsystem(s, ReduceMode::AD) ==
                   parse_system("a1=0 -> 0\n-> 1\n-> 2\n"),
               "zero-length mix I_AD", dsl_artifact(s));
  }
  {  // completeness behaviour
    RuleSystem inc = parse_system(fx::kIncompleteSquare);
    out.expect(!is_complete(inc), "square system is incomplete",
               dsl_artifact(inc));
    auto sa = restrict_system(inc, parse_assignment("a2=0"));
    out.expect(sa && *sa == parse_system("a1=0 -> 0\na1=1 -> 0\n") &&
                   is_complete(*sa),
               "square system restricted at a2=0 becomes complete",
               dsl_artifact(inc));
    RuleSystem chain = gen_family({Family::CompleteChain, 4, 1, 1}).system;
    out.expect(is_complete(chain) && node_cover_number(chain) == 4,
               "singleton chain is complete with cover n", dsl_artifact(chain));
    out.expect(min_depth(chain, ProblemKind::SR).depth == 1 &&
                   min_depth(chain, ProblemKind::AD).depth == 1,
               "singleton chain solves SR and AD in one query",
               dsl_artifact(chain));
  }
}

void audit_witness_families(const AuditConfig& cfg, AuditCheck& out) {
  out.name = "witness families";
  auto h = [&](const RuleSystem& s, ProblemKind c) {
    return min_depth(s, c).depth;
  };

  for (int n = 1; n <= cfg.max_n; ++n) {
    for (int k = 1; k <= cfg.max_k; ++k) {
      {  // d = 1 family: one query suffices for SR
        RuleSystem s = gen_family({Family::Lemma12D1, n, 1, k}).system;
        out.expect(h(s, ProblemKind::SR) == 1,
                   "d1 family h[SR] = 1 at n=" + std::to_string(n) +
                       " k=" + std::to_string(k),
                   dsl_artifact(s));
      }
      for (int d = 1; d <= n; ++d) {
        if (k == 1) {  // sliding-window family: h[SR] = d
          RuleSystem s = gen_family({Family::Lemma12K1, n, d, 1}).system;
          out.expect(h(s, ProblemKind::SR) == d,
                     "k1 family h[SR] = d at n=" + std::to_string(n) +
                         " d=" + std::to_string(d),
                     dsl_artifact(s));
        }
        if (k >= 2 && d >= 2 && n >= 2) {  // cyclic family: h[SR] = n
          RuleSystem s = gen_family({Family::Lemma12Cyclic, n, d, k}).system;
          int v = h(s, ProblemKind::SR);
          out.expect(v == n,
                     "cyclic family h[SR] = n at (" + std::to_string(n) + "," +
                         std::to_string(d) + "," + std::to_string(k) + ")",
                     dsl_artifact(s));
        }
        {  // union family: AD and ESR need every attribute
          RuleSystem s = gen_family({Family::Lemma13Union, n, d, k}).system;
          out.expect(h(s, ProblemKind::AD) >= n && h(s, ProblemKind::ESR) >= n,
                     "union family h[AD], h[ESR] >= n at (" + std::to_string(n) +
                         "," + std::to_string(d) + "," + std::to_string(k) + ")",
                     dsl_artifact(s));
        }
        {  // zero family: depth 0 for everything but AR/EAR
          RuleSystem s = gen_family({Family::Lemma16Zero, n, d, k}).system;
          bool ok = true;
          for (ProblemKind c : {ProblemKind::SR, ProblemKind::AD,
                                ProblemKind::ESR, ProblemKind::EAD})
            ok = ok && h(s, c) == 0;
          out.expect(ok,
                     "zero family depth 0 at (" + std::to_string(n) + "," +
                         std::to_string(d) + "," + std::to_string(k) + ")",
                     dsl_artifact(s));
        }
        if (d < n) {  // reduced family with one-query solutions
          RuleSystem s = gen_family({Family::Lemma17Reduced, n, d, k}).system;
          out.expect(h(s, ProblemKind::SR) == 1 && h(s, ProblemKind::AD) == 1,
                     "reduced family h[SR] = h[AD] = 1 at (" +
                         std::to_string(n) + "," + std::to_string(d) + "," +
                         std::to_string(k) + ")",
                     dsl_artifact(s));
        }
        if (d == n && n <= 4) {  // d = n reduced systems are worst case
          RuleSystem s = gen_family({Family::ParamWitness, n, n, k}).system;
          out.expect(h(s, ProblemKind::SR) == n,
                     "parameter witness h[SR] = n at d=n=" + std::to_string(n),
                     dsl_artifact(s));
        }
      }
    }
  }

  // every solved system obeys the trivial ceiling
  for (int n = 1; n <= cfg.max_n; ++n)
    for (int k = 1; k <= cfg.max_k; ++k) {
      RuleSystem s = gen_family({Family::Lemma13Union, n, std::min(2, n), k}).system;
      for (ProblemKind c : cfg.problems)
        out.expect(h(s, c) <= s.profile().n,
                   "h[" + to_string(c) + "] <= n on the union family",
                   dsl_artifact(s));
    }

  if (cfg.inject_fault) {
    // drop the rule that makes the zero family solvable in zero queries,
    // then insist on the original claim; must be reported
    RuleSystem broken = [] {
      RuleSystem s = gen_family({Family::Lemma16Zero, 3, 2, 2}).system;
      std::vector<DecisionRule> rules(s.rules().begin() + 1, s.rules().end());
      return RuleSystem(std::move(rules));
    }();
    out.expect(min_depth(broken, ProblemKind::SR).depth == 0,
               "injected fault: corrupted zero family no longer has depth 0",
               dsl_artifact(broken));
  }
}

namespace {

struct ConstructiveRanges {
  int max_n = 12;
  std::vector<int> block_ds = {2, 3};
  std::vector<int> block_ks = {2, 3};
  int rec_max_d = 3;
  int rec_max_k = 3;
};

void check_constructive(const ConstructiveRanges& r, AuditCheck& out) {
  for (int d : r.block_ds)
    for (int k : r.block_ks)
      for (int n = d; n <= r.max_n; ++n) {
        auto g = gen_family({Family::Lemma20Ear, n, d, k});
        double cap = d + static_cast<double>(n) / std::pow(k, d - 1);
        out.expect(g.tree && verify(*g.tree, g.system, ProblemKind::EAR).ok &&
                       depth(*g.tree) <= cap + 1e-9,
                   "block family tree solves EAR within d + n/k^(d-1) at (" +
                       std::to_string(n) + "," + std::to_string(d) + "," +
                       std::to_string(k) + ")",
                   dsl_artifact(g.system));
      }
  for (int d = 1; d <= r.rec_max_d; ++d)
    for (int k = 1; k <= r.rec_max_k; ++k)
      for (int n = d; n <= r.max_n; ++n) {
        auto g = gen_family({Family::Lemma23Esr, n, d, k});
        int cap = 2 * d * ceil_root_ratio(n, d, k);
        out.expect(g.tree && verify(*g.tree, g.system, ProblemKind::ESR).ok &&
                       depth(*g.tree) <= cap,
                   "recursive family tree solves ESR within 2d*ceil((nk)^(1/d)/k)"
                   " at (" +
                       std::to_string(n) + "," + std::to_string(d) + "," +
                       std::to_string(k) + ")",
                   dsl_artifact(g.system));
        out.expect(reduce(g.system, ReduceMode::SR) == g.system &&
                       g.system.profile().decisions ==
                           std::vector<std::int64_t>({0}),
                   "recursive family is SR-reduced with all decisions 0",
                   dsl_artifact(g.system));
      }
}

}  // namespace

void audit_constructive_bounds(AuditCheck& out) {
  out.name = "constructive upper bounds";
  check_constructive(ConstructiveRanges{}, out);
}

namespace {

Assignment random_alpha(const RuleSystem& s, std::mt19937_64& rng,
                        bool allow_star) {
  const auto& p = s.profile();
  Assignment alpha;
  std::uniform_int_distribution<int> coin(0, 1);
  for (AttrId a : p.attrs) {
    if (coin(rng) == 0) continue;
    const auto& vs = p.values_of(a);
    if (allow_star && std::uniform_int_distribution<int>(0, 2)(rng) == 0) {
      alpha.set(a, Value::star());
    } else {
      alpha.set(a, vs[std::uniform_int_distribution<std::size_t>(0, vs.size() - 1)(rng)]);
    }
  }
  return alpha;
}

}  // namespace

void audit_random_inequalities(const AuditConfig& cfg, AuditCheck& out) {
  out.name = "random-system inequalities";
  std::mt19937_64 rng(cfg.seed);
  auto has = [&](ProblemKind c) { return cfg.has(c); };

  for (int trial = 0; trial < cfg.trials; ++trial) {
    int n = std::uniform_int_distribution<int>(1, cfg.max_n)(rng);
    int d = std::uniform_int_distribution<int>(1, n)(rng);
    int k = std::uniform_int_distribution<int>(1, cfg.max_k)(rng);
    RuleSystem s = random_system(n, d, k, cfg.seed * 7919 + trial);
    const auto& p = s.profile();
    const std::string tag = " (trial " + std::to_string(trial) + ")";

    std::map<ProblemKind, SolveResult> res;
    for (ProblemKind c : cfg.problems) res.emplace(c, min_depth(s, c));
    auto h = [&](ProblemKind c) { return res.at(c).depth; };

    for (ProblemKind c : cfg.problems) {
      const auto& r = res.at(c);
      out.expect(verify(r.tree, s, c).ok && depth(r.tree) == r.depth,
                 "witness tree matches the reported depth for " + to_string(c) +
                     tag,
                 dsl_artifact(s));
      out.expect(r.depth <= p.n, "h[" + to_string(c) + "] <= n" + tag,
                 dsl_artifact(s));
    }

    // the solved-problem lattice
    if (has(ProblemKind::SR) && has(ProblemKind::AD))
      out.expect(h(ProblemKind::SR) <= h(ProblemKind::AD),
                 "h[SR] <= h[AD]" + tag, dsl_artifact(s));
    if (has(ProblemKind::AD) && has(ProblemKind::AR))
      out.expect(h(ProblemKind::AD) <= h(ProblemKind::AR),
                 "h[AD] <= h[AR]" + tag, dsl_artifact(s));
    if (has(ProblemKind::ESR) && has(ProblemKind::EAD))
      out.expect(h(ProblemKind::ESR) <= h(ProblemKind::EAD),
                 "h[ESR] <= h[EAD]" + tag, dsl_artifact(s));
    if (has(ProblemKind::EAD) && has(ProblemKind::EAR))
      out.expect(h(ProblemKind::EAD) <= h(ProblemKind::EAR),
                 "h[EAD] <= h[EAR]" + tag, dsl_artifact(s));
    if (has(ProblemKind::SR) && has(ProblemKind::ESR))
      out.expect(h(ProblemKind::SR) <= h(ProblemKind::ESR),
                 "h[SR] <= h[ESR]" + tag, dsl_artifact(s));
    if (has(ProblemKind::AD) && has(ProblemKind::EAD))
      out.expect(h(ProblemKind::AD) <= h(ProblemKind::EAD),
                 "h[AD] <= h[EAD]" + tag, dsl_artifact(s));
    if (has(ProblemKind::AR) && has(ProblemKind::EAR))
      out.expect(h(ProblemKind::AR) <= h(ProblemKind::EAR),
                 "h[AR] <= h[EAR]" + tag, dsl_artifact(s));

    // cover-based lower bounds
    int beta = node_cover_number(s);
    if (has(ProblemKind::AR))
      out.expect(h(ProblemKind::AR) >= beta, "h[AR] >= beta(S)" + tag,
                 dsl_artifact(s));
    if (has(ProblemKind::EAR))
      out.expect(h(ProblemKind::EAR) >= beta, "h[EAR] >= beta(S)" + tag,
                 dsl_artifact(s));
    if (has(ProblemKind::ESR))
      out.expect(h(ProblemKind::ESR) >=
                     node_cover_number(core_subsystem(s, ReduceMode::SR)),
                 "h[ESR] >= beta(I_SR)" + tag, dsl_artifact(s));
    if (has(ProblemKind::EAD))
      out.expect(h(ProblemKind::EAD) >=
                     node_cover_number(core_subsystem(s, ReduceMode::AD)),
                 "h[EAD] >= beta(I_AD)" + tag, dsl_artifact(s));
    if (!is_complete(s)) {
      if (has(ProblemKind::SR))
        out.expect(h(ProblemKind::SR) >= beta,
                   "incomplete: h[SR] >= beta(S)" + tag, dsl_artifact(s));
      if (has(ProblemKind::AD))
        out.expect(h(ProblemKind::AD) >= beta,
                   "incomplete: h[AD] >= beta(S)" + tag, dsl_artifact(s));
    }

    // length-based lower bounds
    const bool sr_reduced = reduce(s, ReduceMode::SR) == s;
    const bool ad_reduced = reduce(s, ReduceMode::AD) == s;
    if (has(ProblemKind::AR))
      out.expect(h(ProblemKind::AR) >= p.d, "h[AR] >= d(S)" + tag,
                 dsl_artifact(s));
    if (sr_reduced && has(ProblemKind::ESR))
      out.expect(h(ProblemKind::ESR) >= p.d, "SR-reduced: h[ESR] >= d(S)" + tag,
                 dsl_artifact(s));
    if (ad_reduced && has(ProblemKind::EAD))
      out.expect(h(ProblemKind::EAD) >= p.d, "AD-reduced: h[EAD] >= d(S)" + tag,
                 dsl_artifact(s));

    // reduction invariance of the extended problems
    if (has(ProblemKind::ESR))
      out.expect(h(ProblemKind::ESR) ==
                     min_depth(reduce(s, ReduceMode::SR), ProblemKind::ESR).depth,
                 "h[ESR] invariant under SR-reduction" + tag, dsl_artifact(s));
    if (has(ProblemKind::EAD))
      out.expect(h(ProblemKind::EAD) ==
                     min_depth(reduce(s, ReduceMode::AD), ProblemKind::EAD).depth,
                 "h[EAD] invariant under AD-reduction" + tag, dsl_artifact(s));

    // monotonicity under restriction
    for (int round = 0; round < 2 && p.n > 0; ++round) {
      bool star = round == 1;
      Assignment alpha = random_alpha(s, rng, star);
      if (alpha.empty()) continue;
      auto sa = restrict_system(s, alpha);
      if (!sa) continue;
      for (ProblemKind c : cfg.problems) {
        if (star != is_extended(c)) continue;
        out.expect(h(c) >= min_depth(*sa, c).depth,
                   "h[" + to_string(c) + "](S) >= h(S_alpha) for alpha=" +
                       to_string(alpha) + tag,
                   dsl_artifact(s));
      }
    }

    // monotonicity under taking subsystems (AR)
    if (has(ProblemKind::AR)) {
      for (int round = 0; round < 2; ++round) {
        std::vector<DecisionRule> sub;
        for (const auto& r : s.rules())
          if (std::uniform_int_distribution<int>(0, 1)(rng)) sub.push_back(r);
        if (sub.empty()) sub.push_back(s[0]);
        RuleSystem sp(std::move(sub));
        out.expect(h(ProblemKind::AR) >= min_depth(sp, ProblemKind::AR).depth,
                   "h[AR](S) >= h[AR](S')" + tag,
                   dsl_artifact(s) + "subsystem:\n" + to_dsl(sp));
      }
    }

    // the per-system forms of the class lower bounds
    if (has(ProblemKind::AR) && p.d >= 2 && p.k >= 2) {
      double lb = std::max<double>(p.d, p.n * (p.k - 1.0) / std::pow(p.k, p.d));
      out.expect(h(ProblemKind::AR) + 1e-9 >= lb,
                 "h[AR] >= max{d, n(k-1)/k^d}" + tag, dsl_artifact(s));
    }
    if (sr_reduced && has(ProblemKind::ESR) && p.n > 0) {
      double lb = std::pow(static_cast<double>(p.n) * p.k, 1.0 / p.d) / p.k - p.d;
      out.expect(h(ProblemKind::ESR) + 1e-9 >= lb,
                 "SR-reduced: h[ESR] >= (nk)^(1/d)/k - d" + tag,
                 dsl_artifact(s));
    }
    if (ad_reduced && has(ProblemKind::EAD) && p.n > 0) {
      double lb = std::pow(static_cast<double>(p.n) * p.k, 1.0 / p.d) / p.k - p.d;
      out.expect(h(ProblemKind::EAD) + 1e-9 >= lb,
                 "AD-reduced: h[EAD] >= (nk)^(1/d)/k - d" + tag,
                 dsl_artifact(s));
    }

    // solving AR also solves AD; solving AD also solves SR
    if (has(ProblemKind::AR)) {
      const auto& t = res.at(ProblemKind::AR).tree;
      out.expect(verify(t, s, ProblemKind::AD).ok && verify(t, s, ProblemKind::SR).ok,
                 "AR tree also solves AD and SR" + tag, dsl_artifact(s));
    }
    if (has(ProblemKind::EAR)) {
      const auto& t = res.at(ProblemKind::EAR).tree;
      out.expect(verify(t, s, ProblemKind::EAD).ok &&
                     verify(t, s, ProblemKind::ESR).ok,
                 "EAR tree also solves EAD and ESR" + tag, dsl_artifact(s));
    }
  }
}

void audit_tree_surgery(const AuditConfig& cfg, AuditCheck& out) {
  out.name = "tree surgery";
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  int processed = 0;
  for (int trial = 0; processed < cfg.trials; ++trial) {
    int n = std::uniform_int_distribution<int>(1, cfg.max_n)(rng);
    int d = std::uniform_int_distribution<int>(1, n)(rng);
    int k = std::uniform_int_distribution<int>(1, cfg.max_k)(rng);
    RuleSystem s = random_system(n, d, k, cfg.seed * 104729 + trial);
    const std::string tag = " (surgery trial " + std::to_string(trial) + ")";

    for (ProblemKind ec : {ProblemKind::EAR, ProblemKind::EAD, ProblemKind::ESR}) {
      SolveResult r = min_depth(s, ec);
      ProblemKind plain = ec == ProblemKind::EAR   ? ProblemKind::AR
                          : ec == ProblemKind::EAD ? ProblemKind::AD
                                                   : ProblemKind::SR;
      DecisionTree o = project_o(r.tree);
      out.expect(verify(o, s, plain).ok && depth(o) <= r.depth,
                 "projection preserves solving for " + to_string(ec) + tag,
                 dsl_artifact(s));
      ++processed;
    }

    SolveResult sr = min_depth(s, ProblemKind::SR);
    Assignment alpha = random_alpha(s, rng, false);
    if (!alpha.empty()) {
      if (auto sa = restrict_system(s, alpha)) {
        DecisionTree ta = restrict_tree(sr.tree, alpha, s);
        out.expect(verify(ta, *sa, ProblemKind::SR).ok &&
                       depth(ta) <= sr.depth,
                   "restriction preserves solving at alpha=" + to_string(alpha) +
                       tag,
                   dsl_artifact(s));
        ++processed;
      }
    }

    for (ReduceMode mode : {ReduceMode::SR, ReduceMode::AD}) {
      ProblemKind ec = mode == ReduceMode::SR ? ProblemKind::ESR : ProblemKind::EAD;
      RuleSystem r = reduce(s, mode);
      SolveResult rr = min_depth(r, ec);
      DecisionTree lifted = lift_from_reduced(rr.tree, s, mode);
      out.expect(verify(lifted, s, ec).ok && depth(lifted) == rr.depth,
                 "lift preserves solving and depth for " + to_string(ec) + tag,
                 dsl_artifact(s));
      ++processed;
    }
  }
}

void audit_exhaustive_tiny(AuditCheck& out) {
  out.name = "exhaustive tiny scan";

  // all rules over attributes {a1,a2}, values {0,1}, decisions {0,1}
  std::vector<DecisionRule> universe;
  for (std::int64_t rhs : {0, 1}) {
    universe.push_back(DecisionRule({}, rhs));
    for (int a : {1, 2})
      for (std::int64_t v : {0, 1})
        universe.push_back(DecisionRule({{AttrId{a}, Value::integer(v)}}, rhs));
    for (std::int64_t v1 : {0, 1})
      for (std::int64_t v2 : {0, 1})
        universe.push_back(DecisionRule(
            {{AttrId{1}, Value::integer(v1)}, {AttrId{2}, Value::integer(v2)}},
            rhs));
  }
  const int m = static_cast<int>(universe.size());  // 18

  struct Key {
    int n, d, k;
    auto operator<=>(const Key&) const = default;
  };
  struct ClassStats {
    std::map<ProblemKind, int> min_h, max_h;
    std::map<ProblemKind, int> reduced_min, reduced_max;  // SR-/AD-reduced class
    std::string witness_max_sr;
  };
  std::map<Key, ClassStats> stats;

  const std::vector<ProblemKind> all = {ProblemKind::AR, ProblemKind::EAR,
                                        ProblemKind::AD, ProblemKind::EAD,
                                        ProblemKind::SR, ProblemKind::ESR};
  auto bounds_for = [](ProblemKind c, bool reduced, Key key) {
    BoundQuery q{c, reduced, Extremum::MIN, key.n, key.d, key.k};
    BoundInterval lo = theorem_bounds(q);
    q.extremum = Extremum::MAX;
    BoundInterval hi = theorem_bounds(q);
    return std::pair{lo, hi};
  };
  std::map<std::tuple<int, int, int, ProblemKind, bool>,
           std::pair<BoundInterval, BoundInterval>>
      bound_cache;

  long long containment_violations = 0;
  std::string first_violation;

  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    std::vector<DecisionRule> rules;
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) rules.push_back(universe[i]);
    RuleSystem s(std::move(rules));
    const auto& p = s.profile();
    if (p.n == 0) continue;
    Key key{p.n, p.d, p.k};
    auto& cs = stats[key];
    const bool srr = reduce(s, ReduceMode::SR) == s;
    const bool adr = reduce(s, ReduceMode::AD) == s;

    for (ProblemKind c : all) {
      int h = min_depth(s, c).depth;
      auto cache_key = std::tuple{p.n, p.d, p.k, c, false};
      auto it = bound_cache.find(cache_key);
      if (it == bound_cache.end())
        it = bound_cache.emplace(cache_key, bounds_for(c, false, key)).first;
      const auto& [lo, hi] = it->second;
      if (!(h + 1e-9 >= lo.lower && h <= hi.upper + 1e-9)) {
        ++containment_violations;
        if (first_violation.empty())
          first_violation = "h[" + to_string(c) + "] = " + std::to_string(h) +
                            " outside " + to_string(lo) + ".." + to_string(hi) +
                            "\n" + to_dsl(s);
      }
      bool reduced_member = (srr && (c == ProblemKind::SR || c == ProblemKind::ESR)) ||
                            (adr && (c == ProblemKind::AD || c == ProblemKind::EAD));
      if (reduced_member) {
        auto rkey = std::tuple{p.n, p.d, p.k, c, true};
        auto rit = bound_cache.find(rkey);
        if (rit == bound_cache.end())
          rit = bound_cache.emplace(rkey, bounds_for(c, true, key)).first;
        const auto& [rlo, rhi] = rit->second;
        if (!(h + 1e-9 >= rlo.lower && h <= rhi.upper + 1e-9)) {
          ++containment_violations;
          if (first_violation.empty())
            first_violation = "reduced-class h[" + to_string(c) + "] = " +
                              std::to_string(h) + " outside " + to_string(rlo) +
                              ".." + to_string(rhi) + "\n" + to_dsl(s);
        }
        auto [ri, rinserted] = cs.reduced_min.emplace(c, h);
        if (!rinserted) ri->second = std::min(ri->second, h);
        auto [ra, rainserted] = cs.reduced_max.emplace(c, h);
        if (!rainserted) ra->second = std::max(ra->second, h);
      }
      auto [mi, minserted] = cs.min_h.emplace(c, h);
      if (!minserted) mi->second = std::min(mi->second, h);
      auto [ma, mainserted] = cs.max_h.emplace(c, h);
      if (!mainserted) ma->second = std::max(ma->second, h);
      if (c == ProblemKind::SR && ma->second == h) cs.witness_max_sr = to_dsl(s);
    }
  }

  out.expect(containment_violations == 0,
             "every tiny system's depth lies inside the class bounds",
             first_violation);

  for (const auto& [key, cs] : stats) {
    const std::string where = " in class (" + std::to_string(key.n) + "," +
                              std::to_string(key.d) + "," +
                              std::to_string(key.k) + ")";
    BoundInterval h_sr_max = theorem_bounds(
        {ProblemKind::SR, false, Extremum::MAX, key.n, key.d, key.k});
    out.expect(cs.max_h.at(ProblemKind::SR) == h_sr_max.lower,
               "max h[SR] attains the class maximum" + where,
               cs.witness_max_sr);
    for (ProblemKind c :
         {ProblemKind::SR, ProblemKind::AD, ProblemKind::ESR, ProblemKind::EAD})
      out.expect(cs.min_h.at(c) == 0,
                 "min h[" + to_string(c) + "] attains 0" + where);
    int reduced_expect = key.d == key.n ? key.n : 1;
    if (cs.reduced_min.count(ProblemKind::SR)) {
      out.expect(cs.reduced_min.at(ProblemKind::SR) == reduced_expect,
                 "reduced-class min h[SR] attains the class value" + where);
      out.expect(cs.reduced_max.at(ProblemKind::SR) == h_sr_max.lower,
                 "reduced-class max h[SR] attains the class maximum" + where);
    }
    if (cs.reduced_min.count(ProblemKind::AD))
      out.expect(cs.reduced_min.at(ProblemKind::AD) == reduced_expect,
                 "reduced-class min h[AD] attains the class value" + where);
  }
}

AuditReport run_audit(const AuditConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  AuditReport report;

  report.checks.emplace_back();
  audit_example_regression(report.checks.back());

  report.checks.emplace_back();
  audit_witness_families(cfg, report.checks.back());

  report.checks.emplace_back();
  audit_constructive_bounds(report.checks.back());

  report.checks.emplace_back();
  audit_random_inequalities(cfg, report.checks.back());

  report.checks.emplace_back();
  AuditConfig surgery_cfg = cfg;
  surgery_cfg.trials = std::max(10, cfg.trials / 2);
  audit_tree_surgery(surgery_cfg, report.checks.back());

  if (cfg.exhaustive_tiny) {
    report.checks.emplace_back();
    audit_exhaustive_tiny(report.checks.back());
  }

  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

}  // namespace ruletree
