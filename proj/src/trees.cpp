#include "ruletree/trees.hpp"

#include <algorithm>
#include <set>

namespace ruletree {

std::string to_string(ProblemKind c) {
  switch (c) {
    case ProblemKind::AR: return "AR";
    case ProblemKind::EAR: return "EAR";
    case ProblemKind::AD: return "AD";
    case ProblemKind::EAD: return "EAD";
    case ProblemKind::SR: return "SR";
    case ProblemKind::ESR: return "ESR";
  }
  return "?";
}

std::optional<ProblemKind> problem_from_string(std::string_view name) {
  if (name == "AR") return ProblemKind::AR;
  if (name == "EAR") return ProblemKind::EAR;
  if (name == "AD") return ProblemKind::AD;
  if (name == "EAD") return ProblemKind::EAD;
  if (name == "SR") return ProblemKind::SR;
  if (name == "ESR") return ProblemKind::ESR;
  return std::nullopt;
}

DecisionTree::NodePtr DecisionTree::terminal(std::vector<int> rules) {
  std::sort(rules.begin(), rules.end());
  rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
  auto n = std::make_unique<Node>();
  n->rules = std::move(rules);
  return n;
}

DecisionTree::NodePtr DecisionTree::working(AttrId attr,
                                            std::vector<Edge> edges) {
  auto n = std::make_unique<Node>();
  n->attr = attr;
  n->edges = std::move(edges);
  return n;
}

DecisionTree::NodePtr DecisionTree::clone_node(const Node& n) {
  auto out = std::make_unique<Node>();
  out->attr = n.attr;
  out->rules = n.rules;
  out->edges.reserve(n.edges.size());
  for (const auto& e : n.edges)
    out->edges.push_back({e.label, clone_node(*e.child)});
  return out;
}

DecisionTree DecisionTree::clone() const {
  return DecisionTree(variant_, clone_node(*root_));
}

bool operator==(const DecisionTree::Node& a, const DecisionTree::Node& b) {
  if (a.attr != b.attr || a.rules != b.rules || a.edges.size() != b.edges.size())
    return false;
  for (std::size_t i = 0; i < a.edges.size(); ++i) {
    if (a.edges[i].label != b.edges[i].label) return false;
    if (!(*a.edges[i].child == *b.edges[i].child)) return false;
  }
  return true;
}

std::vector<AttrId> CompletePath::attrs() const {
  std::set<AttrId> out;
  for (const auto& e : hops) out.insert(e.attr);
  return {out.begin(), out.end()};
}

std::string to_string(const CompletePath& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.hops.size(); ++i) {
    if (i > 0) out += ", ";
    out += to_string(p.hops[i]);
  }
  out += "] -> {";
  for (std::size_t i = 0; i < p.terminal_rules.size(); ++i) {
    if (i > 0) out += ",";
    out += "r" + std::to_string(p.terminal_rules[i] + 1);
  }
  return out + "}";
}

namespace {

void collect_paths(const DecisionTree::Node& n, std::vector<Equation>& hops,
                   std::vector<CompletePath>& out) {
  if (n.is_terminal()) {
    out.push_back({hops, n.rules});
    return;
  }
  for (const auto& e : n.edges) {
    hops.push_back({*n.attr, e.label});
    collect_paths(*e.child, hops, out);
    hops.pop_back();
  }
}

int node_depth(const DecisionTree::Node& n) {
  if (n.is_terminal()) return 0;
  int best = 0;
  for (const auto& e : n.edges) best = std::max(best, node_depth(*e.child));
  return best + 1;
}

std::string path_name(const std::vector<Equation>& hops) {
  if (hops.empty()) return "the root";
  std::string out = "node at ";
  for (std::size_t i = 0; i < hops.size(); ++i) {
    if (i > 0) out += ",";
    out += to_string(hops[i]);
  }
  return out;
}

bool check_node(const DecisionTree::Node& n, const RuleSystem& s,
                TreeVariant variant, std::vector<Equation>& hops,
                WellFormedResult& res) {
  if (n.is_terminal()) {
    for (int r : n.rules)
      if (r < 0 || r >= static_cast<int>(s.size())) {
        res = {false, path_name(hops) + ": rule index " + std::to_string(r) +
                          " out of range"};
        return false;
      }
    if (!std::is_sorted(n.rules.begin(), n.rules.end()) ||
        std::adjacent_find(n.rules.begin(), n.rules.end()) != n.rules.end()) {
      res = {false, path_name(hops) + ": terminal label is not a set"};
      return false;
    }
    return true;
  }
  const auto& p = s.profile();
  if (!p.has_attr(*n.attr)) {
    res = {false, path_name(hops) + ": attribute " + to_string(*n.attr) +
                      " is not in A(S)"};
    return false;
  }
  std::vector<Value> want = p.universe_of(*n.attr, variant == TreeVariant::E);
  std::vector<Value> got;
  for (const auto& e : n.edges) got.push_back(e.label);
  std::sort(got.begin(), got.end());
  if (std::adjacent_find(got.begin(), got.end()) != got.end()) {
    res = {false, path_name(hops) + ": duplicate edge label on " +
                      to_string(*n.attr)};
    return false;
  }
  if (got != want) {
    res = {false, path_name(hops) + ": edges on " + to_string(*n.attr) +
                      " do not cover " +
                      (variant == TreeVariant::E ? "EV_S" : "V_S") +
                      " exactly (" + std::to_string(got.size()) + " of " +
                      std::to_string(want.size()) + " labels)"};
    return false;
  }
  for (const auto& e : n.edges) {
    hops.push_back({*n.attr, e.label});
    bool ok = check_node(*e.child, s, variant, hops, res);
    hops.pop_back();
    if (!ok) return false;
  }
  return true;
}

}  // namespace

std::vector<CompletePath> complete_paths(const DecisionTree& t) {
  std::vector<CompletePath> out;
  std::vector<Equation> hops;
  collect_paths(t.root(), hops, out);
  return out;
}

int depth(const DecisionTree& t) { return node_depth(t.root()); }

WellFormedResult well_formed(const DecisionTree& t, const RuleSystem& s) {
  WellFormedResult res;
  std::vector<Equation> hops;
  check_node(t.root(), s, t.variant(), hops, res);
  return res;
}

namespace {

// K(r) ⊆ K(xi), with K(xi) taken as a set of equations.
bool rule_in_path(const DecisionRule& r, const std::set<Equation>& k) {
  for (const auto& e : r.lhs())
    if (!k.count(e)) return false;
  return true;
}

// K(r) ∪ K(xi) inconsistent: some attribute bound differently.
bool rule_dead_on_path(const DecisionRule& r, const std::set<Equation>& k) {
  for (const auto& e : r.lhs()) {
    auto it = k.lower_bound({e.attr, Value::integer(0)});
    for (; it != k.end() && it->attr == e.attr; ++it)
      if (it->value != e.value) return true;
  }
  return false;
}

}  // namespace

VerifyResult verify(const DecisionTree& t, const RuleSystem& s, ProblemKind c) {
  const bool want_e = is_extended(c);
  if (want_e != (t.variant() == TreeVariant::E))
    throw std::invalid_argument("verify: " + to_string(c) + " needs a" +
                                std::string(want_e ? "n e" : "n o") + "-tree");
  if (auto wf = well_formed(t, s); !wf)
    throw std::invalid_argument("verify: malformed tree: " + wf.diagnostic);

  for (const auto& path : complete_paths(t)) {
    if (!path.consistent()) continue;
    std::set<Equation> k(path.hops.begin(), path.hops.end());
    std::vector<char> in_tau(s.size(), 0);
    for (int i : path.terminal_rules) in_tau[i] = 1;

    for (int i : path.terminal_rules) {
      if (!rule_in_path(s[i], k))
        return {false,
                "rule r" + std::to_string(i + 1) +
                    " in the terminal label is not realizable on the path",
                path};
    }
    std::set<std::int64_t> tau_decisions;
    if (c == ProblemKind::AD || c == ProblemKind::EAD)
      for (int i : path.terminal_rules) tau_decisions.insert(s[i].rhs());

    for (std::size_t i = 0; i < s.size(); ++i) {
      if (in_tau[i]) continue;
      switch (c) {
        case ProblemKind::AR:
        case ProblemKind::EAR:
          if (!rule_dead_on_path(s[i], k))
            return {false,
                    "rule r" + std::to_string(i + 1) +
                        " stays consistent with the path but is not in the label",
                    path};
          break;
        case ProblemKind::AD:
        case ProblemKind::EAD:
          if (!tau_decisions.count(s[i].rhs()) && !rule_dead_on_path(s[i], k))
            return {false,
                    "rule r" + std::to_string(i + 1) +
                        " has an uncovered decision and stays consistent",
                    path};
          break;
        case ProblemKind::SR:
        case ProblemKind::ESR:
          if (path.terminal_rules.empty() && !rule_dead_on_path(s[i], k))
            return {false,
                    "empty label although rule r" + std::to_string(i + 1) +
                        " stays consistent with the path",
                    path};
          break;
      }
    }
  }
  return {};
}

namespace {

DecisionTree::NodePtr project_node(const DecisionTree::Node& n) {
  if (n.is_terminal()) return DecisionTree::clone_node(n);
  std::vector<DecisionTree::Edge> edges;
  for (const auto& e : n.edges)
    if (!e.label.is_star()) edges.push_back({e.label, project_node(*e.child)});
  return DecisionTree::working(*n.attr, std::move(edges));
}

}  // namespace

DecisionTree project_o(const DecisionTree& t) {
  if (t.variant() != TreeVariant::E)
    throw std::invalid_argument("project_o: expects an e-tree");
  return DecisionTree(TreeVariant::O, project_node(t.root()));
}

namespace {

struct RestrictCtx {
  const RuleSystem& s;
  const RuleSystem& s_alpha;
  const Assignment& alpha;
  bool extended;

  // Z -> Z_alpha as canonical indices into S_alpha.
  std::vector<int> map_rules(const std::vector<int>& z) const {
    std::vector<int> out;
    for (int i : z) {
      auto rr = restrict_rule(s[i], alpha);
      if (!rr) continue;
      auto idx = s_alpha.index_of(*rr);
      if (!idx)
        throw std::logic_error("restrict_tree: restricted rule missing from S_alpha");
      out.push_back(*idx);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  DecisionTree::NodePtr transform(const DecisionTree::Node& n) const {
    if (n.is_terminal()) return DecisionTree::terminal(map_rules(n.rules));
    AttrId a = *n.attr;
    if (s_alpha.profile().has_attr(a)) {
      auto keep = s_alpha.profile().universe_of(a, extended);
      std::vector<DecisionTree::Edge> edges;
      for (const auto& e : n.edges)
        if (std::binary_search(keep.begin(), keep.end(), e.label) ||
            (extended && e.label.is_star()))
          edges.push_back({e.label, transform(*e.child)});
      return DecisionTree::working(a, std::move(edges));
    }
    // Attribute dropped by the restriction: follow alpha's value there,
    // or the minimum number of V_S(a) when alpha does not mention it.
    Value pick = alpha.value_of(a).value_or(s.profile().values_of(a).front());
    for (const auto& e : n.edges)
      if (e.label == pick) return transform(*e.child);
    throw std::logic_error("restrict_tree: no edge for the selected value");
  }
};

}  // namespace

DecisionTree restrict_tree(const DecisionTree& t, const Assignment& alpha,
                           const RuleSystem& s) {
  const auto& p = s.profile();
  if (p.n == 0) throw std::invalid_argument("restrict_tree: n(S) must be positive");
  const bool extended = t.variant() == TreeVariant::E;
  for (const auto& [a, v] : alpha) {
    if (!p.has_attr(a))
      throw std::invalid_argument("restrict_tree: " + to_string(a) +
                                  " is not in A(S)");
    if (v.is_star()) {
      if (!extended)
        throw std::invalid_argument("restrict_tree: `*` needs an e-tree");
    } else {
      const auto& vs = p.values_of(a);
      if (!std::binary_search(vs.begin(), vs.end(), v))
        throw std::invalid_argument("restrict_tree: value " + to_string(v) +
                                    " not in V_S(" + to_string(a) + ")");
    }
  }
  if (auto wf = well_formed(t, s); !wf)
    throw std::invalid_argument("restrict_tree: malformed tree: " + wf.diagnostic);
  auto sa = restrict_system(s, alpha);
  if (!sa) throw std::invalid_argument("restrict_tree: S_alpha is empty");
  RestrictCtx ctx{s, *sa, alpha, extended};
  return DecisionTree(t.variant(), ctx.transform(t.root()));
}

namespace {

struct LiftCtx {
  const RuleSystem& reduced;
  const RuleSystem& full;

  std::vector<int> map_rules(const std::vector<int>& z) const {
    std::vector<int> out;
    for (int i : z) {
      auto idx = full.index_of(reduced[i]);
      if (!idx) throw std::logic_error("lift: reduced rule missing from S");
      out.push_back(*idx);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  DecisionTree::NodePtr transform(const DecisionTree::Node& n) const {
    if (n.is_terminal()) return DecisionTree::terminal(map_rules(n.rules));
    AttrId a = *n.attr;
    std::vector<DecisionTree::Edge> edges;
    const DecisionTree::Node* star_child = nullptr;
    for (const auto& e : n.edges) {
      if (e.label.is_star()) star_child = e.child.get();
      edges.push_back({e.label, transform(*e.child)});
    }
    // Values present in S but erased by the reduction behave like `*`
    // for every remaining rule; clone that subtree for each of them.
    const auto& full_vals = full.profile().values_of(a);
    const auto& red_vals = reduced.profile().values_of(a);
    for (Value v : full_vals) {
      if (std::binary_search(red_vals.begin(), red_vals.end(), v)) continue;
      if (!star_child) throw std::logic_error("lift: missing `*` edge");
      edges.push_back({v, transform(*star_child)});
    }
    return DecisionTree::working(a, std::move(edges));
  }
};

}  // namespace

DecisionTree lift_from_reduced(const DecisionTree& t, const RuleSystem& s,
                               ReduceMode mode) {
  if (t.variant() != TreeVariant::E)
    throw std::invalid_argument("lift_from_reduced: expects an e-tree");
  RuleSystem r = reduce(s, mode);
  ProblemKind c = mode == ReduceMode::SR ? ProblemKind::ESR : ProblemKind::EAD;
  if (auto v = verify(t, r, c); !v)
    throw std::invalid_argument("lift_from_reduced: input does not solve " +
                                to_string(c) + " over the reduced system: " +
                                v.reason);
  LiftCtx ctx{r, s};
  return DecisionTree(TreeVariant::E, ctx.transform(t.root()));
}

}  // namespace ruletree
