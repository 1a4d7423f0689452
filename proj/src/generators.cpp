#include "ruletree/generators.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "ruletree/bounds.hpp"

namespace ruletree {

std::optional<Family> family_from_string(std::string_view name) {
  if (name == "lemma12_d1") return Family::Lemma12D1;
  if (name == "lemma12_k1") return Family::Lemma12K1;
  if (name == "lemma12_cyclic") return Family::Lemma12Cyclic;
  if (name == "lemma13_union") return Family::Lemma13Union;
  if (name == "lemma16_zero") return Family::Lemma16Zero;
  if (name == "lemma17_reduced") return Family::Lemma17Reduced;
  if (name == "lemma20_ear") return Family::Lemma20Ear;
  if (name == "lemma23_esr") return Family::Lemma23Esr;
  if (name == "complete_chain") return Family::CompleteChain;
  if (name == "long_pair") return Family::LongPair;
  if (name == "incomplete_3") return Family::Incomplete3;
  if (name == "param_witness") return Family::ParamWitness;
  return std::nullopt;
}

std::string to_string(Family f) {
  switch (f) {
    case Family::Lemma12D1: return "lemma12_d1";
    case Family::Lemma12K1: return "lemma12_k1";
    case Family::Lemma12Cyclic: return "lemma12_cyclic";
    case Family::Lemma13Union: return "lemma13_union";
    case Family::Lemma16Zero: return "lemma16_zero";
    case Family::Lemma17Reduced: return "lemma17_reduced";
    case Family::Lemma20Ear: return "lemma20_ear";
    case Family::Lemma23Esr: return "lemma23_esr";
    case Family::CompleteChain: return "complete_chain";
    case Family::LongPair: return "long_pair";
    case Family::Incomplete3: return "incomplete_3";
    case Family::ParamWitness: return "param_witness";
  }
  return "?";
}

std::vector<std::string> family_names() {
  return {"lemma12_d1",   "lemma12_k1",      "lemma12_cyclic", "lemma13_union",
          "lemma16_zero", "lemma17_reduced", "lemma20_ear",    "lemma23_esr",
          "complete_chain", "long_pair",     "incomplete_3",   "param_witness"};
}

namespace {

Equation eq(int attr, std::int64_t v) {
  return {AttrId{attr}, Value::integer(v)};
}

DecisionRule rule(std::vector<Equation> lhs, std::int64_t rhs) {
  return DecisionRule(std::move(lhs), rhs);
}

void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument("gen_family: " + what);
}

void expect_profile(const RuleSystem& s, int n, int d, int k,
                    const std::string& family) {
  const auto& p = s.profile();
  if (p.n != n || p.d != d || p.k != k)
    throw std::logic_error(family + ": produced profile (" +
                           std::to_string(p.n) + "," + std::to_string(p.d) +
                           "," + std::to_string(p.k) + "), wanted (" +
                           std::to_string(n) + "," + std::to_string(d) + "," +
                           std::to_string(k) + ")");
}

void expect_reduced(const RuleSystem& s, ReduceMode mode,
                    const std::string& family) {
  if (!(reduce(s, mode) == s))
    throw std::logic_error(family + ": system is not " +
                           (mode == ReduceMode::SR ? "SR" : "AD") + "-reduced");
}

// (a1=0)&...&(ad=0) -> 0, singleton tail, extra values on a1. The shared
// body of the parameter witness, lemma13, lemma16 and lemma17 shapes.
std::vector<DecisionRule> witness_body(int n, int d, int k,
                                       std::int64_t long_rhs,
                                       std::int64_t tail_rhs_base,
                                       bool tail_rhs_indexed,
                                       std::int64_t extra_rhs_base,
                                       bool extra_rhs_indexed) {
  std::vector<DecisionRule> rules;
  std::vector<Equation> head;
  for (int i = 1; i <= d; ++i) head.push_back(eq(i, 0));
  rules.push_back(rule(std::move(head), long_rhs));
  for (int i = d + 1; i <= n; ++i)
    rules.push_back(rule({eq(i, 0)}, tail_rhs_indexed ? i : tail_rhs_base));
  for (int j = 1; j <= k - 1; ++j)
    rules.push_back(rule({eq(1, j)}, extra_rhs_indexed ? extra_rhs_base + j : extra_rhs_base));
  return rules;
}

// Chain that queries `attrs` in order, branching over the extended value
// universe, and outputs the realizable set. Solves both EAR(S) and ESR(S).
DecisionTree::NodePtr query_chain(const RuleSystem& s,
                                  const std::vector<AttrId>& attrs,
                                  std::size_t i, Assignment& partial) {
  if (i == attrs.size()) {
    std::vector<int> realizable;
    for (std::size_t r = 0; r < s.size(); ++r) {
      bool ok = true;
      for (const auto& e : s[r].lhs())
        if (partial.value_of(e.attr) != e.value) {
          ok = false;
          break;
        }
      if (ok) realizable.push_back(static_cast<int>(r));
    }
    return DecisionTree::terminal(std::move(realizable));
  }
  std::vector<DecisionTree::Edge> edges;
  for (Value v : s.profile().ev_values_of(attrs[i])) {
    Assignment next = partial;
    next.set(attrs[i], v);
    edges.push_back({v, query_chain(s, attrs, i + 1, next)});
  }
  return DecisionTree::working(attrs[i], std::move(edges));
}

DecisionTree full_query_tree(const RuleSystem& s) {
  Assignment empty;
  return DecisionTree(TreeVariant::E,
                      query_chain(s, s.profile().attrs, 0, empty));
}

// ---- block construction with a certified EAR strategy ------------------

struct L20Builder {
  int n, d, k;
  std::vector<std::vector<int>> blocks;      // attr indices per prefix tuple
  std::vector<DecisionRule> rules;
  // rule index per (tuple id, attr) and per empty-block tuple id
  std::map<std::pair<int, int>, int> member_rule;
  std::map<int, int> prefix_rule;

  int tuples() const {
    int t = 1;
    for (int i = 0; i < d - 1; ++i) t *= k;
    return t;
  }

  std::vector<Equation> prefix_of(int id) const {
    std::vector<Equation> out;
    int rest = id;
    for (int i = d - 2; i >= 0; --i) {
      out.push_back(eq(i + 1, rest % k));
      rest /= k;
    }
    std::reverse(out.begin(), out.end());
    // decode gave most-significant first already after reverse; normalize
    std::sort(out.begin(), out.end(),
              [](const Equation& a, const Equation& b) { return a.attr < b.attr; });
    return out;
  }

  void build_rules() {
    const int m = tuples();
    blocks.assign(m, {});
    for (int i = d; i <= n; ++i) blocks[(i - d) % m].push_back(i);
    for (int id = 0; id < m; ++id) {
      auto prefix = prefix_of(id);
      if (blocks[id].empty()) {
        prefix_rule[id] = static_cast<int>(rules.size());
        rules.push_back(rule(prefix, 0));
        continue;
      }
      for (int attr : blocks[id]) {
        auto lhs = prefix;
        lhs.push_back(eq(attr, 0));
        member_rule[{id, attr}] = static_cast<int>(rules.size());
        rules.push_back(rule(std::move(lhs), 0));
      }
    }
  }

  // After the prefix a_1..a_{d-1} is known, walk the block, remembering
  // which members answered 0.
  DecisionTree::NodePtr block_chain(const RuleSystem& s, int id,
                                    std::size_t next, std::vector<int> zeros) {
    if (next == blocks[id].size())
      return DecisionTree::terminal(std::move(zeros));
    int attr = blocks[id][next];
    std::vector<DecisionTree::Edge> edges;
    for (Value v : s.profile().ev_values_of(AttrId{attr})) {
      auto z = zeros;
      if (!v.is_star() && v.as_int() == 0) z.push_back(member_rule.at({id, attr}));
      edges.push_back({v, block_chain(s, id, next + 1, std::move(z))});
    }
    return DecisionTree::working(AttrId{attr}, std::move(edges));
  }

  DecisionTree::NodePtr prefix_node(const RuleSystem& s, int level, int id) {
    if (level == d - 1) {
      if (blocks[id].empty())
        return DecisionTree::terminal({prefix_rule.at(id)});
      return block_chain(s, id, 0, {});
    }
    std::vector<DecisionTree::Edge> edges;
    for (Value v : s.profile().ev_values_of(AttrId{level + 1})) {
      if (v.is_star()) {
        // no rule survives a `*` answer inside the shared prefix
        edges.push_back({v, DecisionTree::terminal({})});
      } else {
        edges.push_back(
            {v, prefix_node(s, level + 1,
                            id * k + static_cast<int>(v.as_int()))});
      }
    }
    return DecisionTree::working(AttrId{level + 1}, std::move(edges));
  }
};

GeneratedSystem gen_lemma20(int n, int d, int k) {
  require(d >= 2 && k >= 2, "lemma20_ear needs d >= 2 and k >= 2");
  require(d <= n, "lemma20_ear needs d <= n");
  L20Builder b{n, d, k};
  b.build_rules();
  RuleSystem s(b.rules);
  expect_profile(s, n, d, k, "lemma20_ear");
  DecisionTree tree(TreeVariant::E, b.prefix_node(s, 0, 0));
  if (auto v = verify(tree, s, ProblemKind::EAR); !v)
    throw std::logic_error("lemma20_ear: strategy tree fails EAR: " + v.reason);
  return {std::move(s), std::move(tree), ProblemKind::EAR};
}

// ---- recursive construction with a certified ESR strategy ---------------

// Re-roots a tree built over `sub` into a host system: terminal indices go
// through `index_map`, and edges are completed from the subsystem's value
// universe to the host's, reusing the `*` subtree for foreign values.
DecisionTree::NodePtr embed_subtree(const DecisionTree::Node& node,
                                    const RuleSystem& sub,
                                    const SystemProfile& host,
                                    const std::vector<int>& index_map) {
  if (node.is_terminal()) {
    std::vector<int> mapped;
    for (int i : node.rules) mapped.push_back(index_map[i]);
    return DecisionTree::terminal(std::move(mapped));
  }
  AttrId a = *node.attr;
  std::vector<DecisionTree::Edge> edges;
  const DecisionTree::Node* star_child = nullptr;
  for (const auto& e : node.edges) {
    if (e.label.is_star()) star_child = e.child.get();
    edges.push_back({e.label, embed_subtree(*e.child, sub, host, index_map)});
  }
  const auto& sub_vals = sub.profile().values_of(a);
  for (Value v : host.values_of(a)) {
    if (std::binary_search(sub_vals.begin(), sub_vals.end(), v)) continue;
    if (!star_child) throw std::logic_error("embed_subtree: missing `*` edge");
    edges.push_back({v, embed_subtree(*star_child, sub, host, index_map)});
  }
  return DecisionTree::working(a, std::move(edges));
}

struct L23Result {
  std::vector<DecisionRule> rules;
  DecisionTree tree;
};

// Builds an SR-reduced all-decisions-zero system over exactly the given
// attributes with d(S) = depth_budget and k(S) = k, together with an
// e-tree solving ESR(S) within 2 * depth_budget * ceil((nk)^(1/depth) / k).
L23Result l23_build(const std::vector<int>& attrs, int depth_budget, int k) {
  const int n = static_cast<int>(attrs.size());
  const int dd = depth_budget;

  auto finish_flat = [&](std::vector<DecisionRule> rules) {
    RuleSystem s(rules);
    expect_profile(s, n, dd, k, "lemma23_esr (component)");
    return L23Result{std::move(rules), full_query_tree(s)};
  };

  if (dd == 1) {
    std::vector<DecisionRule> rules;
    for (int j = 0; j < k; ++j) rules.push_back(rule({eq(attrs[0], j)}, 0));
    for (int i = 1; i < n; ++i) rules.push_back(rule({eq(attrs[i], 0)}, 0));
    return finish_flat(std::move(rules));
  }

  const int t = ceil_root_ratio(n, dd, k);
  if (2 * dd * t >= n) {
    std::vector<DecisionRule> rules;
    std::vector<Equation> head;
    for (int i = 0; i < dd; ++i) head.push_back(eq(attrs[i], 0));
    rules.push_back(rule(std::move(head), 0));
    for (int j = 1; j < k; ++j) rules.push_back(rule({eq(attrs[0], j)}, 0));
    for (int i = dd; i < n; ++i) rules.push_back(rule({eq(attrs[i], 0)}, 0));
    return finish_flat(std::move(rules));
  }

  // two-phase case: probe the first 2t attributes, then hand over to one
  // of 2tk components
  const int d = dd - 1;
  const int groups = 2 * t * k;
  const int left_total = n - 2 * t;
  const int cap = (left_total + groups - 1) / groups;

  std::vector<int> sizes(groups + 1, 0);  // sizes[0] unused (the probe block)
  int left = left_total;
  sizes[1] = cap < d ? d : cap;
  left -= sizes[1];
  for (int i = 2; i <= groups && left > 0; ++i) {
    sizes[i] = std::min(cap, left);
    left -= sizes[i];
  }
  if (left != 0) throw std::logic_error("lemma23_esr: block sizing failed");

  std::vector<int> probe(attrs.begin(), attrs.begin() + 2 * t);
  std::vector<std::vector<int>> groups_attrs(groups + 1);
  int next = 2 * t;
  for (int i = 1; i <= groups; ++i) {
    if (sizes[i] == 0) {
      groups_attrs[i] = {attrs.back()};  // empty slice: reuse the last attr
    } else {
      groups_attrs[i].assign(attrs.begin() + next, attrs.begin() + next + sizes[i]);
      next += sizes[i];
    }
  }

  // component systems; parts[0] is a placeholder for the probe block
  std::vector<L23Result> parts;
  parts.reserve(groups + 1);
  parts.push_back({{}, DecisionTree(TreeVariant::E, DecisionTree::terminal({}))});
  for (int i = 1; i <= groups; ++i) {
    const auto& ga = groups_attrs[i];
    if (static_cast<int>(ga.size()) > d) {
      parts.push_back(l23_build(ga, d, k));
    } else {
      std::vector<DecisionRule> rules;
      std::vector<Equation> head;
      for (int a : ga) head.push_back(eq(a, 0));
      rules.push_back(rule(std::move(head), 0));
      for (int j = 1; j < k; ++j) rules.push_back(rule({eq(ga[0], j)}, 0));
      RuleSystem s(rules);
      parts.push_back({std::move(rules), full_query_tree(s)});
    }
  }

  // assemble: pair rules over the probe block, then the prefixed components
  std::vector<DecisionRule> rules;
  std::map<std::pair<std::pair<int, int>, std::pair<int, int>>, int> pair_index;
  for (int i = 0; i < 2 * t; ++i)
    for (int j = i + 1; j < 2 * t; ++j)
      for (int di = 0; di < k; ++di)
        for (int sj = 0; sj < k; ++sj) {
          pair_index[{{i, di}, {j, sj}}] = static_cast<int>(rules.size());
          rules.push_back(rule({eq(probe[i], di), eq(probe[j], sj)}, 0));
        }
  // component rule indices in the assembled system, per (probe pos, value)
  std::vector<std::vector<std::vector<int>>> part_map(
      2 * t, std::vector<std::vector<int>>(k));
  for (int j = 0; j < 2 * t; ++j)
    for (int sigma = 0; sigma < k; ++sigma) {
      int i = k * j + sigma + 1;
      for (const auto& r : parts[i].rules) {
        auto lhs = r.lhs();
        lhs.push_back(eq(probe[j], sigma));
        part_map[j][sigma].push_back(static_cast<int>(rules.size()));
        rules.push_back(rule(std::move(lhs), 0));
      }
    }

  RuleSystem s(rules);
  if (s.size() != rules.size())
    throw std::logic_error("lemma23_esr: assembled rules are not distinct");
  expect_profile(s, n, dd, k, "lemma23_esr (component)");

  // the strategy: query the whole probe block first, then decide
  std::vector<std::optional<int>> answers(probe.size());
  std::function<DecisionTree::NodePtr(std::size_t)> walk =
      [&](std::size_t pos) -> DecisionTree::NodePtr {
    if (pos < probe.size()) {
      std::vector<DecisionTree::Edge> edges;
      for (Value v : s.profile().ev_values_of(AttrId{probe[pos]})) {
        answers[pos] = v.is_star() ? std::nullopt
                                   : std::optional<int>(static_cast<int>(v.as_int()));
        edges.push_back({v, walk(pos + 1)});
      }
      answers[pos] = std::nullopt;
      return DecisionTree::working(AttrId{probe[pos]}, std::move(edges));
    }
    std::vector<int> known;
    for (std::size_t i = 0; i < answers.size(); ++i)
      if (answers[i]) known.push_back(static_cast<int>(i));
    if (known.empty()) return DecisionTree::terminal({});
    if (known.size() >= 2) {
      int i = known[0], j = known[1];
      return DecisionTree::terminal(
          {pair_index.at({{i, *answers[i]}, {j, *answers[j]}})});
    }
    int j = known[0], sigma = *answers[j];
    const auto& part = parts[k * j + sigma + 1];
    RuleSystem part_system(part.rules);
    return embed_subtree(part.tree.root(), part_system, s.profile(),
                         part_map[j][sigma]);
  };

  DecisionTree tree(TreeVariant::E, walk(0));
  return {std::move(rules), std::move(tree)};
}

GeneratedSystem gen_lemma23(int n, int d, int k) {
  std::vector<int> attrs(n);
  for (int i = 0; i < n; ++i) attrs[i] = i + 1;
  L23Result r = l23_build(attrs, d, k);
  RuleSystem s(r.rules);
  expect_profile(s, n, d, k, "lemma23_esr");
  expect_reduced(s, ReduceMode::SR, "lemma23_esr");
  if (auto v = verify(r.tree, s, ProblemKind::ESR); !v)
    throw std::logic_error("lemma23_esr: strategy tree fails ESR: " + v.reason);
  const int bound = 2 * d * ceil_root_ratio(n, d, k);
  if (depth(r.tree) > bound)
    throw std::logic_error("lemma23_esr: tree depth " +
                           std::to_string(depth(r.tree)) + " exceeds " +
                           std::to_string(bound));
  return {std::move(s), std::move(r.tree), ProblemKind::ESR};
}

}  // namespace

GeneratedSystem gen_family(const FamilySpec& spec) {
  const int n = spec.n, d = spec.d, k = spec.k;
  require(n >= 1, "n must be positive");

  switch (spec.family) {
    case Family::Lemma12D1: {
      require(d == 1, "lemma12_d1 fixes d = 1");
      require(k >= 1, "k must be positive");
      std::vector<DecisionRule> rules;
      for (int j = 0; j < k; ++j) rules.push_back(rule({eq(1, j)}, 0));
      for (int i = 2; i <= n; ++i) rules.push_back(rule({eq(i, 0)}, 0));
      RuleSystem s(std::move(rules));
      expect_profile(s, n, 1, k, "lemma12_d1");
      expect_reduced(s, ReduceMode::SR, "lemma12_d1");
      return {std::move(s), std::nullopt, std::nullopt};
    }
    case Family::Lemma12K1: {
      require(k == 1, "lemma12_k1 fixes k = 1");
      require(d >= 1 && d <= n, "lemma12_k1 needs 1 <= d <= n");
      std::vector<DecisionRule> rules;
      for (int i = 1; i <= n - d + 1; ++i) {
        std::vector<Equation> lhs;
        for (int j = i; j <= i + d - 1; ++j) lhs.push_back(eq(j, 0));
        rules.push_back(rule(std::move(lhs), i));
      }
      RuleSystem s(std::move(rules));
      expect_profile(s, n, d, 1, "lemma12_k1");
      expect_reduced(s, ReduceMode::SR, "lemma12_k1");
      return {std::move(s), std::nullopt, std::nullopt};
    }
    case Family::Lemma12Cyclic: {
      require(d >= 2 && k >= 2, "lemma12_cyclic needs d >= 2 and k >= 2");
      require(d <= n, "lemma12_cyclic needs d <= n");
      std::vector<DecisionRule> rules;
      std::vector<Equation> head;
      for (int i = 1; i <= d; ++i) head.push_back(eq(i, 1));
      rules.push_back(rule(std::move(head), 0));
      for (int i = 1; i <= n - 1; ++i)
        rules.push_back(rule({eq(i, 1), eq(i + 1, 0)}, i));
      rules.push_back(rule({eq(n, 1), eq(1, 0)}, n));
      for (int j = 2; j <= k - 1; ++j) rules.push_back(rule({eq(1, j)}, 0));
      RuleSystem s(std::move(rules));
      expect_profile(s, n, d, k, "lemma12_cyclic");
      expect_reduced(s, ReduceMode::SR, "lemma12_cyclic");
      return {std::move(s), std::nullopt, std::nullopt};
    }
    case Family::Lemma13Union: {
      require(d <= n, "lemma13_union needs d <= n");
      RuleSystem s(witness_body(n, d, k, /*long_rhs=*/0, 0,
                                /*tail_rhs_indexed=*/true, n,
                                /*extra_rhs_indexed=*/true));
      expect_profile(s, n, d, k, "lemma13_union");
      expect_reduced(s, ReduceMode::SR, "lemma13_union");
      expect_reduced(s, ReduceMode::AD, "lemma13_union");
      return {std::move(s), std::nullopt, std::nullopt};
    }
    case Family::Lemma16Zero: {
      require(d <= n, "lemma16_zero needs d <= n");
      auto rules = witness_body(n, d, k, 0, 0, false, 0, false);
      rules.insert(rules.begin(), rule({}, 0));
      RuleSystem s(std::move(rules));
      expect_profile(s, n, d, k, "lemma16_zero");
      return {std::move(s), std::nullopt, std::nullopt};
    }
    case Family::Lemma17Reduced: {
      require(d < n, "lemma17_reduced needs d < n");
      RuleSystem s(witness_body(n, d, k, 0, 0, false, 0, false));
      expect_profile(s, n, d, k, "lemma17_reduced");
      expect_reduced(s, ReduceMode::SR, "lemma17_reduced");
      expect_reduced(s, ReduceMode::AD, "lemma17_reduced");
      return {std::move(s), std::nullopt, std::nullopt};
    }
    case Family::Lemma20Ear:
      return gen_lemma20(n, d, k);
    case Family::Lemma23Esr: {
      require(d <= n, "lemma23_esr needs d <= n");
      require(k >= 1, "k must be positive");
      return gen_lemma23(n, d, k);
    }
    case Family::CompleteChain: {
      std::vector<DecisionRule> rules;
      for (int i = 1; i <= n; ++i) rules.push_back(rule({eq(i, 0)}, 0));
      RuleSystem s(std::move(rules));
      expect_profile(s, n, 1, 1, "complete_chain");
      return {std::move(s), std::nullopt, std::nullopt};
    }
    case Family::LongPair: {
      require(n >= 2, "long_pair needs n >= 2");
      std::vector<Equation> lhs;
      for (int i = 2; i <= n; ++i) lhs.push_back(eq(i, 0));
      RuleSystem s({rule({eq(1, 0)}, 0), rule(std::move(lhs), 0)});
      expect_profile(s, n, n - 1, 1, "long_pair");
      expect_reduced(s, ReduceMode::SR, "long_pair");
      expect_reduced(s, ReduceMode::AD, "long_pair");
      return {std::move(s), std::nullopt, std::nullopt};
    }
    case Family::Incomplete3: {
      RuleSystem s({rule({eq(1, 0), eq(2, 0)}, 0), rule({eq(1, 1), eq(2, 0)}, 0),
                    rule({eq(1, 0), eq(2, 1)}, 0)});
      return {std::move(s), std::nullopt, std::nullopt};
    }
    case Family::ParamWitness: {
      require(d <= n, "param_witness needs d <= n");
      RuleSystem s(witness_body(n, d, k, 0, 0, false, 0, false));
      expect_profile(s, n, d, k, "param_witness");
      expect_reduced(s, ReduceMode::SR, "param_witness");
      expect_reduced(s, ReduceMode::AD, "param_witness");
      return {std::move(s), std::nullopt, std::nullopt};
    }
  }
  throw std::logic_error("unreachable");
}

RuleSystem random_system(int n, int d, int k, std::uint64_t seed,
                         const RandomSystemOptions& opts) {
  if (n < 1 || d < 1 || k < 1)
    throw std::invalid_argument("random_system: n, d, k must be positive");
  if (d > n) throw std::invalid_argument("random_system: d must not exceed n");

  std::mt19937_64 rng(seed);
  const bool reduced = opts.sr_reduced || opts.ad_reduced;
  for (int attempt = 0; attempt < opts.retry_cap; ++attempt) {
    std::uniform_int_distribution<int> count_dist(1, std::max(2, 2 * n));
    const int m = count_dist(rng);
    std::vector<DecisionRule> rules;
    for (int r = 0; r < m; ++r) {
      int len;
      if (!reduced && std::uniform_int_distribution<int>(0, 7)(rng) == 0) {
        len = 0;
      } else {
        len = std::uniform_int_distribution<int>(1, d)(rng);
      }
      std::vector<int> pool(n);
      for (int i = 0; i < n; ++i) pool[i] = i + 1;
      std::shuffle(pool.begin(), pool.end(), rng);
      std::vector<Equation> lhs;
      for (int i = 0; i < len; ++i)
        lhs.push_back(eq(pool[i], std::uniform_int_distribution<int>(0, k - 1)(rng)));
      rules.push_back(rule(std::move(lhs),
                           std::uniform_int_distribution<int>(0, n)(rng)));
    }
    RuleSystem s(std::move(rules));
    const auto& p = s.profile();
    if (opts.force_exact_params && (p.n != n || p.d != d || p.k != k)) continue;
    if (opts.sr_reduced && !(reduce(s, ReduceMode::SR) == s)) continue;
    if (opts.ad_reduced && !(reduce(s, ReduceMode::AD) == s)) continue;
    return s;
  }
  throw CapExceeded("random_system: no admissible system within " +
                    std::to_string(opts.retry_cap) + " attempts");
}

}  // namespace ruletree
