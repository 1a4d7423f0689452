#include <doctest.h>

#include <random>

#include "ruletree/generators.hpp"
#include "ruletree/solver.hpp"
#include "ruletree/tree_io.hpp"
#include "support/fixtures.hpp"

using namespace ruletree;
using fixtures::edge;
using fixtures::leaf;
using fixtures::on;
using fixtures::star_edge;

TEST_CASE("the branch-triple pair of trees") {
  RuleSystem s = parse_system(fixtures::kBranchTriple);
  DecisionTree o = fixtures::branch_triple_o_tree();
  DecisionTree e = fixtures::branch_triple_e_tree();

  CHECK(well_formed(o, s).ok);
  CHECK(well_formed(e, s).ok);
  CHECK(verify(o, s, ProblemKind::AR).ok);
  CHECK(verify(e, s, ProblemKind::EAR).ok);
  CHECK(depth(o) == 2);

  auto paths = complete_paths(o);
  REQUIRE(paths.size() == 2);
  bool found = false;
  for (const auto& p : paths) {
    if (p.terminal_rules != std::vector<int>({1, 2})) continue;
    found = true;
    CHECK(p.attrs() == std::vector<AttrId>({{1}, {3}}));
    CHECK(p.hops == std::vector<Equation>({{AttrId{1}, Value::integer(1)},
                                           {AttrId{3}, Value::integer(0)}}));
    CHECK(p.h() == 2);
  }
  CHECK(found);
}

TEST_CASE("single-terminal trees") {
  RuleSystem s = parse_system("-> 3\n");
  DecisionTree t(TreeVariant::O, leaf({0}));
  CHECK(well_formed(t, s).ok);
  auto paths = complete_paths(t);
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].hops.empty());
  CHECK(paths[0].h() == 0);
  CHECK(depth(t) == 0);
}

TEST_CASE("a full binary probe tree has four paths of two queries") {
  RuleSystem s = parse_system("a1=0 & a2=0 -> 0\na1=1 & a2=1 -> 1\n");
  auto sub = [&](std::vector<int> z0, std::vector<int> z1) {
    std::vector<DecisionTree::Edge> e;
    e.push_back(edge(0, leaf(std::move(z0))));
    e.push_back(edge(1, leaf(std::move(z1))));
    return on(2, std::move(e));
  };
  std::vector<DecisionTree::Edge> root;
  root.push_back(edge(0, sub({0}, {})));
  root.push_back(edge(1, sub({}, {1})));
  DecisionTree t(TreeVariant::O, on(1, std::move(root)));
  CHECK(verify(t, s, ProblemKind::AR).ok);
  auto paths = complete_paths(t);
  REQUIRE(paths.size() == 4);
  for (const auto& p : paths) CHECK(p.h() == 2);
  CHECK(depth(t) == 2);
}

TEST_CASE("well-formedness violations are diagnosed") {
  RuleSystem s = parse_system(fixtures::kMixedThree);  // V_S(a1) has 3 values

  std::vector<DecisionTree::Edge> two;
  two.push_back(edge(0, leaf({})));
  two.push_back(edge(1, leaf({})));
  DecisionTree missing_edge(TreeVariant::O, on(1, std::move(two)));
  auto r = well_formed(missing_edge, s);
  CHECK_FALSE(r.ok);
  CHECK(r.diagnostic.find("a1") != std::string::npos);

  std::vector<DecisionTree::Edge> no_star;
  no_star.push_back(edge(0, leaf({})));
  no_star.push_back(edge(1, leaf({})));
  no_star.push_back(edge(2, leaf({})));
  DecisionTree e_tree(TreeVariant::E, on(1, std::move(no_star)));
  CHECK_FALSE(well_formed(e_tree, s).ok);

  std::vector<DecisionTree::Edge> foreign;
  foreign.push_back(edge(0, leaf({})));
  DecisionTree bad_attr(TreeVariant::O, on(9, std::move(foreign)));
  CHECK_FALSE(well_formed(bad_attr, s).ok);

  DecisionTree bad_index(TreeVariant::O, leaf({5}));
  CHECK_FALSE(well_formed(bad_index, s).ok);

  CHECK_THROWS_AS(verify(bad_index, s, ProblemKind::AR), std::invalid_argument);
  CHECK_THROWS_AS(
      verify(fixtures::branch_triple_o_tree(),
             parse_system(fixtures::kBranchTriple), ProblemKind::EAR),
      std::invalid_argument);
}

TEST_CASE("the four-rule trees solve their problems") {
  RuleSystem s = parse_system(fixtures::kFourRules);
  CHECK(verify(fixtures::four_rules_tree(ProblemKind::AR), s, ProblemKind::AR).ok);
  CHECK(verify(fixtures::four_rules_tree(ProblemKind::AD), s, ProblemKind::AD).ok);
  CHECK(verify(fixtures::four_rules_tree(ProblemKind::SR), s, ProblemKind::SR).ok);

  // the AD tree is not an AR solution: r2 stays consistent at a1=1
  auto v = verify(fixtures::four_rules_tree(ProblemKind::AD), s, ProblemKind::AR);
  CHECK_FALSE(v.ok);
  REQUIRE(v.counterexample.has_value());
  CHECK(v.counterexample->hops ==
        std::vector<Equation>({{AttrId{1}, Value::integer(1)}}));
}

TEST_CASE("relabeling a terminal with a non-realizable rule is caught") {
  RuleSystem s = parse_system(fixtures::kBranchTriple);
  std::vector<DecisionTree::Edge> a2, a3, root;
  a2.push_back(edge(0, leaf({0, 1})));  // r2 is not realizable here
  a3.push_back(edge(0, leaf({1, 2})));
  root.push_back(edge(0, on(2, std::move(a2))));
  root.push_back(edge(1, on(3, std::move(a3))));
  DecisionTree t(TreeVariant::O, on(1, std::move(root)));
  auto v = verify(t, s, ProblemKind::AR);
  CHECK_FALSE(v.ok);
  REQUIRE(v.counterexample.has_value());
  CHECK(v.counterexample->terminal_rules == std::vector<int>({0, 1}));
}

TEST_CASE("inconsistent paths are unconstrained") {
  RuleSystem s = parse_system("a1=0 -> 0\na1=1 -> 1\n");
  // re-query a1 on the a1=0 branch; the contradictory leaf may say anything
  std::vector<DecisionTree::Edge> inner;
  inner.push_back(edge(0, leaf({0})));
  inner.push_back(edge(1, leaf({0, 1})));  // inconsistent path: arbitrary label
  std::vector<DecisionTree::Edge> root;
  root.push_back(edge(0, on(1, std::move(inner))));
  root.push_back(edge(1, leaf({1})));
  DecisionTree t(TreeVariant::O, on(1, std::move(root)));
  CHECK(verify(t, s, ProblemKind::AR).ok);
}

TEST_CASE("projection drops the star subtrees") {
  RuleSystem s = parse_system(fixtures::kBranchTriple);
  DecisionTree projected = project_o(fixtures::branch_triple_e_tree());
  CHECK(projected == fixtures::branch_triple_o_tree());
  CHECK(verify(projected, s, ProblemKind::AR).ok);
  CHECK_THROWS_AS(project_o(projected), std::invalid_argument);
}

TEST_CASE("projection preserves solving on solver output") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    RuleSystem s = random_system(3, 2, 2, 1000 + trial);
    SolveResult r = min_depth(s, ProblemKind::EAD);
    DecisionTree o = project_o(r.tree);
    CHECK(verify(o, s, ProblemKind::AD).ok);
    CHECK(depth(o) <= r.depth);
  }
}

TEST_CASE("tree restriction on the triangle system") {
  RuleSystem s = parse_system(fixtures::kTriangle);
  DecisionTree t = fixtures::triangle_tree();
  REQUIRE(verify(t, s, ProblemKind::AR).ok);

  Assignment alpha = parse_assignment("a3=0");
  auto sa = restrict_system(s, alpha);
  REQUIRE(sa.has_value());
  DecisionTree ta = restrict_tree(t, alpha, s);
  CHECK(verify(ta, *sa, ProblemKind::AR).ok);
  CHECK(depth(ta) <= depth(t));

  std::vector<DecisionTree::Edge> want_a2, want_root;
  want_a2.push_back(edge(0, leaf({0})));
  want_root.push_back(edge(0, on(2, std::move(want_a2))));
  want_root.push_back(edge(1, leaf({1})));
  DecisionTree want(TreeVariant::O, on(1, std::move(want_root)));
  CHECK(ta == want);

  // the empty restriction only relabels, so nothing changes
  DecisionTree same = restrict_tree(t, Assignment{}, s);
  CHECK(same == t);

  CHECK_THROWS_AS(restrict_tree(t, parse_assignment("a9=0"), s),
                  std::invalid_argument);
  // a `*` restriction needs an e-tree
  CHECK_THROWS_AS(restrict_tree(t, parse_assignment("a3=*"), s),
                  std::invalid_argument);
}

TEST_CASE("tree restriction preserves solving on solver output") {
  std::mt19937_64 rng(17);
  int done = 0;
  for (int trial = 0; trial < 60 && done < 20; ++trial) {
    RuleSystem s = random_system(4, 2, 2, 2000 + trial);
    const auto& p = s.profile();
    if (p.n < 2) continue;
    Assignment alpha;
    alpha.set(p.attrs[0], p.values_of(p.attrs[0]).front());
    auto sa = restrict_system(s, alpha);
    if (!sa) continue;
    SolveResult r = min_depth(s, ProblemKind::SR);
    DecisionTree ta = restrict_tree(r.tree, alpha, s);
    CHECK(verify(ta, *sa, ProblemKind::SR).ok);
    ++done;
  }
  CHECK(done >= 10);
}

TEST_CASE("lift from the reduced system") {
  RuleSystem s = parse_system(fixtures::kChainReduce);
  RuleSystem r = reduce(s, ReduceMode::SR);
  SolveResult rr = min_depth(r, ProblemKind::ESR);
  DecisionTree lifted = lift_from_reduced(rr.tree, s, ReduceMode::SR);
  CHECK(verify(lifted, s, ProblemKind::ESR).ok);
  CHECK(depth(lifted) == rr.depth);

  // an already reduced system lifts to itself
  RuleSystem fixed = parse_system(fixtures::kTriangle);
  REQUIRE(reduce(fixed, ReduceMode::SR) == fixed);
  SolveResult fr = min_depth(fixed, ProblemKind::ESR);
  DecisionTree same = lift_from_reduced(fr.tree, fixed, ReduceMode::SR);
  CHECK(same == fr.tree);

  // a tree that does not solve the reduced problem is rejected
  DecisionTree bogus(TreeVariant::E, leaf({}));
  CHECK_THROWS_AS(lift_from_reduced(bogus, s, ReduceMode::SR),
                  std::invalid_argument);
}

TEST_CASE("lift preserves depth on random systems") {
  for (int trial = 0; trial < 50; ++trial) {
    RuleSystem s = random_system(4, 3, 2, 3000 + trial);
    for (ReduceMode mode : {ReduceMode::SR, ReduceMode::AD}) {
      ProblemKind c = mode == ReduceMode::SR ? ProblemKind::ESR : ProblemKind::EAD;
      RuleSystem r = reduce(s, mode);
      SolveResult rr = min_depth(r, c);
      DecisionTree lifted = lift_from_reduced(rr.tree, s, mode);
      CHECK(verify(lifted, s, c).ok);
      CHECK(depth(lifted) == rr.depth);
      CHECK(min_depth(s, c).depth == rr.depth);
    }
  }
}

TEST_CASE("an AR solution is also an AD and an SR solution") {
  for (int trial = 0; trial < 20; ++trial) {
    RuleSystem s = random_system(3, 2, 2, 4000 + trial);
    DecisionTree t = min_depth(s, ProblemKind::AR).tree;
    CHECK(verify(t, s, ProblemKind::AD).ok);
    CHECK(verify(t, s, ProblemKind::SR).ok);
    DecisionTree e = min_depth(s, ProblemKind::EAR).tree;
    CHECK(verify(e, s, ProblemKind::EAD).ok);
    CHECK(verify(e, s, ProblemKind::ESR).ok);
  }
}

TEST_CASE("verified trees report the realizable set, checked exhaustively") {
  for (int trial = 0; trial < 10; ++trial) {
    RuleSystem s = random_system(3, 2, 2, 5000 + trial);
    DecisionTree t = min_depth(s, ProblemKind::AR).tree;
    bool all_match = for_each_total_tuple(s, false, [&](const Assignment& tuple) {
      // follow the unique consistent path
      const DecisionTree::Node* node = &t.root();
      while (!node->is_terminal()) {
        Value v = *tuple.value_of(*node->attr);
        const DecisionTree::Node* next = nullptr;
        for (const auto& e : node->edges)
          if (e.label == v) next = e.child.get();
        REQUIRE(next != nullptr);
        node = next;
      }
      std::vector<int> expected;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (is_realizable(s, s[i], tuple)) expected.push_back(static_cast<int>(i));
      return node->rules == expected;
    });
    CHECK(all_match);
  }
}

TEST_CASE("tree json round trip") {
  RuleSystem s = parse_system(fixtures::kBranchTriple);
  DecisionTree e = fixtures::branch_triple_e_tree();
  std::string text = tree_to_json(e, s);
  LoadedTree loaded = tree_from_json(text);
  CHECK(loaded.tree == e);
  CHECK(loaded.system_digest == system_digest_hex(s));

  RuleSystem other = parse_system("a1=0 -> 1\n");
  CHECK(loaded.system_digest != system_digest_hex(other));

  CHECK_THROWS(tree_from_json("{\"variant\":\"x\"}"));
  CHECK_THROWS(tree_from_json("not json"));
}

TEST_CASE("dot export names attributes and rule sets") {
  DecisionTree o = fixtures::branch_triple_o_tree();
  std::string dot = tree_to_dot(o);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("a1") != std::string::npos);
  CHECK(dot.find("{r2,r3}") != std::string::npos);
  CHECK(dot.find("shape=box") != std::string::npos);
}
