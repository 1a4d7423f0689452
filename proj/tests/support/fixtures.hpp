#pragma once

#include <vector>

#include "ruletree/trees.hpp"

namespace fixtures {

// the worked example systems, as DSL text
inline constexpr const char* kMixedThree =
    "a1=0 & a2=0 & a3=0 -> 3\na1=1 & a4=0 -> 4\na1=2 -> 5\n";
inline constexpr const char* kRealizablePair =
    "a1=0 & a2=0 -> 0\na1=0 & a3=1 -> 1\n";
inline constexpr const char* kNestedChain =
    "a1=0 & a2=0 & a3=0 -> 0\na1=0 & a2=0 -> 1\na1=0 -> 0\n";
inline constexpr const char* kBranchTriple =
    "a1=0 & a2=0 -> 0\na1=1 & a3=0 -> 0\na1=1 -> 0\n";
inline constexpr const char* kFourRules =
    "a1=0 & a2=0 -> 0\na1=1 & a3=0 -> 1\na1=1 -> 1\na1=1 -> 2\n";
inline constexpr const char* kChainReduce =
    "a1=0 & a2=0 & a3=0 -> 0\na1=0 & a2=0 -> 0\na1=0 -> 1\n";
inline constexpr const char* kTriangle =
    "a1=0 & a2=0 -> 0\na1=1 & a3=0 -> 0\na2=1 & a3=1 -> 0\n";
inline constexpr const char* kZeroLenMix = "a1=0 -> 0\na1=1 -> 1\n-> 1\n-> 2\n";
inline constexpr const char* kIncompleteSquare =
    "a1=0 & a2=0 -> 0\na1=1 & a2=0 -> 0\na1=0 & a2=1 -> 0\n";

inline ruletree::DecisionTree::NodePtr leaf(std::vector<int> rules) {
  return ruletree::DecisionTree::terminal(std::move(rules));
}

inline ruletree::DecisionTree::NodePtr on(
    int attr, std::vector<ruletree::DecisionTree::Edge> edges) {
  return ruletree::DecisionTree::working(ruletree::AttrId{attr},
                                         std::move(edges));
}

inline ruletree::DecisionTree::Edge edge(std::int64_t v,
                                         ruletree::DecisionTree::NodePtr child) {
  return {ruletree::Value::integer(v), std::move(child)};
}

inline ruletree::DecisionTree::Edge star_edge(
    ruletree::DecisionTree::NodePtr child) {
  return {ruletree::Value::star(), std::move(child)};
}

// o-tree solving AR over kBranchTriple
inline ruletree::DecisionTree branch_triple_o_tree() {
  using namespace ruletree;
  std::vector<DecisionTree::Edge> a2, a3, root;
  a2.push_back(edge(0, leaf({0})));
  a3.push_back(edge(0, leaf({1, 2})));
  root.push_back(edge(0, on(2, std::move(a2))));
  root.push_back(edge(1, on(3, std::move(a3))));
  return DecisionTree(TreeVariant::O, on(1, std::move(root)));
}

// e-tree solving EAR over kBranchTriple
inline ruletree::DecisionTree branch_triple_e_tree() {
  using namespace ruletree;
  std::vector<DecisionTree::Edge> a2, a3, root;
  a2.push_back(edge(0, leaf({0})));
  a2.push_back(star_edge(leaf({})));
  a3.push_back(edge(0, leaf({1, 2})));
  a3.push_back(star_edge(leaf({2})));
  root.push_back(edge(0, on(2, std::move(a2))));
  root.push_back(edge(1, on(3, std::move(a3))));
  root.push_back(star_edge(leaf({})));
  return DecisionTree(TreeVariant::E, on(1, std::move(root)));
}

// the three o-trees over kFourRules (AR, AD, SR solutions)
inline ruletree::DecisionTree four_rules_tree(ruletree::ProblemKind c) {
  using namespace ruletree;
  std::vector<DecisionTree::Edge> a2, root;
  a2.push_back(edge(0, leaf({0})));
  root.push_back(edge(0, on(2, std::move(a2))));
  if (c == ProblemKind::AR) {
    std::vector<DecisionTree::Edge> a3;
    a3.push_back(edge(0, leaf({1, 2, 3})));
    root.push_back(edge(1, on(3, std::move(a3))));
  } else if (c == ProblemKind::AD) {
    root.push_back(edge(1, leaf({2, 3})));
  } else {
    root.push_back(edge(1, leaf({2})));
  }
  return DecisionTree(TreeVariant::O, on(1, std::move(root)));
}

// AR-solving o-tree over kTriangle, root on a3
inline ruletree::DecisionTree triangle_tree() {
  using namespace ruletree;
  auto a2_node = [](std::vector<int> at0, std::vector<int> at1) {
    std::vector<DecisionTree::Edge> e;
    e.push_back(edge(0, leaf(std::move(at0))));
    e.push_back(edge(1, leaf(std::move(at1))));
    return on(2, std::move(e));
  };
  std::vector<DecisionTree::Edge> low, high, root;
  low.push_back(edge(0, a2_node({0}, {})));
  low.push_back(edge(1, leaf({1})));
  high.push_back(edge(0, a2_node({0}, {2})));
  high.push_back(edge(1, a2_node({}, {2})));
  root.push_back(edge(0, on(1, std::move(low))));
  root.push_back(edge(1, on(1, std::move(high))));
  return DecisionTree(TreeVariant::O, on(3, std::move(root)));
}

}  // namespace fixtures
