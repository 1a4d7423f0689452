#pragma once

#include <string>

#include "ruletree/trees.hpp"

namespace ruletree {

struct LoadedTree {
  DecisionTree tree;
  std::string system_digest;  // hex, as recorded in the file
};

// {"variant":"o"|"e","system_digest":hex,"root":...}; working nodes are
// {"attr":i,"edges":[{"label":<int or "*">,"child":...}]}, terminals
// {"rules":[...]}.
std::string tree_to_json(const DecisionTree& t, const RuleSystem& s);
LoadedTree tree_from_json(const std::string& text);

// Graphviz export: attribute ovals, value-labeled edges, rule-set boxes.
std::string tree_to_dot(const DecisionTree& t);

}  // namespace ruletree
