#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ruletree/core.hpp"

namespace ruletree {

enum class ProblemKind { AR, EAR, AD, EAD, SR, ESR };

// EAR/EAD/ESR branch over EV_S, the plain problems over V_S.
constexpr bool is_extended(ProblemKind c) {
  return c == ProblemKind::EAR || c == ProblemKind::EAD || c == ProblemKind::ESR;
}
std::string to_string(ProblemKind c);
std::optional<ProblemKind> problem_from_string(std::string_view name);

enum class TreeVariant { O, E };

// Rooted labeled tree. Working nodes carry an attribute and one child per
// value of that attribute's branching universe; terminals carry a set of
// rules by canonical index into the system the tree was built over.
class DecisionTree {
 public:
  struct Node;
  using NodePtr = std::unique_ptr<Node>;

  struct Edge {
    Value label;
    NodePtr child;
  };

  struct Node {
    std::optional<AttrId> attr;  // nullopt: terminal
    std::vector<Edge> edges;     // working nodes only
    std::vector<int> rules;      // terminal label, ascending

    bool is_terminal() const { return !attr.has_value(); }
  };

  DecisionTree(TreeVariant variant, NodePtr root)
      : variant_(variant), root_(std::move(root)) {
    if (!root_) throw std::invalid_argument("tree: null root");
  }

  TreeVariant variant() const { return variant_; }
  const Node& root() const { return *root_; }

  DecisionTree clone() const;

  static NodePtr terminal(std::vector<int> rules);
  static NodePtr working(AttrId attr, std::vector<Edge> edges);
  static NodePtr clone_node(const Node& n);

 private:
  TreeVariant variant_;
  NodePtr root_;
};

bool operator==(const DecisionTree::Node& a, const DecisionTree::Node& b);
inline bool operator==(const DecisionTree& a, const DecisionTree& b) {
  return a.variant() == b.variant() && a.root() == b.root();
}

// Root-to-terminal path: the (attribute, value) hops in order plus the
// terminal's rule set. K(xi) is the hop list read as a multiset.
struct CompletePath {
  std::vector<Equation> hops;
  std::vector<int> terminal_rules;

  int h() const { return static_cast<int>(hops.size()); }
  bool consistent() const { return is_consistent(hops); }
  std::vector<AttrId> attrs() const;
};

std::string to_string(const CompletePath& p);

std::vector<CompletePath> complete_paths(const DecisionTree& t);

// Max number of working nodes over the complete paths.
int depth(const DecisionTree& t);

struct WellFormedResult {
  bool ok = true;
  std::string diagnostic;
  explicit operator bool() const { return ok; }
};

// Checks the structural conditions for a tree over S: working attributes
// in A(S), edge labels exactly V_S(a) (o) or EV_S(a) (e), terminal rule
// indices valid. The diagnostic names the first violating node by its
// root path.
WellFormedResult well_formed(const DecisionTree& t, const RuleSystem& s);

struct VerifyResult {
  bool ok = true;
  std::string reason;
  std::optional<CompletePath> counterexample;
  explicit operator bool() const { return ok; }
};

// Does the tree solve problem c for S? Checks every complete path with a
// consistent equation system; inconsistent paths are unconstrained.
// Throws on variant/problem mismatch and on malformed trees.
VerifyResult verify(const DecisionTree& t, const RuleSystem& s, ProblemKind c);

// o(Γ): drop everything reachable through a `*` edge. If the input solves
// EC(S), the result solves C(S).
DecisionTree project_o(const DecisionTree& t);

// Γ_alpha over S_alpha: prune edges outside the restricted universe,
// splice out nodes on attributes that left A(S_alpha) (following alpha's
// value there, or the minimum value of V_S otherwise), and relabel the
// terminals Z -> Z_alpha. Requires S_alpha nonempty.
DecisionTree restrict_tree(const DecisionTree& t, const Assignment& alpha,
                           const RuleSystem& s);

// Lemma-9-style lift: turns a tree solving ESR/EAD over reduce(S, mode)
// into one solving the same problem over S, cloning the `*` subtree for
// every value the reduction removed. Depth is preserved.
DecisionTree lift_from_reduced(const DecisionTree& t, const RuleSystem& s,
                               ReduceMode mode);

}  // namespace ruletree
