#pragma once

#include <cstdint>
#include <optional>

#include "ruletree/trees.hpp"

namespace ruletree {

struct SolveLimits {
  std::uint64_t max_states = 10'000'000;
  double timeout_seconds = 60.0;
};

struct SolveStats {
  std::uint64_t states_visited = 0;
  std::uint64_t memo_hits = 0;
  double elapsed_seconds = 0.0;
};

struct SolveResult {
  int depth = 0;
  DecisionTree tree;
  SolveStats stats;
};

// Raised when a cap was hit; [lower_bound, upper_bound] is the interval
// the search had already established for h_C(S).
struct SolveCapExceeded : CapExceeded {
  SolveCapExceeded(const std::string& what, int lower, int upper)
      : CapExceeded(what), lower_bound(lower), upper_bound(upper) {}
  int lower_bound = 0;
  int upper_bound = 0;
};

// Whether querying nothing further is allowed at the state `alpha`, and
// with which terminal label. With Real = {r : K(r) ⊆ alpha} and
// Dead = {r : K(r) ∪ alpha inconsistent}:
//   AR/EAR  -> Real      iff Real ∪ Dead = S
//   AD/EAD  -> Real      iff every other consistent rule's decision is in D(Real)
//   SR/ESR  -> Real      iff Real nonempty, else {} iff Dead = S
// nullopt when the state does not decide the problem yet.
std::optional<std::vector<int>> terminal_label(const RuleSystem& s,
                                               const Assignment& alpha,
                                               ProblemKind c);

// Exact h_C(S) with a witness tree: minimum over unqueried attributes of
// one plus the worst value branch, memoized over the query state. The
// witness picks the lowest-index minimizing attribute and orders value
// branches ascending with `*` last.
SolveResult min_depth(const RuleSystem& s, ProblemKind c,
                      const SolveLimits& limits = {});

}  // namespace ruletree
