#pragma once

// Reference results computed the slow way, kept independent of the library
// internals they check: a depth-bounded search over all decision trees
// (re-queries allowed, no memoization) and a subset-enumeration node cover.

#include <algorithm>
#include <vector>

#include "ruletree/trees.hpp"

namespace oracle {

using ruletree::Assignment;
using ruletree::AttrId;
using ruletree::Equation;
using ruletree::ProblemKind;
using ruletree::RuleSystem;
using ruletree::Value;

// May the strategy stop at the (consistent) equation multiset k?
inline bool can_stop(const RuleSystem& s, const std::vector<Equation>& k,
                     ProblemKind c) {
  auto value_at = [&](AttrId a) -> std::optional<Value> {
    for (const auto& e : k)
      if (e.attr == a) return e.value;
    return std::nullopt;
  };
  std::vector<int> real, pending;
  for (std::size_t i = 0; i < s.size(); ++i) {
    bool dead = false, subset = true;
    for (const auto& e : s[i].lhs()) {
      auto b = value_at(e.attr);
      if (!b)
        subset = false;
      else if (*b != e.value) {
        dead = true;
        break;
      }
    }
    if (dead) continue;
    (subset ? real : pending).push_back(static_cast<int>(i));
  }
  switch (c) {
    case ProblemKind::AR:
    case ProblemKind::EAR:
      return pending.empty();
    case ProblemKind::AD:
    case ProblemKind::EAD: {
      for (int p : pending) {
        bool covered = false;
        for (int r : real)
          if (s[r].rhs() == s[p].rhs()) covered = true;
        if (!covered) return false;
      }
      return true;
    }
    case ProblemKind::SR:
    case ProblemKind::ESR:
      return !real.empty() || pending.empty();
  }
  return false;
}

// Is there a tree of depth <= budget solving c below the path k? Re-queries
// are allowed; a path that went inconsistent is unconstrained.
inline bool solvable_within(const RuleSystem& s, ProblemKind c,
                            std::vector<Equation>& k, int budget) {
  if (!ruletree::is_consistent(k)) return true;
  if (can_stop(s, k, c)) return true;
  if (budget == 0) return false;
  const auto& p = s.profile();
  for (AttrId a : p.attrs) {
    bool all_ok = true;
    for (Value v : p.universe_of(a, ruletree::is_extended(c))) {
      k.push_back({a, v});
      bool ok = solvable_within(s, c, k, budget - 1);
      k.pop_back();
      if (!ok) {
        all_ok = false;
        break;
      }
    }
    if (all_ok) return true;
  }
  return false;
}

inline int min_depth(const RuleSystem& s, ProblemKind c) {
  std::vector<Equation> k;
  for (int budget = 0;; ++budget)
    if (solvable_within(s, c, k, budget)) return budget;
}

// Minimum node cover by enumerating attribute subsets in size order.
inline int node_cover(const RuleSystem& s) {
  const auto& attrs = s.profile().attrs;
  const int n = static_cast<int>(attrs.size());
  std::vector<std::vector<AttrId>> edges;
  for (const auto& r : s.rules()) {
    if (r.length() == 0) continue;
    std::vector<AttrId> e;
    for (const auto& eq : r.lhs()) e.push_back(eq.attr);
    edges.push_back(std::move(e));
  }
  if (edges.empty()) return 0;
  for (int size = 0; size <= n; ++size) {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if (__builtin_popcount(mask) != size) continue;
      bool covers = true;
      for (const auto& e : edges) {
        bool hit = false;
        for (const AttrId a : e) {
          int idx = static_cast<int>(
              std::find(attrs.begin(), attrs.end(), a) - attrs.begin());
          if (mask & (1u << idx)) hit = true;
        }
        if (!hit) {
          covers = false;
          break;
        }
      }
      if (covers) return size;
    }
  }
  return n;
}

}  // namespace oracle
