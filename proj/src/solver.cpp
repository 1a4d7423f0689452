#include "ruletree/solver.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <unordered_map>

namespace ruletree {

std::optional<std::vector<int>> terminal_label(const RuleSystem& s,
                                               const Assignment& alpha,
                                               ProblemKind c) {
  const auto& p = s.profile();
  const bool extended = is_extended(c);
  for (const auto& [a, v] : alpha) {
    if (!p.has_attr(a))
      throw std::invalid_argument("terminal_label: " + to_string(a) +
                                  " is not in A(S)");
    if (v.is_star()) {
      if (!extended)
        throw std::invalid_argument("terminal_label: `*` is outside V_S for " +
                                    to_string(c));
    } else {
      const auto& vs = p.values_of(a);
      if (!std::binary_search(vs.begin(), vs.end(), v))
        throw std::invalid_argument("terminal_label: value " + to_string(v) +
                                    " not in V_S(" + to_string(a) + ")");
    }
  }

  std::vector<int> real;
  std::vector<int> pending;
  for (std::size_t i = 0; i < s.size(); ++i) {
    bool dead = false, subset = true;
    for (const auto& e : s[i].lhs()) {
      auto bound = alpha.value_of(e.attr);
      if (!bound) {
        subset = false;
      } else if (*bound != e.value) {
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
      if (pending.empty()) return real;
      return std::nullopt;
    case ProblemKind::AD:
    case ProblemKind::EAD: {
      std::set<std::int64_t> covered;
      for (int i : real) covered.insert(s[i].rhs());
      for (int i : pending)
        if (!covered.count(s[i].rhs())) return std::nullopt;
      return real;
    }
    case ProblemKind::SR:
    case ProblemKind::ESR:
      if (!real.empty()) return real;
      if (pending.empty()) return std::vector<int>{};
      return std::nullopt;
  }
  return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;

struct StateHash {
  std::size_t operator()(const std::vector<std::uint8_t>& v) const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (std::uint8_t c : v) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    return h;
  }
};

// Adaptive-strategy search: min over attributes, max over values, over
// re-query-free strategies. State = per-attribute code, 0 for unqueried,
// 1+i for the i-th element of that attribute's branching universe.
class Search {
 public:
  Search(const RuleSystem& s, ProblemKind c, const SolveLimits& limits)
      : s_(s), c_(c), extended_(is_extended(c)), limits_(limits) {
    const auto& p = s.profile();
    attrs_ = p.attrs;
    for (AttrId a : attrs_) {
      domains_.push_back(p.universe_of(a, extended_));
      pos_[a] = static_cast<int>(domains_.size()) - 1;
    }
    rule_eqs_.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
      for (const auto& e : s[i].lhs()) {
        int pos = pos_.at(e.attr);
        const auto& dom = domains_[pos];
        int idx = static_cast<int>(
            std::lower_bound(dom.begin(), dom.end(), e.value) - dom.begin());
        rule_eqs_[i].push_back({pos, static_cast<std::uint8_t>(idx + 1)});
      }
    start_ = Clock::now();
    root_lb_ = lower_bound(std::vector<std::uint8_t>(attrs_.size(), 0));
  }

  using State = std::vector<std::uint8_t>;

  int solve_root() { return solve(State(attrs_.size(), 0)); }

  DecisionTree build_tree() {
    nodes_built_ = 0;
    return DecisionTree(extended_ ? TreeVariant::E : TreeVariant::O,
                        build(State(attrs_.size(), 0)));
  }

  SolveStats stats() const {
    SolveStats st = stats_;
    st.elapsed_seconds =
        std::chrono::duration<double>(Clock::now() - start_).count();
    return st;
  }

 private:
  enum class RuleState { Real, Dead, Pending };

  RuleState classify(const State& st, std::size_t rule) const {
    RuleState out = RuleState::Real;
    for (const auto& [pos, code] : rule_eqs_[rule]) {
      if (st[pos] == 0)
        out = RuleState::Pending;
      else if (st[pos] != code)
        return RuleState::Dead;
    }
    return out;
  }

  std::optional<std::vector<int>> label(const State& st) const {
    std::vector<int> real;
    std::vector<int> pending;
    for (std::size_t i = 0; i < s_.size(); ++i) {
      switch (classify(st, i)) {
        case RuleState::Real: real.push_back(static_cast<int>(i)); break;
        case RuleState::Pending: pending.push_back(static_cast<int>(i)); break;
        case RuleState::Dead: break;
      }
    }
    switch (c_) {
      case ProblemKind::AR:
      case ProblemKind::EAR:
        if (pending.empty()) return real;
        return std::nullopt;
      case ProblemKind::AD:
      case ProblemKind::EAD: {
        std::set<std::int64_t> covered;
        for (int i : real) covered.insert(s_[i].rhs());
        for (int i : pending)
          if (!covered.count(s_[i].rhs())) return std::nullopt;
        return real;
      }
      case ProblemKind::SR:
      case ProblemKind::ESR:
        if (!real.empty()) return real;
        if (pending.empty()) return std::vector<int>{};
        return std::nullopt;
    }
    return std::nullopt;
  }

  // Admissible lower bound. For AR/EAR every rule that is still pending
  // must get one of its unqueried attributes queried on every consistent
  // completion, so both the longest pending remainder and a set of
  // pairwise disjoint remainders bound the depth from below.
  int lower_bound(const State& st) const {
    if (c_ != ProblemKind::AR && c_ != ProblemKind::EAR) return 1;
    std::vector<std::vector<int>> remainders;
    std::size_t longest = 0;
    for (std::size_t i = 0; i < s_.size(); ++i) {
      if (classify(st, i) != RuleState::Pending) continue;
      std::vector<int> rem;
      for (const auto& [pos, code] : rule_eqs_[i])
        if (st[pos] == 0) rem.push_back(pos);
      longest = std::max(longest, rem.size());
      remainders.push_back(std::move(rem));
    }
    std::sort(remainders.begin(), remainders.end(),
              [](const auto& a, const auto& b) { return a.size() < b.size(); });
    std::set<int> used;
    int packed = 0;
    for (const auto& rem : remainders) {
      bool disjoint = std::none_of(rem.begin(), rem.end(),
                                   [&](int p) { return used.count(p) != 0; });
      if (!disjoint) continue;
      ++packed;
      used.insert(rem.begin(), rem.end());
    }
    return std::max<int>({1, static_cast<int>(longest), packed});
  }

  void check_caps() {
    if (stats_.states_visited > limits_.max_states)
      throw SolveCapExceeded("solve: state cap of " +
                                 std::to_string(limits_.max_states) + " exceeded",
                             root_lb_, static_cast<int>(attrs_.size()));
    if ((stats_.states_visited & 1023) == 0) {
      double e = std::chrono::duration<double>(Clock::now() - start_).count();
      if (e > limits_.timeout_seconds)
        throw SolveCapExceeded("solve: timeout of " +
                                   std::to_string(limits_.timeout_seconds) +
                                   "s exceeded",
                               root_lb_, static_cast<int>(attrs_.size()));
    }
  }

  int solve(const State& st) {
    if (auto it = memo_.find(st); it != memo_.end()) {
      ++stats_.memo_hits;
      return it->second;
    }
    ++stats_.states_visited;
    check_caps();

    int result;
    if (label(st)) {
      result = 0;
    } else {
      int remaining = static_cast<int>(
          std::count(st.begin(), st.end(), std::uint8_t{0}));
      int lb = lower_bound(st);
      int best = remaining;  // querying every remaining attribute decides
      for (std::size_t pos = 0; pos < attrs_.size() && best > lb; ++pos) {
        if (st[pos] != 0) continue;
        State child = st;
        int worst = 0;
        for (std::size_t v = 0; v < domains_[pos].size(); ++v) {
          child[pos] = static_cast<std::uint8_t>(v + 1);
          worst = std::max(worst, solve(child));
          if (1 + worst >= best) break;  // cannot beat the current best
        }
        child[pos] = 0;
        best = std::min(best, 1 + worst);
      }
      result = best;
    }
    memo_.emplace(st, result);
    return result;
  }

  DecisionTree::NodePtr build(const State& st) {
    if (++nodes_built_ > limits_.max_states)
      throw SolveCapExceeded("solve: witness tree exceeds the state cap",
                             root_lb_, static_cast<int>(attrs_.size()));
    if (auto lbl = label(st)) return DecisionTree::terminal(std::move(*lbl));
    const int target = solve(st);
    for (std::size_t pos = 0; pos < attrs_.size(); ++pos) {
      if (st[pos] != 0) continue;
      State child = st;
      int worst = 0;
      for (std::size_t v = 0; v < domains_[pos].size(); ++v) {
        child[pos] = static_cast<std::uint8_t>(v + 1);
        worst = std::max(worst, solve(child));
      }
      if (1 + worst != target) continue;
      std::vector<DecisionTree::Edge> edges;
      for (std::size_t v = 0; v < domains_[pos].size(); ++v) {
        child[pos] = static_cast<std::uint8_t>(v + 1);
        edges.push_back({domains_[pos][v], build(child)});
      }
      return DecisionTree::working(attrs_[pos], std::move(edges));
    }
    throw std::logic_error("solve: no attribute attains the memoized value");
  }

  const RuleSystem& s_;
  ProblemKind c_;
  bool extended_;
  SolveLimits limits_;
  std::vector<AttrId> attrs_;
  std::vector<std::vector<Value>> domains_;
  std::map<AttrId, int> pos_;
  std::vector<std::vector<std::pair<int, std::uint8_t>>> rule_eqs_;
  std::unordered_map<State, int, StateHash> memo_;
  SolveStats stats_;
  Clock::time_point start_;
  int root_lb_ = 0;
  std::uint64_t nodes_built_ = 0;
};

// n(S)=0: a single terminal suffices; the label depends on the problem.
DecisionTree::NodePtr degenerate_label(const RuleSystem& s, ProblemKind c) {
  switch (c) {
    case ProblemKind::AR:
    case ProblemKind::EAR: {
      std::vector<int> all(s.size());
      for (std::size_t i = 0; i < s.size(); ++i) all[i] = static_cast<int>(i);
      return DecisionTree::terminal(std::move(all));
    }
    case ProblemKind::AD:
    case ProblemKind::EAD: {
      // first-occurrence minimal Z with D(Z) = D(S)
      std::set<std::int64_t> covered;
      std::vector<int> z;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (covered.insert(s[i].rhs()).second) z.push_back(static_cast<int>(i));
      return DecisionTree::terminal(std::move(z));
    }
    case ProblemKind::SR:
    case ProblemKind::ESR:
      return DecisionTree::terminal({0});
  }
  throw std::logic_error("unreachable");
}

}  // namespace

SolveResult min_depth(const RuleSystem& s, ProblemKind c,
                      const SolveLimits& limits) {
  if (s.profile().n == 0) {
    return {0,
            DecisionTree(is_extended(c) ? TreeVariant::E : TreeVariant::O,
                         degenerate_label(s, c)),
            {}};
  }
  Search search(s, c, limits);
  int h = search.solve_root();
  DecisionTree tree = search.build_tree();
  return {h, std::move(tree), search.stats()};
}

}  // namespace ruletree
