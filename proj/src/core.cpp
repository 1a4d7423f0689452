#include "ruletree/core.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ruletree {

bool is_consistent(std::span<const Equation> eqs) {
  std::map<AttrId, Value> seen;
  for (const auto& e : eqs) {
    auto [it, inserted] = seen.emplace(e.attr, e.value);
    if (!inserted && it->second != e.value) return false;
  }
  return true;
}

DecisionRule::DecisionRule(std::vector<Equation> lhs, std::int64_t rhs)
    : lhs_(std::move(lhs)), rhs_(rhs) {
  if (rhs_ < 0) throw std::invalid_argument("rule: negative decision");
  std::sort(lhs_.begin(), lhs_.end());
  for (std::size_t i = 0; i < lhs_.size(); ++i) {
    if (lhs_[i].value.is_star())
      throw std::invalid_argument("rule: `*` cannot occur in a left-hand side");
    if (i > 0 && lhs_[i].attr == lhs_[i - 1].attr)
      throw std::invalid_argument("rule: attribute " + to_string(lhs_[i].attr) +
                                  " occurs twice in a left-hand side");
  }
}

bool DecisionRule::has_attr(AttrId a) const {
  return value_of(a).has_value();
}

std::optional<Value> DecisionRule::value_of(AttrId a) const {
  auto it = std::lower_bound(lhs_.begin(), lhs_.end(), a,
                             [](const Equation& e, AttrId x) { return e.attr < x; });
  if (it != lhs_.end() && it->attr == a) return it->value;
  return std::nullopt;
}

const std::vector<Value>& SystemProfile::values_of(AttrId a) const {
  auto it = values.find(a);
  if (it == values.end())
    throw std::invalid_argument("attribute " + to_string(a) + " not in A(S)");
  return it->second;
}

std::vector<Value> SystemProfile::ev_values_of(AttrId a) const {
  std::vector<Value> out = values_of(a);
  out.push_back(Value::star());
  return out;
}

std::vector<Value> SystemProfile::universe_of(AttrId a, bool extended) const {
  return extended ? ev_values_of(a) : values_of(a);
}

std::optional<Assignment> Assignment::from_equations(std::span<const Equation> eqs) {
  Assignment out;
  for (const auto& e : eqs)
    if (!out.try_set(e.attr, e.value)) return std::nullopt;
  return out;
}

bool Assignment::try_set(AttrId a, Value v) {
  auto [it, inserted] = entries_.emplace(a, v);
  return inserted || it->second == v;
}

void Assignment::set(AttrId a, Value v) {
  if (!try_set(a, v))
    throw std::invalid_argument("assignment: conflicting value for " + to_string(a));
}

std::optional<Assignment> Assignment::merged(const Assignment& other) const {
  Assignment out = *this;
  for (const auto& [a, v] : other)
    if (!out.try_set(a, v)) return std::nullopt;
  return out;
}

std::optional<Value> Assignment::value_of(AttrId a) const {
  auto it = entries_.find(a);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

static SystemProfile make_profile(const std::vector<DecisionRule>& rules) {
  SystemProfile p;
  std::map<AttrId, std::set<Value>> vals;
  std::set<std::int64_t> decs;
  for (const auto& r : rules) {
    p.d = std::max<int>(p.d, static_cast<int>(r.length()));
    decs.insert(r.rhs());
    for (const auto& e : r.lhs()) vals[e.attr].insert(e.value);
  }
  p.decisions.assign(decs.begin(), decs.end());
  for (const auto& [a, vs] : vals) {
    p.attrs.push_back(a);
    p.values.emplace(a, std::vector<Value>(vs.begin(), vs.end()));
    p.k = std::max<int>(p.k, static_cast<int>(vs.size()));
  }
  p.n = static_cast<int>(p.attrs.size());
  return p;
}

RuleSystem::RuleSystem(std::vector<DecisionRule> rules) {
  if (rules.empty())
    throw std::invalid_argument("rule system: must contain at least one rule");
  for (auto& r : rules) {
    if (std::find(rules_.begin(), rules_.end(), r) == rules_.end())
      rules_.push_back(std::move(r));
  }
  profile_ = make_profile(rules_);
}

std::optional<int> RuleSystem::index_of(const DecisionRule& r) const {
  auto it = std::find(rules_.begin(), rules_.end(), r);
  if (it == rules_.end()) return std::nullopt;
  return static_cast<int>(it - rules_.begin());
}

ParseError::ParseError(int line, int col, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(col) + ": " + what),
      line(line),
      col(col) {}

std::string to_string(AttrId a) { return "a" + std::to_string(a.index); }

std::string to_string(Value v) {
  return v.is_star() ? "*" : std::to_string(v.as_int());
}

std::string to_string(const Equation& e) {
  return to_string(e.attr) + "=" + to_string(e.value);
}

std::string to_string(const DecisionRule& r) {
  std::string out;
  for (std::size_t i = 0; i < r.lhs().size(); ++i) {
    if (i > 0) out += " & ";
    out += to_string(r.lhs()[i]);
  }
  if (!out.empty()) out += " ";
  out += "-> " + std::to_string(r.rhs());
  return out;
}

std::string to_string(const Assignment& a) {
  std::string out;
  for (const auto& [attr, v] : a) {
    if (!out.empty()) out += ",";
    out += to_string(attr) + "=" + to_string(v);
  }
  return out;
}

std::string to_dsl(const RuleSystem& s) {
  std::string out;
  for (const auto& r : s.rules()) out += to_string(r) + "\n";
  return out;
}

std::uint64_t system_digest(const RuleSystem& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_dsl(s)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string system_digest_hex(const RuleSystem& s) {
  static const char* hex = "0123456789abcdef";
  std::uint64_t d = system_digest(s);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, d >>= 4) out[i] = hex[d & 0xf];
  return out;
}

bool is_realizable(const RuleSystem& s, const DecisionRule& r,
                   const Assignment& total) {
  for (AttrId a : s.profile().attrs)
    if (!total.contains(a))
      throw std::invalid_argument("realizability: tuple does not bind " +
                                  to_string(a));
  for (const auto& e : r.lhs())
    if (total.value_of(e.attr) != e.value) return false;
  return true;
}

// True iff sub's equations form a subset of sup's (both sorted by attr).
static bool lhs_subset(const DecisionRule& sub, const DecisionRule& sup) {
  return std::includes(sup.lhs().begin(), sup.lhs().end(), sub.lhs().begin(),
                       sub.lhs().end());
}

RuleSystem reduce(const RuleSystem& s, ReduceMode mode) {
  std::vector<DecisionRule> kept;
  for (const auto& r : s.rules()) {
    bool dominated = false;
    for (const auto& other : s.rules()) {
      if (other.length() >= r.length()) continue;
      if (mode == ReduceMode::AD && other.rhs() != r.rhs()) continue;
      if (lhs_subset(other, r)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(r);
  }
  return RuleSystem(std::move(kept));
}

std::vector<std::int64_t> zero_length_decisions(const RuleSystem& s) {
  std::set<std::int64_t> out;
  for (const auto& r : s.rules())
    if (r.length() == 0) out.insert(r.rhs());
  return {out.begin(), out.end()};
}

RuleSystem core_subsystem(const RuleSystem& s, ReduceMode mode) {
  std::vector<DecisionRule> kept;
  if (mode == ReduceMode::SR) {
    for (const auto& r : s.rules())
      if (r.length() == 0) kept.push_back(r);
    if (kept.empty()) return s;
    return RuleSystem(std::move(kept));
  }
  auto d0 = zero_length_decisions(s);
  for (const auto& r : s.rules())
    if (r.length() == 0 || !std::binary_search(d0.begin(), d0.end(), r.rhs()))
      kept.push_back(r);
  return RuleSystem(std::move(kept));
}

std::optional<DecisionRule> restrict_rule(const DecisionRule& r,
                                          const Assignment& alpha) {
  std::vector<Equation> lhs;
  for (const auto& e : r.lhs()) {
    auto bound = alpha.value_of(e.attr);
    if (!bound) {
      lhs.push_back(e);
    } else if (*bound != e.value) {
      return std::nullopt;  // K(r) ∪ alpha inconsistent
    }
    // equal value: equation belongs to alpha, drop it
  }
  return DecisionRule(std::move(lhs), r.rhs());
}

std::optional<RuleSystem> restrict_system(const RuleSystem& s,
                                          const Assignment& alpha) {
  const auto& p = s.profile();
  for (const auto& [a, v] : alpha) {
    if (!p.has_attr(a))
      throw std::invalid_argument("restriction: " + to_string(a) +
                                  " is not in A(S)");
    if (!v.is_star()) {
      const auto& vs = p.values_of(a);
      if (!std::binary_search(vs.begin(), vs.end(), v))
        throw std::invalid_argument("restriction: value " + to_string(v) +
                                    " not in EV_S(" + to_string(a) + ")");
    }
  }
  std::vector<DecisionRule> kept;
  for (const auto& r : s.rules())
    if (auto rr = restrict_rule(r, alpha)) kept.push_back(std::move(*rr));
  if (kept.empty()) return std::nullopt;
  return RuleSystem(std::move(kept));
}

bool for_each_total_tuple(const RuleSystem& s, bool extended,
                          const std::function<bool(const Assignment&)>& fn,
                          std::uint64_t cap) {
  const auto& p = s.profile();
  std::vector<std::vector<Value>> domains;
  std::uint64_t count = 1;
  for (AttrId a : p.attrs) {
    domains.push_back(p.universe_of(a, extended));
    if (count > cap / domains.back().size())
      throw CapExceeded("tuple enumeration exceeds cap of " + std::to_string(cap));
    count *= domains.back().size();
  }
  std::vector<std::size_t> odo(domains.size(), 0);
  while (true) {
    Assignment t;
    for (std::size_t i = 0; i < domains.size(); ++i)
      t.set(p.attrs[i], domains[i][odo[i]]);
    if (!fn(t)) return false;
    std::size_t i = 0;
    for (; i < odo.size(); ++i) {
      if (++odo[i] < domains[i].size()) break;
      odo[i] = 0;
    }
    if (i == odo.size()) return true;
  }
}

bool is_complete(const RuleSystem& s, std::uint64_t tuple_cap) {
  return for_each_total_tuple(
      s, /*extended=*/false,
      [&](const Assignment& t) {
        for (const auto& r : s.rules())
          if (is_realizable(s, r, t)) return true;  // keep scanning tuples
        return false;  // witness of incompleteness
      },
      tuple_cap);
}

namespace {

// Exact minimum hitting set over the distinct nonempty edges.
struct CoverSearch {
  std::vector<std::vector<int>> edges;  // attr positions per edge
  int best;

  void run(std::size_t next_edge, std::vector<char>& chosen, int used) {
    if (used >= best) return;
    // find the first uncovered edge
    for (; next_edge < edges.size(); ++next_edge) {
      bool covered = false;
      for (int v : edges[next_edge])
        if (chosen[v]) {
          covered = true;
          break;
        }
      if (!covered) break;
    }
    if (next_edge == edges.size()) {
      best = used;
      return;
    }
    for (int v : edges[next_edge]) {
      chosen[v] = true;
      run(next_edge + 1, chosen, used + 1);
      chosen[v] = false;
    }
  }
};

}  // namespace

int node_cover_number(const RuleSystem& s, int attr_cap) {
  const auto& p = s.profile();
  if (p.n == 0) return 0;
  if (p.n > attr_cap)
    throw CapExceeded("node cover: " + std::to_string(p.n) +
                      " attributes exceeds cap of " + std::to_string(attr_cap));
  std::map<AttrId, int> pos;
  for (int i = 0; i < p.n; ++i) pos[p.attrs[i]] = i;
  std::set<std::vector<int>> distinct;
  for (const auto& r : s.rules()) {
    if (r.length() == 0) continue;
    std::vector<int> edge;
    for (const auto& e : r.lhs()) edge.push_back(pos[e.attr]);
    distinct.insert(std::move(edge));
  }
  if (distinct.empty()) return 0;
  CoverSearch search;
  search.edges.assign(distinct.begin(), distinct.end());
  // smaller edges first: branches less
  std::sort(search.edges.begin(), search.edges.end(),
            [](const auto& a, const auto& b) { return a.size() < b.size(); });
  search.best = p.n;
  std::vector<char> chosen(p.n, 0);
  search.run(0, chosen, 0);
  return search.best;
}

}  // namespace ruletree
