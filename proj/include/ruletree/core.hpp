#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ruletree {

// Attribute a<index>, index >= 0.
struct AttrId {
  int index = 0;
  friend constexpr auto operator<=>(AttrId, AttrId) = default;
};

// A nonnegative integer value or the reserved token `*`, which acts as a
// value distinct from every integer occurring in a system.  Ordering puts
// integers first (ascending) and `*` after all of them.
class Value {
 public:
  constexpr Value() = default;

  static constexpr Value star() { return Value(kStarCode); }
  static constexpr Value integer(std::int64_t v) {
    return v < 0 ? throw std::invalid_argument("Value: negative integer")
                 : Value(v);
  }

  constexpr bool is_star() const { return code_ == kStarCode; }
  constexpr std::int64_t as_int() const {
    return is_star() ? throw std::logic_error("Value: `*` has no integer form")
                     : code_;
  }

  friend constexpr bool operator==(Value, Value) = default;
  friend constexpr auto operator<=>(Value a, Value b) {
    // kStarCode is -1 internally; compare with star mapped above all ints.
    const bool as = a.is_star(), bs = b.is_star();
    if (as != bs) return as <=> bs;
    return a.code_ <=> b.code_;
  }

 private:
  static constexpr std::int64_t kStarCode = -1;
  constexpr explicit Value(std::int64_t code) : code_(code) {}
  std::int64_t code_ = 0;
};

struct Equation {
  AttrId attr;
  Value value;
  friend constexpr auto operator<=>(const Equation&, const Equation&) = default;
};

// False iff some attribute occurs with two distinct values. Repeats of the
// same equation are allowed.
bool is_consistent(std::span<const Equation> eqs);

// Left-hand side is kept sorted by attribute; attributes are pairwise
// distinct and the values are integers (`*` never occurs in a rule).
class DecisionRule {
 public:
  DecisionRule(std::vector<Equation> lhs, std::int64_t rhs);

  const std::vector<Equation>& lhs() const { return lhs_; }
  std::int64_t rhs() const { return rhs_; }
  std::size_t length() const { return lhs_.size(); }

  bool has_attr(AttrId a) const;
  std::optional<Value> value_of(AttrId a) const;

  friend bool operator==(const DecisionRule&, const DecisionRule&) = default;

 private:
  std::vector<Equation> lhs_;
  std::int64_t rhs_ = 0;
};

struct SystemProfile {
  int n = 0;  // |A(S)|
  int d = 0;  // max rule length
  int k = 0;  // max |V_S(a)|
  std::vector<AttrId> attrs;          // A(S), ascending
  std::vector<std::int64_t> decisions;  // D(S), ascending
  std::map<AttrId, std::vector<Value>> values;  // V_S(a), ascending ints

  bool has_attr(AttrId a) const { return values.count(a) != 0; }
  const std::vector<Value>& values_of(AttrId a) const;
  // V_S(a) plus `*` (the e-tree branching universe).
  std::vector<Value> ev_values_of(AttrId a) const;
  // values_of or ev_values_of depending on the flag.
  std::vector<Value> universe_of(AttrId a, bool extended) const;
};

// A consistent partial map attribute -> value. Used for the equation
// systems alpha, for path systems K(xi) once deduplicated, and for total
// tuples over A(S).
class Assignment {
 public:
  Assignment() = default;

  // nullopt if the equations are inconsistent.
  static std::optional<Assignment> from_equations(std::span<const Equation> eqs);

  // False (and no change) if `a` is already bound to a different value.
  bool try_set(AttrId a, Value v);
  void set(AttrId a, Value v);  // throws on conflict

  std::optional<Assignment> merged(const Assignment& other) const;

  bool contains(AttrId a) const { return entries_.count(a) != 0; }
  std::optional<Value> value_of(AttrId a) const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  friend bool operator==(const Assignment&, const Assignment&) = default;
  friend auto operator<=>(const Assignment&, const Assignment&) = default;

 private:
  std::map<AttrId, Value> entries_;
};

// Finite nonempty set of decision rules. Construction deduplicates
// (same lhs set and same rhs) keeping first occurrence; the surviving
// order is the canonical index order used by terminal labels everywhere.
class RuleSystem {
 public:
  explicit RuleSystem(std::vector<DecisionRule> rules);

  const std::vector<DecisionRule>& rules() const { return rules_; }
  std::size_t size() const { return rules_.size(); }
  const DecisionRule& operator[](std::size_t i) const { return rules_[i]; }
  const SystemProfile& profile() const { return profile_; }

  // Index of an equal rule, if present.
  std::optional<int> index_of(const DecisionRule& r) const;

  friend bool operator==(const RuleSystem&, const RuleSystem&) = default;

 private:
  std::vector<DecisionRule> rules_;
  SystemProfile profile_;
};

enum class ReduceMode { SR, AD };

struct ParseError : std::runtime_error {
  ParseError(int line, int col, const std::string& what);
  int line = 0;
  int col = 0;
};

struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- DSL ---------------------------------------------------------------
// Line oriented; `#` lines are comments; rule = [eq (`&` eq)*] `->` uint;
// eq = a<uint> `=` <uint>; an empty left-hand side is just `-> uint`.
RuleSystem parse_system(std::string_view text);
// Comma separated `a<i>=<uint|*>` literals; empty text is the empty map.
Assignment parse_assignment(std::string_view text);

std::string to_string(AttrId a);
std::string to_string(Value v);
std::string to_string(const Equation& e);
std::string to_string(const DecisionRule& r);
std::string to_string(const Assignment& a);
std::string to_dsl(const RuleSystem& s);

// FNV-1a of the canonical DSL text; pairs trees with the system they
// were built for.
std::uint64_t system_digest(const RuleSystem& s);
std::string system_digest_hex(const RuleSystem& s);

// --- System-level operations --------------------------------------------

// True iff K(r) is a subset of the equations of `total`; requires `total`
// to bind every attribute of A(S).
bool is_realizable(const RuleSystem& s, const DecisionRule& r,
                   const Assignment& total);

// Keep r iff no other rule's lhs is a proper subset of r's (AD: only
// among rules with the same rhs).
RuleSystem reduce(const RuleSystem& s, ReduceMode mode);

// I_SR / I_AD, the subsystems entering the cover-based lower bounds.
RuleSystem core_subsystem(const RuleSystem& s, ReduceMode mode);

// D_0(S): decisions of the length-0 rules.
std::vector<std::int64_t> zero_length_decisions(const RuleSystem& s);

// Rule with alpha's equations removed from the lhs; nullopt if
// K(r) ∪ alpha is inconsistent.
std::optional<DecisionRule> restrict_rule(const DecisionRule& r,
                                          const Assignment& alpha);

// S_alpha. The empty result is a legitimate outcome (nullopt), not an
// error; alpha attributes must lie in A(S) with values from EV_S.
std::optional<RuleSystem> restrict_system(const RuleSystem& s,
                                          const Assignment& alpha);

inline constexpr std::uint64_t kDefaultCompletenessCap = std::uint64_t{1} << 22;

// Enumerates the total tuples of V(S) (or EV(S) when extended); stops and
// returns false as soon as `fn` returns false. Throws CapExceeded when the
// product size exceeds `cap`.
bool for_each_total_tuple(const RuleSystem& s, bool extended,
                          const std::function<bool(const Assignment&)>& fn,
                          std::uint64_t cap = kDefaultCompletenessCap);

// True iff every tuple of V(S) keeps at least one rule's equations
// consistent; n(S)=0 counts as complete.
bool is_complete(const RuleSystem& s,
                 std::uint64_t tuple_cap = kDefaultCompletenessCap);

// beta(S): minimum node cover of the hypergraph with nodes A(S) and edges
// {A(r)}; exact branch and bound.
int node_cover_number(const RuleSystem& s, int attr_cap = 30);

}  // namespace ruletree
