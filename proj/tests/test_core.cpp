#include <doctest.h>

#include <random>

#include "ruletree/core.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace ruletree;

TEST_CASE("parsing the three-rule mixed system") {
  RuleSystem s = parse_system(fixtures::kMixedThree);
  REQUIRE(s.size() == 3);
  const auto& p = s.profile();
  CHECK(p.n == 4);
  CHECK(p.d == 3);
  CHECK(p.k == 3);
  CHECK(p.attrs == std::vector<AttrId>({{1}, {2}, {3}, {4}}));
  CHECK(p.decisions == std::vector<std::int64_t>({3, 4, 5}));
  CHECK(p.values_of(AttrId{1}) ==
        std::vector<Value>({Value::integer(0), Value::integer(1), Value::integer(2)}));
  auto ev = p.ev_values_of(AttrId{1});
  REQUIRE(ev.size() == 4);
  CHECK(ev.back().is_star());
}

TEST_CASE("empty left-hand side and degenerate profile") {
  RuleSystem s = parse_system("-> 7");
  REQUIRE(s.size() == 1);
  CHECK(s[0].length() == 0);
  CHECK(s.profile().n == 0);
  CHECK(s.profile().d == 0);
  CHECK(s.profile().k == 0);
  CHECK(s.profile().decisions == std::vector<std::int64_t>({7}));
}

TEST_CASE("rules are a set") {
  CHECK(parse_system("a1=0 -> 2\na1=0 -> 2\n").size() == 1);
  // same lhs as a set, same rhs
  CHECK(parse_system("a1=0 & a2=1 -> 3\na2=1 & a1=0 -> 3\n").size() == 1);
  // differing rhs keeps both
  CHECK(parse_system("a1=0 -> 2\na1=0 -> 3\n").size() == 2);
}

TEST_CASE("parse errors carry a location") {
  CHECK_THROWS_AS(parse_system(""), ParseError);
  CHECK_THROWS_AS(parse_system("# only a comment\n"), ParseError);
  CHECK_THROWS_AS(parse_system("a1=0 & a1=1 -> 0\n"), ParseError);
  CHECK_THROWS_AS(parse_system("a1=* -> 0\n"), ParseError);
  try {
    parse_system("a1=0 -> 1\nb2=0 -> 2\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.col >= 1);
  }
  try {
    parse_system("a1=0 & a2 -> 1\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
    CHECK(e.col > 8);
  }
}

TEST_CASE("profile counts values per attribute") {
  RuleSystem s = parse_system("a1=0 -> 0\na1=1 -> 0\n");
  CHECK(s.profile().n == 1);
  CHECK(s.profile().d == 1);
  CHECK(s.profile().k == 2);
}

TEST_CASE("consistency of equation multisets") {
  auto eqs = [](std::vector<std::pair<int, std::optional<int>>> raw) {
    std::vector<Equation> out;
    for (auto [a, v] : raw)
      out.push_back({AttrId{a}, v ? Value::integer(*v) : Value::star()});
    return out;
  };
  CHECK_FALSE(is_consistent(eqs({{1, 0}, {1, 1}})));
  CHECK(is_consistent(eqs({})));
  CHECK(is_consistent(eqs({{1, 0}, {2, std::nullopt}, {1, 0}})));
  CHECK_FALSE(is_consistent(eqs({{1, 0}, {1, std::nullopt}})));
}

TEST_CASE("realizability") {
  RuleSystem s = parse_system(fixtures::kRealizablePair);
  Assignment t;
  t.set(AttrId{1}, Value::integer(0));
  t.set(AttrId{2}, Value::integer(0));
  t.set(AttrId{3}, Value::integer(0));
  CHECK(is_realizable(s, s[0], t));
  CHECK_FALSE(is_realizable(s, s[1], t));

  RuleSystem empty_lhs = parse_system("-> 4\na1=0 -> 5\n");
  Assignment u;
  u.set(AttrId{1}, Value::star());
  CHECK(is_realizable(empty_lhs, empty_lhs[0], u));
  CHECK_FALSE(is_realizable(empty_lhs, empty_lhs[1], u));

  Assignment partial;  // misses a3
  partial.set(AttrId{1}, Value::integer(0));
  partial.set(AttrId{2}, Value::integer(0));
  CHECK_THROWS_AS(is_realizable(s, s[0], partial), std::invalid_argument);
}

TEST_CASE("realizability agrees with a subset-test oracle") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 4)(rng);
    std::vector<DecisionRule> rules;
    const int m = std::uniform_int_distribution<int>(1, 5)(rng);
    for (int r = 0; r < m; ++r) {
      std::vector<Equation> lhs;
      for (int a = 1; a <= n; ++a)
        if (std::uniform_int_distribution<int>(0, 1)(rng))
          lhs.push_back({AttrId{a},
                         Value::integer(std::uniform_int_distribution<int>(0, 2)(rng))});
      rules.push_back(DecisionRule(std::move(lhs), 0));
    }
    RuleSystem s(std::move(rules));
    Assignment t;
    std::vector<Equation> t_eqs;
    for (AttrId a : s.profile().attrs) {
      const auto& vs = s.profile().values_of(a);
      Value v = std::uniform_int_distribution<int>(0, 3)(rng) == 0
                    ? Value::star()
                    : vs[std::uniform_int_distribution<std::size_t>(0, vs.size() - 1)(rng)];
      t.set(a, v);
      t_eqs.push_back({a, v});
    }
    std::sort(t_eqs.begin(), t_eqs.end());
    for (const auto& r : s.rules()) {
      // independent route: sorted-sequence subset inclusion
      bool expected = std::includes(t_eqs.begin(), t_eqs.end(), r.lhs().begin(),
                                    r.lhs().end());
      CHECK(is_realizable(s, r, t) == expected);
    }
  }
}

TEST_CASE("reductions of the chain system") {
  RuleSystem s = parse_system(fixtures::kChainReduce);
  CHECK(reduce(s, ReduceMode::AD) == parse_system("a1=0 & a2=0 -> 0\na1=0 -> 1\n"));
  CHECK(reduce(s, ReduceMode::SR) == parse_system("a1=0 -> 1\n"));
}

TEST_CASE("reduce is an idempotent filter") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 4)(rng);
    std::vector<DecisionRule> rules;
    const int m = std::uniform_int_distribution<int>(1, 7)(rng);
    for (int r = 0; r < m; ++r) {
      std::vector<Equation> lhs;
      for (int a = 1; a <= n; ++a)
        if (std::uniform_int_distribution<int>(0, 1)(rng))
          lhs.push_back({AttrId{a},
                         Value::integer(std::uniform_int_distribution<int>(0, 1)(rng))});
      rules.push_back(DecisionRule(std::move(lhs),
                                   std::uniform_int_distribution<int>(0, 2)(rng)));
    }
    RuleSystem s(std::move(rules));
    for (ReduceMode mode : {ReduceMode::SR, ReduceMode::AD}) {
      RuleSystem r1 = reduce(s, mode);
      CHECK(reduce(r1, mode) == r1);
      CHECK(r1.size() <= s.size());
      CHECK(r1.profile().n <= s.profile().n);
      for (const auto& r : r1.rules()) CHECK(s.index_of(r).has_value());
    }
  }
}

TEST_CASE("core subsystems of the zero-length mix") {
  RuleSystem s = parse_system(fixtures::kZeroLenMix);
  CHECK(core_subsystem(s, ReduceMode::SR) == parse_system("-> 1\n-> 2\n"));
  CHECK(core_subsystem(s, ReduceMode::AD) == parse_system("a1=0 -> 0\n-> 1\n-> 2\n"));

  RuleSystem no_zero = parse_system(fixtures::kTriangle);
  CHECK(core_subsystem(no_zero, ReduceMode::SR) == no_zero);
  RuleSystem all_zero = parse_system("-> 1\n-> 2\n");
  CHECK(core_subsystem(all_zero, ReduceMode::AD) == all_zero);
}

TEST_CASE("restriction") {
  RuleSystem s = parse_system(fixtures::kTriangle);
  auto sa = restrict_system(s, parse_assignment("a3=0"));
  REQUIRE(sa.has_value());
  CHECK(*sa == parse_system("a1=0 & a2=0 -> 0\na1=1 -> 0\n"));

  CHECK(restrict_system(s, Assignment{}) == s);

  RuleSystem square = parse_system(fixtures::kIncompleteSquare);
  auto sq = restrict_system(square, parse_assignment("a2=0"));
  REQUIRE(sq.has_value());
  CHECK(*sq == parse_system("a1=0 -> 0\na1=1 -> 0\n"));

  CHECK_THROWS_AS(restrict_system(s, parse_assignment("a9=0")),
                  std::invalid_argument);
  CHECK_THROWS_AS(restrict_system(s, parse_assignment("a1=7")),
                  std::invalid_argument);

  // `*` keeps no rule of a single-rule system: a distinct empty outcome
  RuleSystem one = parse_system("a1=0 -> 0\n");
  CHECK_FALSE(restrict_system(one, parse_assignment("a1=*")).has_value());
}

TEST_CASE("restriction composes") {
  std::mt19937_64 rng(11);
  int exercised = 0;
  for (int trial = 0; trial < 200 && exercised < 60; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 4)(rng);
    std::vector<DecisionRule> rules;
    const int m = std::uniform_int_distribution<int>(2, 6)(rng);
    for (int r = 0; r < m; ++r) {
      std::vector<Equation> lhs;
      for (int a = 1; a <= n; ++a)
        if (std::uniform_int_distribution<int>(0, 1)(rng))
          lhs.push_back({AttrId{a},
                         Value::integer(std::uniform_int_distribution<int>(0, 1)(rng))});
      rules.push_back(DecisionRule(std::move(lhs), 0));
    }
    RuleSystem s(std::move(rules));
    auto pick = [&](const RuleSystem& sys) {
      Assignment alpha;
      for (AttrId a : sys.profile().attrs) {
        if (std::uniform_int_distribution<int>(0, 2)(rng) != 0) continue;
        const auto& vs = sys.profile().values_of(a);
        alpha.set(a, std::uniform_int_distribution<int>(0, 3)(rng) == 0
                         ? Value::star()
                         : vs[std::uniform_int_distribution<std::size_t>(
                               0, vs.size() - 1)(rng)]);
      }
      return alpha;
    };
    Assignment alpha = pick(s);
    auto sa = restrict_system(s, alpha);
    if (!sa) continue;
    Assignment beta = pick(*sa);
    auto merged = alpha.merged(beta);
    REQUIRE(merged.has_value());  // disjoint attribute sets
    auto two_step = restrict_system(*sa, beta);
    auto one_step = restrict_system(s, *merged);
    CHECK(two_step.has_value() == one_step.has_value());
    if (two_step && one_step) CHECK(*two_step == *one_step);
    ++exercised;
  }
  CHECK(exercised > 20);
}

TEST_CASE("completeness") {
  CHECK_FALSE(is_complete(parse_system(fixtures::kIncompleteSquare)));
  CHECK(is_complete(parse_system("a1=0 -> 0\na2=0 -> 0\na3=0 -> 0\n")));
  CHECK(is_complete(parse_system("-> 3\n")));

  // |V(S)| = 2^23 blows the default enumeration cap
  std::string big;
  for (int i = 1; i <= 23; ++i)
    big += "a" + std::to_string(i) + "=0 -> 0\na" + std::to_string(i) + "=1 -> 0\n";
  CHECK_THROWS_AS(is_complete(parse_system(big)), CapExceeded);
}

TEST_CASE("node cover") {
  CHECK(node_cover_number(parse_system(fixtures::kTriangle)) == 2);
  CHECK(node_cover_number(parse_system("-> 1\n-> 2\n")) == 0);
  CHECK(node_cover_number(parse_system("a1=0 -> 0\na2=0 -> 0\na3=0 -> 0\n")) == 3);
  RuleSystem wide = parse_system("a1=0 & a2=0 -> 0\na1=1 & a3=0 -> 0\n");
  CHECK(node_cover_number(wide) == 1);
}

TEST_CASE("node cover equals the brute-force minimum") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 7)(rng);
    std::vector<DecisionRule> rules;
    const int m = std::uniform_int_distribution<int>(1, 8)(rng);
    for (int r = 0; r < m; ++r) {
      std::vector<Equation> lhs;
      for (int a = 1; a <= n; ++a)
        if (std::uniform_int_distribution<int>(0, 2)(rng) == 0)
          lhs.push_back({AttrId{a}, Value::integer(0)});
      rules.push_back(DecisionRule(std::move(lhs), r));
    }
    RuleSystem s(std::move(rules));
    CHECK(node_cover_number(s) == oracle::node_cover(s));
  }
}

TEST_CASE("digest distinguishes systems and tracks rule order") {
  RuleSystem a = parse_system("a1=0 -> 0\na2=0 -> 1\n");
  RuleSystem b = parse_system("a2=0 -> 1\na1=0 -> 0\n");
  RuleSystem c = parse_system("a1=0 -> 0\na2=0 -> 1\n");
  CHECK(system_digest_hex(a) == system_digest_hex(c));
  CHECK(system_digest_hex(a) != system_digest_hex(b));
  CHECK(system_digest_hex(a).size() == 16);
}

TEST_CASE("assignment literals") {
  Assignment a = parse_assignment("a1=0,a3=*");
  CHECK(a.size() == 2);
  CHECK(a.value_of(AttrId{1}) == Value::integer(0));
  CHECK(a.value_of(AttrId{3}) == Value::star());
  CHECK(parse_assignment("").empty());
  CHECK_THROWS_AS(parse_assignment("a1=0,a1=1"), ParseError);
  CHECK_THROWS_AS(parse_assignment("a1="), ParseError);
}
