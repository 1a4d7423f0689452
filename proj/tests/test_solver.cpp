#include <doctest.h>

#include <random>

#include "ruletree/generators.hpp"
#include "ruletree/solver.hpp"
#include "ruletree/tree_io.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace ruletree;

namespace {

// every solve must hand back a matching verified witness
int solved(const RuleSystem& s, ProblemKind c) {
  SolveResult r = min_depth(s, c);
  REQUIRE(verify(r.tree, s, c).ok);
  REQUIRE(depth(r.tree) == r.depth);
  return r.depth;
}

}  // namespace

TEST_CASE("terminal labels on the nested chain") {
  RuleSystem s = parse_system(fixtures::kNestedChain);
  Assignment total;
  for (int a : {1, 2, 3}) total.set(AttrId{a}, Value::integer(0));

  auto ar = terminal_label(s, total, ProblemKind::AR);
  REQUIRE(ar.has_value());
  CHECK(*ar == std::vector<int>({0, 1, 2}));

  CHECK_FALSE(terminal_label(s, Assignment{}, ProblemKind::AR).has_value());

  // a value universe mismatch is an error, not a result
  Assignment starred;
  starred.set(AttrId{1}, Value::star());
  CHECK_THROWS_AS(terminal_label(s, starred, ProblemKind::AR),
                  std::invalid_argument);
  CHECK(terminal_label(s, starred, ProblemKind::EAR).has_value());
}

TEST_CASE("an empty-lhs rule answers some-rules immediately") {
  RuleSystem s = parse_system("-> 0\na1=0 & a2=0 -> 0\na3=0 -> 0\n");
  auto sr = terminal_label(s, Assignment{}, ProblemKind::SR);
  REQUIRE(sr.has_value());
  CHECK(*sr == std::vector<int>({0}));
  CHECK_FALSE(terminal_label(s, Assignment{}, ProblemKind::AR).has_value());
}

TEST_CASE("empty labels certify dead ends") {
  RuleSystem s = parse_system("a1=0 -> 0\n");
  Assignment alpha;
  alpha.set(AttrId{1}, Value::star());
  auto esr = terminal_label(s, alpha, ProblemKind::ESR);
  REQUIRE(esr.has_value());
  CHECK(esr->empty());
}

TEST_CASE("known depths") {
  CHECK(solved(parse_system("a1=0 -> 0\na2=0 -> 0\na3=0 -> 0\n"),
               ProblemKind::SR) == 1);

  RuleSystem zero = gen_family({Family::Lemma16Zero, 3, 2, 2}).system;
  for (ProblemKind c :
       {ProblemKind::SR, ProblemKind::AD, ProblemKind::ESR, ProblemKind::EAD})
    CHECK(solved(zero, c) == 0);

  RuleSystem window = gen_family({Family::Lemma12K1, 4, 2, 1}).system;
  CHECK(solved(window, ProblemKind::SR) == 2);

  RuleSystem triple = parse_system(fixtures::kBranchTriple);
  CHECK(solved(triple, ProblemKind::AR) == oracle::min_depth(triple, ProblemKind::AR));
  CHECK(solved(triple, ProblemKind::AR) == 2);
}

TEST_CASE("solver matches the exhaustive re-querying search") {
  std::mt19937_64 rng(23);
  const std::vector<ProblemKind> problems = {ProblemKind::AR, ProblemKind::EAR,
                                             ProblemKind::AD, ProblemKind::EAD,
                                             ProblemKind::SR, ProblemKind::ESR};
  for (int trial = 0; trial < 30; ++trial) {
    int n = std::uniform_int_distribution<int>(1, 3)(rng);
    int d = std::uniform_int_distribution<int>(1, n)(rng);
    RuleSystem s = random_system(n, d, 2, 6000 + trial);
    for (ProblemKind c : problems) {
      INFO("system:\n" << to_dsl(s) << "problem: " << to_string(c));
      CHECK(solved(s, c) == oracle::min_depth(s, c));
    }
  }
}

TEST_CASE("the solved-problem lattice holds") {
  for (int trial = 0; trial < 15; ++trial) {
    RuleSystem s = random_system(4, 2, 2, 7000 + trial);
    int sr = solved(s, ProblemKind::SR), ad = solved(s, ProblemKind::AD),
        ar = solved(s, ProblemKind::AR), esr = solved(s, ProblemKind::ESR),
        ead = solved(s, ProblemKind::EAD), ear = solved(s, ProblemKind::EAR);
    CHECK(sr <= ad);
    CHECK(ad <= ar);
    CHECK(esr <= ead);
    CHECK(ead <= ear);
    CHECK(ear <= s.profile().n);
    CHECK(sr <= esr);
    CHECK(ad <= ead);
    CHECK(ar <= ear);
  }
}

TEST_CASE("degenerate systems solve in zero queries") {
  RuleSystem s = parse_system("-> 1\n-> 2\n-> 1\n");  // dedupes to two rules
  REQUIRE(s.size() == 2);
  for (ProblemKind c : {ProblemKind::AR, ProblemKind::EAR, ProblemKind::AD,
                        ProblemKind::EAD, ProblemKind::SR, ProblemKind::ESR}) {
    SolveResult r = min_depth(s, c);
    CHECK(r.depth == 0);
    CHECK(verify(r.tree, s, c).ok);
    REQUIRE(r.tree.root().is_terminal());
    if (c == ProblemKind::AR || c == ProblemKind::EAR)
      CHECK(r.tree.root().rules == std::vector<int>({0, 1}));
    if (c == ProblemKind::AD || c == ProblemKind::EAD)
      CHECK(r.tree.root().rules == std::vector<int>({0, 1}));
    if (c == ProblemKind::SR || c == ProblemKind::ESR)
      CHECK(r.tree.root().rules == std::vector<int>({0}));
  }

  RuleSystem dup = parse_system("-> 1\n-> 2\n-> 3\n");
  SolveResult ad = min_depth(dup, ProblemKind::AD);
  CHECK(ad.tree.root().rules == std::vector<int>({0, 1, 2}));
}

TEST_CASE("caps raise with a verified interval") {
  RuleSystem s = gen_family({Family::Lemma13Union, 5, 2, 2}).system;
  try {
    min_depth(s, ProblemKind::AR, SolveLimits{3, 60.0});
    FAIL("expected the state cap to trip");
  } catch (const SolveCapExceeded& e) {
    CHECK(e.lower_bound >= 0);
    CHECK(e.upper_bound == 5);
    CHECK(e.lower_bound <= e.upper_bound);
  }
}

TEST_CASE("solves are deterministic") {
  RuleSystem s = random_system(4, 2, 3, 99);
  SolveResult a = min_depth(s, ProblemKind::EAD);
  SolveResult b = min_depth(s, ProblemKind::EAD);
  CHECK(tree_to_json(a.tree, s) == tree_to_json(b.tree, s));
}

TEST_CASE("witness trees pick the lowest minimizing attribute first") {
  // both a1 and a2 are optimal first queries; the witness must take a1
  RuleSystem s = parse_system("a1=0 & a2=0 -> 0\n");
  SolveResult r = min_depth(s, ProblemKind::AR);
  CHECK(r.depth == 2);
  REQUIRE_FALSE(r.tree.root().is_terminal());
  CHECK(*r.tree.root().attr == AttrId{1});
}
