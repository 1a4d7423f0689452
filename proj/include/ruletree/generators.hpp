#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ruletree/trees.hpp"

namespace ruletree {

// The named witness families. The lemma-numbered names are the stable
// external identifiers used by the CLI.
enum class Family {
  Lemma12D1,       // d=1: k values on a1 plus singleton tail
  Lemma12K1,       // k=1: sliding window of length-d rules
  Lemma12Cyclic,   // d,k>=2: cycle rules forcing every attribute
  Lemma13Union,    // long rule + singleton tail + foreign a1 values
  Lemma16Zero,     // contains "-> 0": depth 0 for SR/AD/ESR/EAD
  Lemma17Reduced,  // d<n reduced system solvable in one query
  Lemma20Ear,      // block construction with a certified EAR tree
  Lemma23Esr,      // recursive construction with a certified ESR tree
  CompleteChain,   // (a_i=0)->0 for all i: complete, beta = n
  LongPair,        // (a1=0)->0 plus one long rule: reduced, depth 1
  Incomplete3,     // fixed 3-rule incomplete system
  ParamWitness,    // SR- and AD-reduced system with exact (n,d,k)
};

std::optional<Family> family_from_string(std::string_view name);
std::string to_string(Family f);
std::vector<std::string> family_names();

struct FamilySpec {
  Family family = Family::ParamWitness;
  int n = 1;
  int d = 1;
  int k = 1;
};

struct GeneratedSystem {
  RuleSystem system;
  // Constructive families also return the strategy tree together with the
  // problem it provably solves.
  std::optional<DecisionTree> tree;
  std::optional<ProblemKind> tree_problem;
};

// Builds the family and checks the asserted profile/reducedness, throwing
// std::logic_error if the construction ever failed to deliver them.
GeneratedSystem gen_family(const FamilySpec& spec);

struct RandomSystemOptions {
  bool sr_reduced = false;
  bool ad_reduced = false;
  bool force_exact_params = false;
  int retry_cap = 1000;
};

// Seedable random system with profile bounded by (n, d, k); rejection
// sampling enforces exact parameters and reducedness when requested.
RuleSystem random_system(int n, int d, int k, std::uint64_t seed,
                         const RandomSystemOptions& opts = {});

}  // namespace ruletree
