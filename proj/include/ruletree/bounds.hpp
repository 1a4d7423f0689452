#pragma once

#include <string>

#include "ruletree/trees.hpp"

namespace ruletree {

enum class Extremum { MIN, MAX };

struct BoundQuery {
  ProblemKind problem = ProblemKind::SR;
  bool reduced = false;  // restrict the class to SR-/AD-reduced systems
  Extremum extremum = Extremum::MIN;
  int n = 1;
  int d = 1;
  int k = 1;
};

struct BoundInterval {
  double lower = 0;
  double upper = 0;
  bool exact = false;  // the class value is known, not just bracketed
  std::string case_label;
};

// Unimprovable class bounds on the minimum tree depth at parameters
// (n, d, k): the class maximum (MAX) is known exactly everywhere, the
// class minimum (MIN) exactly except for AR/EAR with d,k >= 2 and the
// extended reduced problems, where a bracket is returned. Raw formula
// values are kept: fractional lower ends are not rounded up.
BoundInterval theorem_bounds(const BoundQuery& q);

// Smallest t >= 1 with t >= (n*k)^(1/d) / k, computed in integers.
int ceil_root_ratio(int n, int d, int k);

std::string to_string(const BoundInterval& b);

}  // namespace ruletree
