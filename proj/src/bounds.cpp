#include "ruletree/bounds.hpp"

#include <cmath>

namespace ruletree {

int ceil_root_ratio(int n, int d, int k) {
  if (n < 1 || d < 1 || k < 1)
    throw std::invalid_argument("ceil_root_ratio: parameters must be positive");
  // smallest t with (t*k)^d >= n*k
  auto reaches = [&](long long t) {
    unsigned __int128 prod = 1;
    const unsigned __int128 target =
        static_cast<unsigned __int128>(n) * static_cast<unsigned __int128>(k);
    for (int i = 0; i < d; ++i) {
      prod *= static_cast<unsigned __int128>(t) * k;
      if (prod >= target) return true;
    }
    return prod >= target;
  };
  long long t = 1;
  while (!reaches(t)) ++t;
  return static_cast<int>(t);
}

static bool is_reducible_problem(ProblemKind c) {
  return c == ProblemKind::SR || c == ProblemKind::ESR || c == ProblemKind::AD ||
         c == ProblemKind::EAD;
}

static BoundInterval exact(double v, std::string label) {
  return {v, v, true, std::move(label)};
}

BoundInterval theorem_bounds(const BoundQuery& q) {
  if (q.n < 1 || q.d < 1 || q.k < 1)
    throw std::invalid_argument("bounds: n, d, k must be positive");
  if (q.d > q.n) throw std::invalid_argument("bounds: d must not exceed n");
  if (q.reduced && !is_reducible_problem(q.problem))
    throw std::invalid_argument("bounds: the reduced classes exist only for "
                                "SR, ESR, AD, EAD");
  const double n = q.n, d = q.d, k = q.k;

  if (q.extremum == Extremum::MAX) {
    const std::string h = std::string("H") + (q.reduced ? "^R" : "") + "[" +
                          to_string(q.problem) + "]";
    // The class maximum equals n everywhere except for SR.
    if (q.problem == ProblemKind::SR) {
      if (q.d == 1) return exact(1, h + " = 1 when d=1");
      if (q.k == 1) return exact(d, h + " = d when k=1");
      return exact(n, h + " = n when d>1 and k>1");
    }
    return exact(n, h + " = n");
  }

  // class minima
  switch (q.problem) {
    case ProblemKind::AR:
    case ProblemKind::EAR: {
      if (q.k == 1 || q.d == 1)
        return exact(n, "h[" + to_string(q.problem) + "] = n when d=1 or k=1");
      double lower = std::max(d, n * (k - 1) / std::pow(k, d));
      double upper = d + n / std::pow(k, d - 1);
      return {lower, upper, false,
              "h[" + to_string(q.problem) +
                  "] in [max{d, n(k-1)/k^d}, d + n/k^(d-1)]"};
    }
    case ProblemKind::SR:
    case ProblemKind::AD:
    case ProblemKind::ESR:
    case ProblemKind::EAD:
      if (!q.reduced)
        return exact(0, "h[" + to_string(q.problem) + "] = 0");
      if (q.problem == ProblemKind::SR || q.problem == ProblemKind::AD) {
        if (q.d == q.n)
          return exact(n, "h^R[" + to_string(q.problem) + "] = n when d=n");
        return exact(1, "h^R[" + to_string(q.problem) + "] = 1 when d<n");
      }
      {
        double root = std::pow(n * k, 1.0 / d) / k;
        double lower = std::max(d, root - d);
        double upper = 2.0 * d * ceil_root_ratio(q.n, q.d, q.k);
        return {lower, upper, false,
                "h^R[" + to_string(q.problem) +
                    "] in [max{d, (nk)^(1/d)/k - d}, 2d*ceil((nk)^(1/d)/k)]"};
      }
  }
  throw std::logic_error("unreachable");
}

std::string to_string(const BoundInterval& b) {
  auto fmt = [](double v) {
    if (v == static_cast<long long>(v))
      return std::to_string(static_cast<long long>(v));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::string(buf);
  };
  if (b.exact) return fmt(b.lower);
  return "[" + fmt(b.lower) + ", " + fmt(b.upper) + "]";
}

}  // namespace ruletree
