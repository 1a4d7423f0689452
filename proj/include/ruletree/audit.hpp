#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ruletree/trees.hpp"

namespace ruletree {

struct AuditConfig {
  int max_n = 5;
  int max_k = 3;
  int trials = 60;
  std::uint64_t seed = 1;
  std::vector<ProblemKind> problems = {ProblemKind::AR, ProblemKind::EAR,
                                       ProblemKind::AD, ProblemKind::EAD,
                                       ProblemKind::SR, ProblemKind::ESR};
  bool exhaustive_tiny = false;
  // Test hook: corrupts one witness family so the harness must flag it.
  bool inject_fault = false;

  bool has(ProblemKind c) const;
};

struct AuditCheck {
  std::string name;
  int passed = 0;
  int failed = 0;
  std::vector<std::string> failures;  // replayable artifacts

  void expect(bool ok, const std::string& what, const std::string& artifact = "");
};

struct AuditReport {
  std::vector<AuditCheck> checks;
  double elapsed_seconds = 0;

  int total_failed() const;
  // Deterministic body: counts and artifacts, no timings.
  std::string to_text() const;
};

// The individual suites; run_audit strings them together.
void audit_example_regression(AuditCheck& out);
void audit_witness_families(const AuditConfig& cfg, AuditCheck& out);
void audit_constructive_bounds(AuditCheck& out);
void audit_random_inequalities(const AuditConfig& cfg, AuditCheck& out);
void audit_tree_surgery(const AuditConfig& cfg, AuditCheck& out);
void audit_exhaustive_tiny(AuditCheck& out);

AuditReport run_audit(const AuditConfig& cfg);

}  // namespace ruletree
