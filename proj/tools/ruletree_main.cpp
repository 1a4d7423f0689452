#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ruletree/audit.hpp"
#include "ruletree/bounds.hpp"
#include "ruletree/generators.hpp"
#include "ruletree/solver.hpp"
#include "ruletree/tree_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitVerify = 3;
constexpr int kExitCap = 4;
constexpr int kExitAudit = 5;

bool log_enabled() {
  const char* v = std::getenv("RULETREE_LOG");
  return v != nullptr && *v != '\0';
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

ruletree::RuleSystem load_system(const std::string& path) {
  return ruletree::parse_system(slurp(path));
}

ruletree::ProblemKind parse_problem(const std::string& name) {
  auto c = ruletree::problem_from_string(name);
  if (!c)
    throw CLI::ValidationError("--problem",
                               "expected one of AR, EAR, AD, EAD, SR, ESR");
  return *c;
}

ruletree::ReduceMode parse_mode(const std::string& name) {
  if (name == "sr") return ruletree::ReduceMode::SR;
  if (name == "ad") return ruletree::ReduceMode::AD;
  throw CLI::ValidationError("--mode", "expected sr or ad");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace ruletree;

  CLI::App app{"decision rule systems and the decision trees derived from them"};
  app.require_subcommand(1);

  std::string file, tree_file, out_tree, out_dot, problem_name, mode_name = "sr";
  std::string alpha_text, family_name;
  int gen_n = 1, gen_d = 1, gen_k = 1;
  std::uint64_t gen_seed = 0;
  bool gen_random = false, gen_sr_reduced = false, gen_ad_reduced = false,
       gen_exact = false;
  SolveLimits limits;
  BoundQuery bq;
  bool bounds_min = false, bounds_max = false;
  AuditConfig audit_cfg;

  auto* params = app.add_subcommand("params", "profile, cover number and completeness");
  params->add_option("file", file)->required();

  auto* reduce_cmd = app.add_subcommand("reduce", "maximal reduced subsystem");
  reduce_cmd->add_option("file", file)->required();
  reduce_cmd->add_option("--mode", mode_name)->check(CLI::IsMember({"sr", "ad"}));

  auto* core_cmd = app.add_subcommand("core", "length-0 core subsystem");
  core_cmd->add_option("file", file)->required();
  core_cmd->add_option("--mode", mode_name)->check(CLI::IsMember({"sr", "ad"}));

  auto* restrict_cmd = app.add_subcommand("restrict", "restriction S_alpha");
  restrict_cmd->add_option("file", file)->required();
  restrict_cmd->add_option("--alpha", alpha_text, "e.g. \"a1=0,a3=*\"")->required();

  auto* complete_cmd = app.add_subcommand("complete", "completeness check");
  complete_cmd->add_option("file", file)->required();

  auto* cover_cmd = app.add_subcommand("cover", "minimum node cover size");
  cover_cmd->add_option("file", file)->required();

  auto* solve_cmd = app.add_subcommand("solve", "exact minimum tree depth");
  solve_cmd->add_option("file", file)->required();
  solve_cmd->add_option("--problem", problem_name)->required();
  solve_cmd->add_option("--out-tree", out_tree, "write the witness tree (json)");
  solve_cmd->add_option("--dot", out_dot, "write the witness tree (graphviz)");
  solve_cmd->add_option("--max-states", limits.max_states);
  solve_cmd->add_option("--timeout", limits.timeout_seconds, "seconds");

  auto* verify_cmd = app.add_subcommand("verify", "check a tree against a system");
  verify_cmd->add_option("system", file)->required();
  verify_cmd->add_option("tree", tree_file)->required();
  verify_cmd->add_option("--problem", problem_name)->required();

  auto* gen_cmd = app.add_subcommand("gen", "generate a witness family or random system");
  gen_cmd->add_option("--family", family_name);
  gen_cmd->add_flag("--random", gen_random, "random system instead of a family");
  gen_cmd->add_option("--n", gen_n)->required();
  gen_cmd->add_option("--d", gen_d);
  gen_cmd->add_option("--k", gen_k);
  gen_cmd->add_option("--seed", gen_seed);
  gen_cmd->add_flag("--sr-reduced", gen_sr_reduced);
  gen_cmd->add_flag("--ad-reduced", gen_ad_reduced);
  gen_cmd->add_flag("--exact-params", gen_exact);
  gen_cmd->add_option("--out-tree", out_tree, "write the certified tree if the family has one");

  auto* bounds_cmd = app.add_subcommand("bounds", "class bounds at (n,d,k)");
  bounds_cmd->add_option("--problem", problem_name)->required();
  bounds_cmd->add_flag("--min", bounds_min);
  bounds_cmd->add_flag("--max", bounds_max);
  bounds_cmd->add_flag("--reduced", bq.reduced);
  bounds_cmd->add_option("--n", bq.n)->required();
  bounds_cmd->add_option("--d", bq.d)->required();
  bounds_cmd->add_option("--k", bq.k)->required();

  auto* audit_cmd = app.add_subcommand("audit", "run the invariant suites");
  audit_cmd->add_option("--max-n", audit_cfg.max_n);
  audit_cmd->add_option("--max-k", audit_cfg.max_k);
  audit_cmd->add_option("--trials", audit_cfg.trials);
  audit_cmd->add_option("--seed", audit_cfg.seed);
  audit_cmd->add_flag("--exhaustive-tiny", audit_cfg.exhaustive_tiny);
  audit_cmd->add_flag("--inject-fault", audit_cfg.inject_fault)
      ->group("");  // test hook, hidden from help

  CLI11_PARSE(app, argc, argv);

  try {
    if (*params) {
      RuleSystem s = load_system(file);
      const auto& p = s.profile();
      std::string d = "{";
      for (std::size_t i = 0; i < p.decisions.size(); ++i) {
        if (i > 0) d += ",";
        d += std::to_string(p.decisions[i]);
      }
      d += "}";
      std::cout << "n=" << p.n << " d=" << p.d << " k=" << p.k << " D=" << d
                << "\n";
      std::cout << "beta=" << node_cover_number(s) << "\n";
      std::cout << "complete=" << (is_complete(s) ? "true" : "false") << "\n";
    } else if (*reduce_cmd) {
      std::cout << to_dsl(reduce(load_system(file), parse_mode(mode_name)));
    } else if (*core_cmd) {
      std::cout << to_dsl(core_subsystem(load_system(file), parse_mode(mode_name)));
    } else if (*restrict_cmd) {
      RuleSystem s = load_system(file);
      auto sa = restrict_system(s, parse_assignment(alpha_text));
      if (sa) {
        std::cout << to_dsl(*sa);
      } else {
        std::cout << "# S_alpha is empty\n";
      }
    } else if (*complete_cmd) {
      std::cout << "complete=" << (is_complete(load_system(file)) ? "true" : "false")
                << "\n";
    } else if (*cover_cmd) {
      std::cout << "beta=" << node_cover_number(load_system(file)) << "\n";
    } else if (*solve_cmd) {
      RuleSystem s = load_system(file);
      ProblemKind c = parse_problem(problem_name);
      SolveResult r = min_depth(s, c, limits);
      std::cout << "h=" << r.depth << "\n";
      if (log_enabled())
        std::cerr << "solve: " << r.stats.states_visited << " states, "
                  << r.stats.memo_hits << " memo hits, "
                  << r.stats.elapsed_seconds << "s\n";
      if (!out_tree.empty()) spill(out_tree, tree_to_json(r.tree, s));
      if (!out_dot.empty()) spill(out_dot, tree_to_dot(r.tree));
    } else if (*verify_cmd) {
      RuleSystem s = load_system(file);
      ProblemKind c = parse_problem(problem_name);
      LoadedTree loaded = tree_from_json(slurp(tree_file));
      if (loaded.system_digest != system_digest_hex(s)) {
        std::cerr << "error: tree was built for a different system (digest "
                  << loaded.system_digest << " != " << system_digest_hex(s)
                  << ")\n";
        return kExitParse;
      }
      VerifyResult v = verify(loaded.tree, s, c);
      if (!v) {
        std::cout << "verify=failed\n";
        std::cout << "reason: " << v.reason << "\n";
        if (v.counterexample)
          std::cout << "path: " << to_string(*v.counterexample) << "\n";
        return kExitVerify;
      }
      std::cout << "verify=ok\n";
    } else if (*gen_cmd) {
      if (gen_random) {
        RandomSystemOptions opts;
        opts.sr_reduced = gen_sr_reduced;
        opts.ad_reduced = gen_ad_reduced;
        opts.force_exact_params = gen_exact;
        std::cout << to_dsl(random_system(gen_n, gen_d, gen_k, gen_seed, opts));
      } else {
        auto fam = family_from_string(family_name);
        if (!fam) {
          std::string names;
          for (const auto& f : family_names()) names += " " + f;
          std::cerr << "error: unknown family \"" << family_name
                    << "\"; available:" << names << "\n";
          return kExitParse;
        }
        GeneratedSystem g = gen_family({*fam, gen_n, gen_d, gen_k});
        std::cout << to_dsl(g.system);
        if (!out_tree.empty()) {
          if (!g.tree) {
            std::cerr << "error: family " << family_name
                      << " has no certified tree\n";
            return kExitParse;
          }
          spill(out_tree, tree_to_json(*g.tree, g.system));
        }
      }
    } else if (*bounds_cmd) {
      if (bounds_min == bounds_max)
        throw CLI::ValidationError("bounds", "pass exactly one of --min/--max");
      bq.problem = parse_problem(problem_name);
      bq.extremum = bounds_min ? Extremum::MIN : Extremum::MAX;
      BoundInterval b = theorem_bounds(bq);
      std::cout << (b.exact ? "exact=" : "interval=") << to_string(b) << "\n";
      std::cout << "case: " << b.case_label << "\n";
    } else if (*audit_cmd) {
      AuditReport report = run_audit(audit_cfg);
      std::cout << report.to_text();
      if (log_enabled())
        std::cerr << "audit: " << report.elapsed_seconds << "s\n";
      if (report.total_failed() > 0) return kExitAudit;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const SolveCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << "verified interval: [" << e.lower_bound << ", " << e.upper_bound
              << "]\n";
    return kExitCap;
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitOk;
}
