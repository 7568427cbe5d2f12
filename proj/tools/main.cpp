// Command-line surface: run rules on problem files, audit assignments
// against the axioms, search for counterexamples, reproduce the
// rules-by-axioms verdict table, and compare rules by Monte Carlo.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "prkit/audits.hpp"
#include "prkit/problem_io.hpp"
#include "prkit/rules.hpp"

namespace {

constexpr int kExitAxiomFailed = 1;
constexpr int kExitParseError = 2;
constexpr int kExitSizeGuard = 3;
constexpr int kExitOtherError = 4;

struct GlobalOptions {
  std::string format = "fractions";
  int guard_agents = 0;   // 0 = defaults
  int guard_objects = 0;
  int threads = 0;
};

prkit::NumberFormat parse_format(const std::string& name) {
  if (name == "fractions") return prkit::NumberFormat::kFractions;
  if (name == "decimal") return prkit::NumberFormat::kDecimal;
  if (name == "both") return prkit::NumberFormat::kBoth;
  throw CLI::ValidationError("--format must be fractions, decimal, or both");
}

prkit::Guards make_guards(const GlobalOptions& opts) {
  prkit::Guards guards;
  if (opts.guard_agents > 0) {
    guards.enumeration_max_agents = opts.guard_agents;
    guards.brute_max_agents = opts.guard_agents;
  }
  if (opts.guard_objects > 0) {
    guards.misreport_max_objects = opts.guard_objects;
    guards.brute_max_objects = opts.guard_objects;
  }
  return guards;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw prkit::ParseError(1, 1, "cannot open file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

prkit::Ordering parse_ordering(const prkit::Problem& problem, const std::string& text) {
  prkit::Ordering f;
  std::string token;
  std::istringstream is(text);
  while (std::getline(is, token, ',')) {
    if (token.empty()) continue;
    auto agent = problem.find_agent(token);
    if (!agent) throw std::invalid_argument("ordering mentions unknown agent '" + token + "'");
    f.sequence.push_back(*agent);
  }
  return f;
}

std::string render_trace(const prkit::Problem& problem, const prkit::EatingTrace& trace) {
  std::ostringstream os;
  for (const auto& stage : trace.stages) {
    os << "# stage " << stage.stage;
    if (stage.time_begin)
      os << " [t=" << prkit::to_fraction_string(*stage.time_begin) << " -> "
         << prkit::to_fraction_string(*stage.time_end) << "]";
    os << "\n";
    for (const auto& obj : stage.objects) {
      os << "#   object " << problem.object_ids[obj.object] << ": residual "
         << prkit::to_fraction_string(obj.residual_before) << " -> "
         << prkit::to_fraction_string(obj.residual_after) << "; amounts:";
      for (const auto& [agent, amount] : obj.amounts)
        os << ' ' << problem.agent_ids[agent] << '=' << prkit::to_fraction_string(amount);
      os << "\n";
    }
  }
  return os.str();
}

int command_run(const GlobalOptions& global, const std::string& rule,
                const std::string& problem_path, const std::string& ordering_text,
                bool trace, int samples, uint64_t seed, const std::string& out_path) {
  const prkit::Problem problem = prkit::parse_problem(read_file(problem_path));
  const prkit::Guards guards = make_guards(global);
  std::ostringstream os;
  prkit::RandomAssignment pi;
  prkit::EatingTrace eating;
  os << "# rule: " << rule << "\n";
  if (rule == "simple-ia" || rule == "sd") {
    if (ordering_text.empty())
      throw std::invalid_argument("rule '" + rule + "' needs --ordering");
    const prkit::Ordering f = parse_ordering(problem, ordering_text);
    pi = (rule == "simple-ia" ? prkit::simple_ia(problem, f) : prkit::serial_dictatorship(problem, f))
             .to_random(problem.m());
  } else if (samples > 0 && (rule == "ria" || rule == "rsd")) {
    os << "# sampled estimate over " << samples << " orderings, seed " << seed
       << " (not the exact rule)\n";
    pi = rule == "ria" ? prkit::sampled_ria(problem, samples, seed)
                       : prkit::sampled_rsd(problem, samples, seed);
  } else {
    prkit::EatingTrace* trace_ptr = trace && (rule == "pr" || rule == "ps") ? &eating : nullptr;
    if (rule == "pr")
      pi = prkit::pr(problem, trace_ptr);
    else if (rule == "ps")
      pi = prkit::ps(problem, trace_ptr);
    else
      pi = prkit::make_rule(rule, guards)(problem);
    if (trace_ptr) os << render_trace(problem, eating);
  }
  os << prkit::render_assignment_matrix(problem, pi, parse_format(global.format));
  if (out_path.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write file '" + out_path + "'");
    out << os.str();
  }
  return 0;
}

int command_audit(const GlobalOptions& global, const std::string& problem_path,
                  const std::string& rule, const std::string& assignment_path,
                  std::string axioms_arg, const std::string& out_path) {
  const prkit::Problem problem = prkit::parse_problem(read_file(problem_path));
  const prkit::Guards guards = make_guards(global);
  if (rule.empty() == assignment_path.empty())
    throw std::invalid_argument("audit needs exactly one of --rule or --assignment");

  prkit::RandomAssignment pi;
  std::string label;
  if (!rule.empty()) {
    pi = prkit::make_rule(rule, guards)(problem);
    label = "rule " + rule;
  } else {
    pi = prkit::parse_assignment_matrix(problem, read_file(assignment_path));
    label = "file " + assignment_path;
    auto violations = prkit::validate_assignment(problem, pi);
    if (!violations.empty()) {
      std::ostringstream os;
      os << "assignment file violates feasibility:";
      for (const auto& v : violations) os << "\n  - " << v.message;
      throw std::invalid_argument(os.str());
    }
  }

  std::vector<std::string> axioms;
  if (axioms_arg.empty() || axioms_arg == "all") {
    for (const auto& name : prkit::assignment_axiom_names()) {
      if ((name == "favors-higher-ranks" || name == "pareto-efficient")) {
        bool deterministic = true;
        for (const auto& cell : pi.cells) deterministic &= (cell == 0 || cell == 1);
        if (!deterministic) continue;
      }
      axioms.push_back(name);
    }
  } else {
    std::istringstream is(axioms_arg);
    std::string token;
    while (std::getline(is, token, ','))
      if (!token.empty()) axioms.push_back(token);
  }

  std::vector<prkit::AxiomVerdict> verdicts;
  const auto pareto = [&]() -> std::vector<prkit::DeterministicAssignment> {
    for (const auto& axiom : axioms)
      if (axiom == "ex-post-efficient") return prkit::pareto_efficient_set(problem, guards);
    return {};
  }();
  bool any_failed = false;
  for (const auto& axiom : axioms) {
    prkit::AxiomVerdict v = prkit::evaluate_axiom(problem, pi, axiom, guards,
                                                  axiom == "ex-post-efficient" && !pareto.empty()
                                                      ? &pareto
                                                      : nullptr);
    any_failed |= !v.holds;
    verdicts.push_back(std::move(v));
  }
  const std::string report = prkit::render_audit_report(problem, problem_path, label, pi,
                                                        verdicts, parse_format(global.format));
  if (out_path.empty()) {
    std::cout << report;
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write file '" + out_path + "'");
    out << report;
  }
  return any_failed ? kExitAxiomFailed : 0;
}

int command_search(const GlobalOptions& global, const std::string& rule,
                   const std::string& axiom, int max_agents, int max_objects, int max_quota,
                   const std::string& mode, uint64_t seed, long long samples) {
  prkit::SearchOptions options;
  options.agents = max_agents;
  options.objects = max_objects;
  options.max_quota = max_quota;
  options.exhaustive = mode == "exhaustive";
  options.seed = seed;
  options.samples = samples;
  options.threads = global.threads;
  const prkit::Guards guards = make_guards(global);
  const prkit::SearchResult result = prkit::search_counterexample(rule, axiom, options, guards);
  if (!result.hit) {
    std::cout << "no counterexample: rule " << rule << " satisfied " << axiom << " on "
              << result.instances_checked << " instances (" << mode << " mode, up to "
              << max_agents << " agents x " << max_objects << " objects)\n";
    return 0;
  }
  std::cout << "counterexample found after " << (result.hit->index + 1) << " instances:\n"
            << prkit::render_problem(result.hit->problem);
  if (result.hit->verdict.manipulation)
    std::cout << prkit::render_manipulation(result.hit->problem,
                                            *result.hit->verdict.manipulation, "");
  else if (result.hit->verdict.witness)
    std::cout << prkit::render_witness(result.hit->problem, *result.hit->verdict.witness, "");
  return 0;
}

int command_table(const GlobalOptions& global, int max_agents, int max_objects,
                  int search_agents, int search_objects, long long samples, uint64_t seed) {
  prkit::GridOptions options;
  options.exhaustive_agents = max_agents;
  options.exhaustive_objects = max_objects;
  options.search_agents = search_agents;
  options.search_objects = search_objects;
  options.random_samples = samples;
  options.seed = seed;
  options.threads = global.threads;
  const prkit::GridResult grid = prkit::rule_axiom_grid(options, make_guards(global));
  std::cout << prkit::render_grid(grid);
  return 0;
}

int command_compare(const GlobalOptions& global, const std::string& rules_arg, int samples,
                    int agents, int objects, int max_quota, uint64_t seed) {
  prkit::CompareOptions options;
  std::istringstream is(rules_arg);
  std::string token;
  while (std::getline(is, token, ','))
    if (!token.empty()) options.rules.push_back(token);
  options.samples = samples;
  options.agents = agents;
  options.objects = objects;
  options.max_quota = max_quota;
  options.seed = seed;
  options.threads = global.threads;
  const auto stats = prkit::compare_rules(options, make_guards(global));
  std::cout << "# average cumulative rank mass (decimal rendering of exact values) and "
               "violation counts over "
            << samples << " seeded instances\n";
  std::cout << "rule,k,avg_rank_mass";
  if (!stats.empty())
    for (const auto& [axiom, _] : stats.front().violation_counts) std::cout << ',' << axiom;
  std::cout << "\n";
  for (const auto& st : stats) {
    for (int k = 0; k < static_cast<int>(st.mean_rank_mass.size()); ++k) {
      std::cout << st.rule << ',' << (k + 1) << ','
                << prkit::to_decimal_string(st.mean_rank_mass[k]);
      for (const auto& [_, count] : st.violation_counts) std::cout << ',' << count;
      std::cout << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact random-assignment rules, axiom audits, and counterexample search"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--format", global.format, "number rendering: fractions, decimal, or both")
      ->capture_default_str();
  app.add_option("--guard-agents", global.guard_agents,
                 "override the agent-count caps of the exhaustive oracles");
  app.add_option("--guard-objects", global.guard_objects,
                 "override the object-count caps of the exhaustive oracles");
  app.add_option("--threads", global.threads, "worker threads (0 = hardware)");

  auto* run = app.add_subcommand("run", "run a rule on a problem file");
  std::string run_rule, run_problem, run_ordering, run_out;
  bool run_trace = false;
  int run_samples = 0;
  uint64_t run_seed = 1;
  run->add_option("--rule", run_rule, "pr, ps, ria, rsd, uniform, simple-ia, sd")->required();
  run->add_option("problem", run_problem, "problem file")->required();
  run->add_option("--ordering", run_ordering, "comma-separated agent ids (simple-ia, sd)");
  run->add_flag("--trace", run_trace, "print the eating trace (pr, ps)");
  run->add_option("--samples", run_samples,
                  "ria/rsd: sampled estimator instead of exact enumeration");
  run->add_option("--seed", run_seed, "seed for --samples");
  run->add_option("--out", run_out, "write the matrix to a file instead of stdout");

  auto* audit = app.add_subcommand("audit", "check axioms for an assignment");
  std::string audit_problem, audit_rule, audit_assignment, audit_axioms = "all", audit_out;
  audit->add_option("problem", audit_problem, "problem file")->required();
  audit->add_option("--rule", audit_rule, "rule producing the assignment");
  audit->add_option("--assignment", audit_assignment, "assignment matrix file");
  audit->add_option("--axioms", audit_axioms, "comma-separated axiom list or 'all'")
      ->capture_default_str();
  audit->add_option("--out", audit_out, "write the report to a file");

  auto* search = app.add_subcommand("search", "hunt for a (rule, axiom) counterexample");
  std::string search_rule, search_axiom, search_mode = "exhaustive";
  int search_agents = 3, search_objects = 3, search_quota = 1;
  uint64_t search_seed = 1;
  long long search_samples = 10000;
  search->add_option("--rule", search_rule, "rule name")->required();
  search->add_option("--axiom", search_axiom, "axiom name")->required();
  search->add_option("--max-agents", search_agents, "agents per instance")->capture_default_str();
  search->add_option("--max-objects", search_objects, "objects per instance")
      ->capture_default_str();
  search->add_option("--quotas", search_quota, "maximum quota in random mode")
      ->capture_default_str();
  search->add_option("--mode", search_mode, "exhaustive or random")->capture_default_str();
  search->add_option("--seed", search_seed, "random-mode seed")->capture_default_str();
  search->add_option("--samples", search_samples, "random-mode sample budget")
      ->capture_default_str();

  auto* table = app.add_subcommand("table1", "rules-by-axioms verdict grid");
  int table_agents = 3, table_objects = 3, table_search_agents = 4, table_search_objects = 4;
  long long table_samples = 4000;
  uint64_t table_seed = 97;
  table->add_option("--max-agents", table_agents, "exhaustive corpus agents")
      ->capture_default_str();
  table->add_option("--max-objects", table_objects, "exhaustive corpus objects")
      ->capture_default_str();
  table->add_option("--search-agents", table_search_agents, "counterexample hunt bound")
      ->capture_default_str();
  table->add_option("--search-objects", table_search_objects, "counterexample hunt bound")
      ->capture_default_str();
  table->add_option("--samples", table_samples, "random instances per hunted cell")
      ->capture_default_str();
  table->add_option("--seed", table_seed, "hunt seed")->capture_default_str();

  auto* compare = app.add_subcommand("compare", "Monte Carlo rule comparison (CSV)");
  std::string compare_rules_arg = "pr,ria";
  int compare_samples = 100, compare_agents = 4, compare_objects = 4, compare_quota = 1;
  uint64_t compare_seed = 7;
  compare->add_option("--rules", compare_rules_arg, "comma-separated rule names")
      ->capture_default_str();
  compare->add_option("--samples", compare_samples, "instances to sample")->capture_default_str();
  compare->add_option("--agents", compare_agents, "agents per instance")->capture_default_str();
  compare->add_option("--objects", compare_objects, "objects per instance")
      ->capture_default_str();
  compare->add_option("--max-quota", compare_quota, "maximum quota")->capture_default_str();
  compare->add_option("--seed", compare_seed, "sampling seed")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return command_run(global, run_rule, run_problem, run_ordering, run_trace, run_samples,
                         run_seed, run_out);
    if (audit->parsed())
      return command_audit(global, audit_problem, audit_rule, audit_assignment, audit_axioms,
                           audit_out);
    if (search->parsed())
      return command_search(global, search_rule, search_axiom, search_agents, search_objects,
                            search_quota, search_mode, search_seed, search_samples);
    if (table->parsed())
      return command_table(global, table_agents, table_objects, table_search_agents,
                           table_search_objects, table_samples, table_seed);
    if (compare->parsed())
      return command_compare(global, compare_rules_arg, compare_samples, compare_agents,
                             compare_objects, compare_quota, compare_seed);
  } catch (const prkit::ParseError& err) {
    std::cerr << "parse error: " << err.what() << "\n";
    return kExitParseError;
  } catch (const prkit::SizeGuardError& err) {
    std::cerr << "size guard: " << err.what() << "\n";
    return kExitSizeGuard;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitOtherError;
  }
  return 0;
}
