// Rule-level drivers: named rule and axiom registries, per-instance
// evaluation of (rule, axiom) pairs, counterexample search, the full
// rules-by-axioms verdict grid, and Monte Carlo rule comparison.
#pragma once

#include <map>

#include "prkit/axioms.hpp"
#include "prkit/core.hpp"
#include "prkit/corpus.hpp"
#include "prkit/efficiency.hpp"
#include "prkit/manipulation.hpp"

namespace prkit {

// Anonymous rules usable by the drivers. "uniform" is excluded from the
// verdict grid but available everywhere else.
const std::vector<std::string>& grid_rule_names();  // rsd, ps, ria, pr
const std::vector<std::string>& all_rule_names();   // + uniform
RuleFn make_rule(const std::string& name, const Guards& guards = {});

// Axioms evaluable per (problem, assignment); the two strategy-proofness
// axioms additionally need the rule itself.
const std::vector<std::string>& grid_axiom_names();  // the 10 grid rows
const std::vector<std::string>& assignment_axiom_names();
bool is_incentive_axiom(const std::string& axiom);

// Applies one named axiom checker to an assignment. Throws
// std::invalid_argument for incentive axioms or an unknown name;
// favors-higher-ranks / pareto-efficient require a 0/1 matrix.
AxiomVerdict evaluate_axiom(const Problem& problem, const RandomAssignment& pi,
                            const std::string& axiom, const Guards& guards = {},
                            const std::vector<DeterministicAssignment>* pareto_set = nullptr);

struct InstanceVerdict {
  bool holds = true;
  std::optional<Witness> witness;                     // assignment axioms
  std::optional<ManipulationWitness> manipulation;    // incentive axioms
};

// Evaluates one axiom for one rule at one instance; incentive axioms run
// the exhaustive misreport search.
InstanceVerdict evaluate_rule_axiom(const Problem& problem, const std::string& rule,
                                    const std::string& axiom, const Guards& guards = {});

// Paper-scale reference instances plus pinned search finds; used to seed
// counterexample hunts and the test suites.
Problem example1_problem();
Problem example2_problem();
Problem example2_problem_misreport1();  // agent 1 reports a > c > b > d
Problem example2_problem_misreport2();  // agent 1 reports a > c > d > b
Problem prop2_problem();
std::vector<Problem> landmark_problems();

struct SearchOptions {
  int agents = 3;
  int objects = 3;
  int max_quota = 1;
  bool exhaustive = true;  // otherwise seeded random sampling
  uint64_t seed = 1;
  long long samples = 10000;
  int threads = 0;
  bool include_landmarks = true;
};

struct SearchHit {
  Problem problem;
  InstanceVerdict verdict;
  long long index = 0;  // position in the scan order
};

struct SearchResult {
  std::optional<SearchHit> hit;
  long long instances_checked = 0;
};

// First instance (in deterministic scan order) where the rule violates the
// axiom; landmarks are scanned first when enabled.
SearchResult search_counterexample(const std::string& rule, const std::string& axiom,
                                   const SearchOptions& options, const Guards& guards = {});

struct GridCell {
  bool holds = true;
  std::optional<Problem> counterexample;
  std::string detail;
};

struct GridResult {
  std::vector<std::string> axioms;                // row labels
  std::vector<std::string> rules;                 // column labels
  std::vector<std::vector<GridCell>> cells;       // [axiom][rule]
  std::string bounds_note;
};

struct GridOptions {
  int exhaustive_agents = 3;
  int exhaustive_objects = 3;
  int search_agents = 4;  // counterexample hunt bound
  int search_objects = 4;
  long long random_samples = 4000;
  uint64_t seed = 97;
  int threads = 0;
};

// Evaluates every (axiom, rule) cell: a cross means a concrete
// counterexample was found (landmarks, then the exhaustive corpus, then
// seeded random instances up to the search bounds); a check means the
// exhaustive corpus plus the hunt produced none.
GridResult rule_axiom_grid(const GridOptions& options, const Guards& guards = {});

std::string render_grid(const GridResult& grid);

struct CompareOptions {
  std::vector<std::string> rules;
  int samples = 100;
  int agents = 4;
  int objects = 4;
  int max_quota = 1;
  uint64_t seed = 7;
  int threads = 0;
};

struct CompareRuleStats {
  std::string rule;
  std::vector<Rational> mean_rank_mass;              // k = 1..m, exact
  std::map<std::string, long long> violation_counts;  // axiom -> #instances violated
};

// Seeded Monte Carlo sweep: exact average rank distribution per rule plus
// violation counts for the standard assignment-axiom battery.
std::vector<CompareRuleStats> compare_rules(const CompareOptions& options,
                                            const Guards& guards = {});

}  // namespace prkit
