// Strategy-proofness audits by exhaustive misreport enumeration.
#pragma once

#include <functional>
#include <optional>

#include "prkit/core.hpp"

namespace prkit {

using RuleFn = std::function<RandomAssignment(const Problem&)>;

// What counts as a successful manipulation.
//   kWeak:    some misreport's outcome strictly sd-dominates the truthful
//             row (refutes weak strategy-proofness).
//   kStrict:  the truthful row fails to weakly sd-dominate some misreport's
//             outcome (refutes strategy-proofness in the standard sense).
//   kLiteral: some misreport's outcome weakly sd-dominates the truthful row,
//             identical rows included. Under this reading no rule is
//             strategy-proof whenever a misreport reproduces the truthful
//             row; kept selectable for completeness, not used by default.
enum class SpMode { kWeak, kStrict, kLiteral };

struct ManipulationWitness {
  AgentIdx agent = -1;
  Preference truthful;
  Preference misreport;
  std::vector<Rational> truthful_row;
  std::vector<Rational> manipulated_row;
  SpMode mode = SpMode::kWeak;
};

// Scans every agent and every one of the m! - 1 misreports; returns the
// first witness found or nullopt. Deterministic order: agents ascending,
// misreports in lexicographic order. Throws SizeGuardError beyond
// guards.misreport_max_objects.
std::optional<ManipulationWitness> find_manipulation(const Problem& problem,
                                                     const RuleFn& rule, SpMode mode,
                                                     const Guards& guards = {});

struct SpAuditSummary {
  long long instances = 0;
  long long witnesses = 0;
  // (corpus index, witness) for each instance where a manipulation exists.
  std::vector<std::pair<size_t, ManipulationWitness>> found;
};

// Runs find_manipulation over a problem corpus and aggregates the results.
SpAuditSummary audit_rule_sp(const std::vector<Problem>& corpus, const RuleFn& rule,
                             SpMode mode, const Guards& guards = {});

}  // namespace prkit
