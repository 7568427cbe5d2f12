#include "prkit/manipulation.hpp"

#include <algorithm>
#include <numeric>

#include "prkit/axioms.hpp"

namespace prkit {

std::optional<ManipulationWitness> find_manipulation(const Problem& problem,
                                                     const RuleFn& rule, SpMode mode,
                                                     const Guards& guards) {
  require_valid(problem);
  if (problem.m() > guards.misreport_max_objects)
    throw SizeGuardError("find_manipulation: enumerating " + std::to_string(problem.m()) +
                         "! misreports exceeds the cap of m <= " +
                         std::to_string(guards.misreport_max_objects));
  const RandomAssignment truthful = rule(problem);
  std::vector<ObjectIdx> order(problem.m());
  for (AgentIdx i = 0; i < problem.n(); ++i) {
    const Preference& true_pref = problem.profile[i];
    std::vector<Rational> true_row(truthful.row(i).begin(), truthful.row(i).end());
    std::iota(order.begin(), order.end(), 0);
    do {
      Preference misreport{order};
      if (misreport == true_pref) continue;
      Problem deviated = problem;
      deviated.profile[i] = misreport;
      const RandomAssignment outcome = rule(deviated);
      const auto new_row = outcome.row(i);
      bool caught = false;
      switch (mode) {
        case SpMode::kWeak:
          caught = sd_strictly_dominates(true_pref, new_row, true_row);
          break;
        case SpMode::kStrict:
          caught = !sd_weakly_dominates(true_pref, true_row, new_row);
          break;
        case SpMode::kLiteral:
          caught = sd_weakly_dominates(true_pref, new_row, true_row);
          break;
      }
      if (caught) {
        ManipulationWitness w;
        w.agent = i;
        w.truthful = true_pref;
        w.misreport = misreport;
        w.truthful_row = true_row;
        w.manipulated_row.assign(new_row.begin(), new_row.end());
        w.mode = mode;
        return w;
      }
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return std::nullopt;
}

SpAuditSummary audit_rule_sp(const std::vector<Problem>& corpus, const RuleFn& rule,
                             SpMode mode, const Guards& guards) {
  SpAuditSummary summary;
  for (size_t idx = 0; idx < corpus.size(); ++idx) {
    ++summary.instances;
    if (auto w = find_manipulation(corpus[idx], rule, mode, guards)) {
      ++summary.witnesses;
      summary.found.emplace_back(idx, std::move(*w));
    }
  }
  return summary;
}

}  // namespace prkit
