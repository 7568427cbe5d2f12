// Pure predicates over (problem, assignment): stochastic dominance on rows
// and the fairness axioms. Every failing verdict carries a witness with
// enough data to re-verify the violation against the raw definition.
#pragma once

#include <optional>

#include "prkit/core.hpp"

namespace prkit {

// Structured counterexample payload. Which fields are set depends on the
// axiom; `note` spells out the reading.
struct Witness {
  std::optional<AgentIdx> agent_i;
  std::optional<AgentIdx> agent_j;
  std::optional<ObjectIdx> object;
  std::optional<ObjectIdx> object2;
  std::optional<int> rank_k;
  std::optional<Rational> lhs;
  std::optional<Rational> rhs;
  // Trading-cycle witnesses: (agent, held object) with each agent preferring
  // the next entry's object; the last entry wraps around to the first.
  std::vector<std::pair<AgentIdx, ObjectIdx>> cycle;
  std::optional<RandomAssignment> assignment;  // e.g. a dominating matrix
  std::vector<Rational> certificate;           // LP infeasibility certificate
  std::string note;
};

struct AxiomVerdict {
  std::string axiom;
  bool holds = false;
  std::optional<Witness> witness;  // present iff holds == false
};

// row1 weakly stochastically dominates row2 under p: the cumulative share
// over every weak upper contour set of p is at least as large.
bool sd_weakly_dominates(const Preference& p, std::span<const Rational> row1,
                         std::span<const Rational> row2);

// Weak dominance plus row1 != row2.
bool sd_strictly_dominates(const Preference& p, std::span<const Rational> row1,
                           std::span<const Rational> row2);

// A positive share of a implies every strictly better object is fully
// allocated.
AxiomVerdict non_wasteful(const Problem& problem, const RandomAssignment& pi);

// A positive share of a implies (i) every strictly better object is fully
// allocated and (ii) every agent ranking a strictly higher is satiated at a.
AxiomVerdict sd_rank_fair(const Problem& problem, const RandomAssignment& pi);

// For every object a and pair i, j ranking a equally:
//   min(strict-upper-contour share of i + pi[j][a], 1) <= weak-upper-contour share of i.
AxiomVerdict equal_rank_envy_free(const Problem& problem, const RandomAssignment& pi);

// Agents with identical preferences receive identical rows.
AxiomVerdict equal_treatment_of_equals(const Problem& problem, const RandomAssignment& pi);

// No agent's row is strictly dominated, under her own preference, by
// another agent's row.
AxiomVerdict weak_sd_envy_free(const Problem& problem, const RandomAssignment& pi);

// Every agent's row weakly dominates every other agent's row under her own
// preference.
AxiomVerdict sd_envy_free(const Problem& problem, const RandomAssignment& pi);

// Deterministic counterpart of sd_rank_fair: whenever an agent prefers a to
// her assigned object, a is full and every holder of a ranks it at least as
// high as she does.
AxiomVerdict favors_higher_ranks(const Problem& problem, const DeterministicAssignment& d);

}  // namespace prkit
