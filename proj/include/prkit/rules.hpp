// Assignment rules: simple immediate acceptance under a fixed ordering,
// its uniform lottery (ria), rank-synchronized simultaneous eating (pr),
// continuous-time simultaneous eating (ps), serial dictatorship and its
// lottery (rsd), and the preference-independent uniform rule.
//
// Every rule is a pure function of the problem; rules validate their
// inputs once on entry and never mutate shared state.
#pragma once

#include <optional>

#include "prkit/core.hpp"

namespace prkit {

// Priority order over agents: sequence[0] has the highest priority.
struct Ordering {
  std::vector<AgentIdx> sequence;
  bool operator==(const Ordering& other) const = default;
};

// Diagnostic trace of an eating run. For pr, one stage per rank; for ps,
// one stage per exhaustion event with the time window filled in.
struct StageObjectTrace {
  ObjectIdx object = -1;
  std::vector<AgentIdx> eaters;
  Rational residual_before;
  Rational residual_after;
  std::vector<std::pair<AgentIdx, Rational>> amounts;  // consumed this stage
};

struct EatingStage {
  int stage = 0;  // rank for pr, event index for ps
  std::optional<Rational> time_begin;
  std::optional<Rational> time_end;
  std::vector<StageObjectTrace> objects;
};

struct EatingTrace {
  std::vector<EatingStage> stages;
};

// Step-t application/rejection procedure: at step t every yet-unassigned
// agent applies to her t-th choice; an object with residual quota r accepts
// the r applicants with the highest priority under f, permanently.
// Terminates within m steps with every agent assigned.
DeterministicAssignment simple_ia(const Problem& problem, const Ordering& f);

// Exact average of simple_ia over all n! orderings. Throws SizeGuardError
// beyond guards.enumeration_max_agents; use sampled_ria for larger n.
RandomAssignment ria(const Problem& problem, const Guards& guards = {});

// Equal-speed eating of one object with early stopping: if total demand
// fits, everyone receives her demand; otherwise every agent receives
// min(d_i, theta) where theta is the unique level exhausting the capacity.
std::vector<Rational> waterfill(const std::vector<Rational>& demands,
                                const Rational& capacity);

// Weighted variant: agent i consumes at speed s_i, receiving min(d_i, s_i*theta).
std::vector<Rational> waterfill_weighted(const std::vector<Rational>& demands,
                                         const std::vector<Rational>& speeds,
                                         const Rational& capacity);

// Rank-synchronized eating: at stage k the still-hungry agents eat their
// k-th choices simultaneously at equal speeds until exhaustion or satiation.
// An agent whose stage-k object has no residual quota consumes nothing at
// that stage and stays active; the stage index advances by rank only.
RandomAssignment pr(const Problem& problem, EatingTrace* trace = nullptr);

// pr with per-agent eating speeds (positive). Generalizes pr, which uses
// unit speeds everywhere.
RandomAssignment pr_weighted(const Problem& problem,
                             const std::vector<Rational>& speeds,
                             EatingTrace* trace = nullptr);

// Continuous-time simultaneous eating: every unsatiated agent eats her best
// object with positive residual quota at speed 1. Event-driven and exact;
// simultaneous exhaustions are processed in a single batch.
RandomAssignment ps(const Problem& problem, EatingTrace* trace = nullptr);

// Agent f(1) takes her most-preferred object with residual quota, then f(2), ...
DeterministicAssignment serial_dictatorship(const Problem& problem, const Ordering& f);

// Exact average of serial_dictatorship over all n! orderings.
RandomAssignment rsd(const Problem& problem, const Guards& guards = {});

// pi[i][a] = q_a / sum(q); independent of the preference profile.
RandomAssignment uniform_rule(const Problem& problem);

// Monte Carlo estimators over uniformly sampled orderings, for problems
// beyond the exact-enumeration cap. Exact rational average of the sample;
// clearly an estimate of the rule, not the rule itself.
RandomAssignment sampled_ria(const Problem& problem, int samples, uint64_t seed);
RandomAssignment sampled_rsd(const Problem& problem, int samples, uint64_t seed);

}  // namespace prkit
