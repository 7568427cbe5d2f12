// Global efficiency notions: rank distributions and rank dominance,
// sd-efficiency (fast cycle characterization plus a definitional exact-LP
// oracle), Pareto and ex post efficiency of deterministic mixtures, and a
// quota-aware Birkhoff-von Neumann decomposer.
#pragma once

#include "prkit/axioms.hpp"
#include "prkit/core.hpp"

namespace prkit {

// cumulative[k-1] = expected mass of agents receiving a k-th-or-better
// choice; non-decreasing, ends at n.
struct RankDistribution {
  std::vector<Rational> cumulative;
  bool operator==(const RankDistribution& other) const = default;
};

RankDistribution rank_distribution(const Problem& problem, const RandomAssignment& pi);

// Componentwise >= with at least one strict coordinate.
bool rank_dominates(const RankDistribution& d1, const RankDistribution& d2);
bool rank_dominates(const Problem& problem, const RandomAssignment& pi1,
                    const RandomAssignment& pi2);

// Holds iff pi is non-wasteful and the improvement relation over objects
// (a -> b when some agent holding a prefers b) is acyclic. A detected cycle
// is returned as the witness chain (agent, held object).
AxiomVerdict sd_efficient_cycle_check(const Problem& problem, const RandomAssignment& pi);

// Definitional oracle: decides by exact LPs whether some feasible pi' != pi
// weakly dominates pi row by row. The witness carries a dominating matrix.
AxiomVerdict sd_efficient_lp_oracle(const Problem& problem, const RandomAssignment& pi,
                                    const Guards& guards = {});

// Decides by exact LPs whether some feasible assignment rank-dominates pi.
AxiomVerdict rank_efficient_check(const Problem& problem, const RandomAssignment& pi,
                                  const Guards& guards = {});

// All feasible deterministic assignments, by backtracking over agents.
// Guarded by the brute-force caps.
std::vector<DeterministicAssignment> all_deterministic(const Problem& problem,
                                                       const Guards& guards = {});

AxiomVerdict pareto_efficient(const Problem& problem, const DeterministicAssignment& d,
                              const Guards& guards = {});

// The Pareto-efficient subset of all_deterministic; reusable across checks
// on the same problem.
std::vector<DeterministicAssignment> pareto_efficient_set(const Problem& problem,
                                                          const Guards& guards = {});

// Holds iff pi is a convex combination of Pareto-efficient deterministic
// assignments (exact LP feasibility over weights). Pass a precomputed
// Pareto set to avoid re-enumeration.
AxiomVerdict ex_post_efficient_check(const Problem& problem, const RandomAssignment& pi,
                                     const Guards& guards = {},
                                     const std::vector<DeterministicAssignment>* pareto_set = nullptr);

struct Decomposition {
  std::vector<std::pair<Rational, DeterministicAssignment>> parts;
};

// Writes pi as an exact convex combination of feasible deterministic
// assignments supported on its positive entries. Terminates within
// n*m + 1 extractions on well-formed inputs; throws std::logic_error if no
// supported assignment exists (impossible for a valid random assignment).
Decomposition bvn_decompose(const Problem& problem, const RandomAssignment& pi);

}  // namespace prkit
