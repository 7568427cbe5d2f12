#include "prkit/axioms.hpp"

#include <algorithm>

namespace prkit {

namespace {

AxiomVerdict pass(const char* axiom) { return {axiom, true, std::nullopt}; }

AxiomVerdict fail(const char* axiom, Witness w) { return {axiom, false, std::move(w)}; }

std::vector<Rational> column_sums(const RandomAssignment& pi) {
  std::vector<Rational> cols(pi.cols, 0);
  for (AgentIdx i = 0; i < pi.rows; ++i)
    for (ObjectIdx a = 0; a < pi.cols; ++a) cols[a] += pi.at(i, a);
  return cols;
}

}  // namespace

bool sd_weakly_dominates(const Preference& p, std::span<const Rational> row1,
                         std::span<const Rational> row2) {
  if (row1.size() != row2.size() ||
      static_cast<int>(row1.size()) != p.num_objects())
    throw std::invalid_argument("rows and preference disagree on the object count");
  Rational cum1 = 0, cum2 = 0;
  for (int k = 1; k <= p.num_objects(); ++k) {
    const ObjectIdx a = p.at_rank(k);
    cum1 += row1[static_cast<size_t>(a)];
    cum2 += row2[static_cast<size_t>(a)];
    if (cum1 < cum2) return false;
  }
  return true;
}

bool sd_strictly_dominates(const Preference& p, std::span<const Rational> row1,
                           std::span<const Rational> row2) {
  if (!sd_weakly_dominates(p, row1, row2)) return false;
  return !std::equal(row1.begin(), row1.end(), row2.begin());
}

AxiomVerdict non_wasteful(const Problem& problem, const RandomAssignment& pi) {
  require_valid(problem, pi);
  const auto cols = column_sums(pi);
  for (AgentIdx i = 0; i < problem.n(); ++i) {
    const auto& pref = problem.profile[i];
    for (ObjectIdx a = 0; a < problem.m(); ++a) {
      if (pi.at(i, a) == 0) continue;
      for (ObjectIdx better : upper_contour(pref, a, /*weak=*/false)) {
        if (cols[better] != problem.quotas[better]) {
          Witness w;
          w.agent_i = i;
          w.object = a;
          w.object2 = better;
          w.lhs = cols[better];
          w.rhs = Rational(problem.quotas[better]);
          w.note = "agent " + problem.agent_ids[i] + " holds a positive share of '" +
                   problem.object_ids[a] + "' while preferred object '" +
                   problem.object_ids[better] + "' is not fully allocated";
          return fail("non-wasteful", std::move(w));
        }
      }
    }
  }
  return pass("non-wasteful");
}

AxiomVerdict sd_rank_fair(const Problem& problem, const RandomAssignment& pi) {
  require_valid(problem, pi);
  const auto cols = column_sums(pi);
  for (AgentIdx i = 0; i < problem.n(); ++i) {
    const auto& pref = problem.profile[i];
    for (ObjectIdx a = 0; a < problem.m(); ++a) {
      if (pi.at(i, a) == 0) continue;
      for (ObjectIdx better : upper_contour(pref, a, /*weak=*/false)) {
        if (cols[better] != problem.quotas[better]) {
          Witness w;
          w.agent_i = i;
          w.object = a;
          w.object2 = better;
          w.lhs = cols[better];
          w.rhs = Rational(problem.quotas[better]);
          w.note = "part (i): agent " + problem.agent_ids[i] + " holds '" +
                   problem.object_ids[a] + "' while better-ranked '" +
                   problem.object_ids[better] + "' is not fully allocated";
          return fail("sd-rank-fair", std::move(w));
        }
      }
      const int rank_i = pref.rank(a);
      for (AgentIdx j = 0; j < problem.n(); ++j) {
        if (j == i || problem.profile[j].rank(a) >= rank_i) continue;
        const Rational s = surplus(pi.row(j), problem.profile[j], a);
        if (s != 1) {
          Witness w;
          w.agent_i = i;
          w.agent_j = j;
          w.object = a;
          w.lhs = s;
          w.rhs = Rational(1);
          w.note = "part (ii): agent " + problem.agent_ids[i] + " holds '" +
                   problem.object_ids[a] + "' at rank " + std::to_string(rank_i) +
                   " while agent " + problem.agent_ids[j] + " ranks it " +
                   std::to_string(problem.profile[j].rank(a)) +
                   " and is not satiated there";
          return fail("sd-rank-fair", std::move(w));
        }
      }
    }
  }
  return pass("sd-rank-fair");
}

AxiomVerdict equal_rank_envy_free(const Problem& problem, const RandomAssignment& pi) {
  require_valid(problem, pi);
  for (ObjectIdx a = 0; a < problem.m(); ++a) {
    for (AgentIdx i = 0; i < problem.n(); ++i) {
      const int k = problem.profile[i].rank(a);
      Rational strict_i = surplus(pi.row(i), problem.profile[i], a) - pi.at(i, a);
      Rational weak_i = strict_i + pi.at(i, a);
      for (AgentIdx j = 0; j < problem.n(); ++j) {
        if (j == i || problem.profile[j].rank(a) != k) continue;
        Rational lhs = std::min(strict_i + pi.at(j, a), Rational(1));
        if (lhs > weak_i) {
          Witness w;
          w.agent_i = i;
          w.agent_j = j;
          w.object = a;
          w.rank_k = k;
          w.lhs = lhs;
          w.rhs = weak_i;
          w.note = "agents " + problem.agent_ids[i] + " and " + problem.agent_ids[j] +
                   " both rank '" + problem.object_ids[a] + "' " + std::to_string(k) +
                   "-th; swapping in the other's share raises agent " +
                   problem.agent_ids[i] + "'s surplus";
          return fail("equal-rank-envy-free", std::move(w));
        }
      }
    }
  }
  return pass("equal-rank-envy-free");
}

AxiomVerdict equal_treatment_of_equals(const Problem& problem, const RandomAssignment& pi) {
  require_valid(problem, pi);
  for (AgentIdx i = 0; i < problem.n(); ++i)
    for (AgentIdx j = i + 1; j < problem.n(); ++j) {
      if (!(problem.profile[i] == problem.profile[j])) continue;
      for (ObjectIdx a = 0; a < problem.m(); ++a) {
        if (pi.at(i, a) != pi.at(j, a)) {
          Witness w;
          w.agent_i = i;
          w.agent_j = j;
          w.object = a;
          w.lhs = pi.at(i, a);
          w.rhs = pi.at(j, a);
          w.note = "agents " + problem.agent_ids[i] + " and " + problem.agent_ids[j] +
                   " report identical preferences but receive different shares of '" +
                   problem.object_ids[a] + "'";
          return fail("equal-treatment-of-equals", std::move(w));
        }
      }
    }
  return pass("equal-treatment-of-equals");
}

AxiomVerdict weak_sd_envy_free(const Problem& problem, const RandomAssignment& pi) {
  require_valid(problem, pi);
  for (AgentIdx i = 0; i < problem.n(); ++i)
    for (AgentIdx j = 0; j < problem.n(); ++j) {
      if (i == j) continue;
      if (sd_strictly_dominates(problem.profile[i], pi.row(j), pi.row(i))) {
        Witness w;
        w.agent_i = i;
        w.agent_j = j;
        w.note = "agent " + problem.agent_ids[i] + "'s allocation is strictly dominated by agent " +
                 problem.agent_ids[j] + "'s under her own preference";
        return fail("weak-sd-envy-free", std::move(w));
      }
    }
  return pass("weak-sd-envy-free");
}

AxiomVerdict sd_envy_free(const Problem& problem, const RandomAssignment& pi) {
  require_valid(problem, pi);
  for (AgentIdx i = 0; i < problem.n(); ++i)
    for (AgentIdx j = 0; j < problem.n(); ++j) {
      if (i == j) continue;
      if (!sd_weakly_dominates(problem.profile[i], pi.row(i), pi.row(j))) {
        Witness w;
        w.agent_i = i;
        w.agent_j = j;
        w.note = "agent " + problem.agent_ids[i] + "'s allocation fails to weakly dominate agent " +
                 problem.agent_ids[j] + "'s under her own preference";
        return fail("sd-envy-free", std::move(w));
      }
    }
  return pass("sd-envy-free");
}

AxiomVerdict favors_higher_ranks(const Problem& problem, const DeterministicAssignment& d) {
  require_valid(problem);
  auto violations = validate_deterministic(problem, d);
  if (!violations.empty())
    throw std::invalid_argument("invalid deterministic assignment: " + violations.front().message);
  for (AgentIdx i = 0; i < problem.n(); ++i) {
    const auto& pref = problem.profile[i];
    for (ObjectIdx a : upper_contour(pref, d.object_of[i], /*weak=*/false)) {
      if (d.column_count(a) != problem.quotas[a]) {
        Witness w;
        w.agent_i = i;
        w.object = a;
        w.lhs = Rational(d.column_count(a));
        w.rhs = Rational(problem.quotas[a]);
        w.note = "agent " + problem.agent_ids[i] + " prefers '" + problem.object_ids[a] +
                 "' to her assignment and the object is not full";
        return fail("favors-higher-ranks", std::move(w));
      }
      for (AgentIdx j = 0; j < problem.n(); ++j) {
        if (d.object_of[j] != a) continue;
        if (problem.profile[j].rank(a) > pref.rank(a)) {
          Witness w;
          w.agent_i = i;
          w.agent_j = j;
          w.object = a;
          w.lhs = Rational(problem.profile[j].rank(a));
          w.rhs = Rational(pref.rank(a));
          w.note = "agent " + problem.agent_ids[i] + " prefers '" + problem.object_ids[a] +
                   "' to her assignment, yet it is held by agent " + problem.agent_ids[j] +
                   " who ranks it lower";
          return fail("favors-higher-ranks", std::move(w));
        }
      }
    }
  }
  return pass("favors-higher-ranks");
}

}  // namespace prkit
