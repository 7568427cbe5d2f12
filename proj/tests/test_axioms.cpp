#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "prkit/audits.hpp"
#include "prkit/axioms.hpp"
#include "prkit/corpus.hpp"
#include "prkit/rules.hpp"
#include "test_support.hpp"

using namespace prkit;
using namespace prkit::testing;

namespace {

const RandomAssignment kRiaEx1 =
    mat({"1/2 0 3/8 1/8", "1/2 0 1/8 3/8", "0 1/2 3/8 1/8", "0 1/2 1/8 3/8"});
const RandomAssignment kPrimeEx1 =
    mat({"1/2 0 1/2 0", "1/2 0 0 1/2", "0 1/2 1/2 0", "0 1/2 0 1/2"});
const RandomAssignment kPrEx2 =
    mat({"1/3 0 0 2/3", "1/3 0 1/2 1/6", "1/3 0 1/2 1/6", "0 1 0 0"});

std::vector<Rational> random_row(RandomSource& rng, int m) {
  std::vector<Rational> row(m);
  for (auto& v : row) v = Rational(rng.below(5), 1 + rng.below(6));
  return row;
}

}  // namespace

TEST_CASE("weak stochastic dominance") {
  const Problem ex1 = example1_problem();
  for (AgentIdx i = 0; i < 4; ++i) {
    CHECK(sd_weakly_dominates(ex1.profile[i], kRiaEx1.row(i), kRiaEx1.row(i)));
    CHECK(sd_weakly_dominates(ex1.profile[i], kPrimeEx1.row(i), kRiaEx1.row(i)));
  }
  // Degenerate rows: all mass on the top beats all mass on the second choice.
  const Problem pair = unit_problem({{0, 1}, {1, 0}});
  const auto top = mat({"1 0"});
  const auto second = mat({"0 1"});
  CHECK(sd_weakly_dominates(pair.profile[0], top.row(0), second.row(0)));
  CHECK_FALSE(sd_weakly_dominates(pair.profile[0], second.row(0), top.row(0)));
}

TEST_CASE("strict stochastic dominance") {
  const Problem ex1 = example1_problem();
  for (AgentIdx i = 0; i < 4; ++i) {
    CHECK_FALSE(sd_strictly_dominates(ex1.profile[i], kRiaEx1.row(i), kRiaEx1.row(i)));
    CHECK(sd_strictly_dominates(ex1.profile[i], kPrimeEx1.row(i), kRiaEx1.row(i)));
  }
  const Problem ex2 = example2_problem();
  CHECK(sd_strictly_dominates(ex2.profile[0], kPrEx2.row(1), kPrEx2.row(0)));
  CHECK(sd_strictly_dominates(ex2.profile[0], kPrEx2.row(2), kPrEx2.row(0)));
}

TEST_CASE("weak dominance is a partial order on rows") {
  RandomSource rng(53);
  const Problem ex2 = example2_problem();
  const Preference& pref = ex2.profile[1];
  for (int trial = 0; trial < 400; ++trial) {
    const auto r1 = random_row(rng, 4);
    const auto r2 = random_row(rng, 4);
    const auto r3 = random_row(rng, 4);
    CHECK(sd_weakly_dominates(pref, r1, r1));  // reflexive
    if (sd_weakly_dominates(pref, r1, r2) && sd_weakly_dominates(pref, r2, r1)) {
      // Antisymmetric up to equal cumulative sums, hence equal rows.
      CHECK(r1 == r2);
    }
    if (sd_weakly_dominates(pref, r1, r2) && sd_weakly_dominates(pref, r2, r3))
      CHECK(sd_weakly_dominates(pref, r1, r3));  // transitive
    CHECK(sd_weakly_dominates(pref, r1, r2) == replay_weak_dominance(pref, r1, r2));
  }
}

TEST_CASE("non-wastefulness") {
  const Problem ex2 = example2_problem();
  CHECK(non_wasteful(ex2, kPrEx2).holds);

  // Someone holds a worse object while her top choice has slack.
  const Problem pair = make_problem({2, 1}, {{0, 1}, {0, 1}});
  const auto wasteful = mat({"1 0", "0 1"});
  const AxiomVerdict v = non_wasteful(pair, wasteful);
  REQUIRE_FALSE(v.holds);
  REQUIRE(v.witness.has_value());
  CHECK(*v.witness->agent_i == 1);
  CHECK(*v.witness->object == 1);
  CHECK(*v.witness->object2 == 0);

  // With supply exactly matching demand every column is full, so the
  // preference-independent rule wastes nothing on this profile.
  const Problem ex1 = example1_problem();
  CHECK(non_wasteful(ex1, uniform_rule(ex1)).holds);
  // Excess supply breaks it.
  const Problem slack = make_problem({2, 1, 1}, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}});
  CHECK_FALSE(non_wasteful(slack, uniform_rule(slack)).holds);
}

TEST_CASE("sd-rank-fairness") {
  const Problem ex2 = example2_problem();
  CHECK(sd_rank_fair(ex2, kPrEx2).holds);

  const Problem ex1 = example1_problem();
  const AxiomVerdict ria_verdict = sd_rank_fair(ex1, kRiaEx1);
  REQUIRE_FALSE(ria_verdict.holds);
  // Replay: the witness agent j ranks the object strictly higher than the
  // holder i and is not satiated there.
  const Witness& w = *ria_verdict.witness;
  REQUIRE(w.agent_j.has_value());
  CHECK(ex1.profile[*w.agent_j].rank(*w.object) < ex1.profile[*w.agent_i].rank(*w.object));
  CHECK(kRiaEx1.at(*w.agent_i, *w.object) > 0);
  CHECK(surplus(kRiaEx1.row(*w.agent_j), ex1.profile[*w.agent_j], *w.object) != 1);

  const Problem prop2 = prop2_problem();
  const auto d_matrix = DeterministicAssignment{{2, 0, 1}}.to_random(3);
  const AxiomVerdict prop2_verdict = sd_rank_fair(prop2, d_matrix);
  REQUIRE_FALSE(prop2_verdict.holds);
  CHECK(*prop2_verdict.witness->agent_i == 1);  // agent 2 holds a
  CHECK(*prop2_verdict.witness->agent_j == 0);  // agent 1 ranks it first, unsatiated
  CHECK(*prop2_verdict.witness->object == 0);
}

TEST_CASE("equal-rank envy-freeness") {
  const Problem ex2 = example2_problem();
  CHECK(equal_rank_envy_free(ex2, kPrEx2).holds);
  {
    // Direct substitution for the pair (2,3) at object a.
    const Rational lhs =
        std::min(Rational(0) + kPrEx2.at(2, 0), Rational(1));
    const Rational rhs = kPrEx2.at(1, 0);
    CHECK(lhs == Rational(1, 3));
    CHECK(lhs <= rhs);
  }

  // Two agents rank a first; one receives it fully, the other holds a
  // strictly worse object.
  const Problem pair = unit_problem({{0, 1}, {0, 1}});
  const auto lopsided = mat({"1 0", "0 1"});
  const AxiomVerdict v = equal_rank_envy_free(pair, lopsided);
  REQUIRE_FALSE(v.holds);
  CHECK(*v.witness->agent_i == 1);
  CHECK(*v.witness->agent_j == 0);
  CHECK(*v.witness->object == 0);
  CHECK(*v.witness->lhs == 1);
  CHECK(*v.witness->rhs == 0);

  // The preference-independent rule satisfies the inequality with equality.
  RandomSource rng(59);
  for (int trial = 0; trial < 20; ++trial) {
    const Problem p = random_problem(rng, 3, 3, 2);
    CHECK(equal_rank_envy_free(p, uniform_rule(p)).holds);
  }
}

TEST_CASE("equal treatment of equals") {
  const Problem ex1 = example1_problem();
  CHECK(equal_treatment_of_equals(ex1, kRiaEx1).holds);  // no equal pair: vacuous

  Problem twins = example2_problem();
  twins.profile[1] = twins.profile[2];
  CHECK(equal_treatment_of_equals(twins, pr(twins)).holds);

  const Problem clones = unit_problem({{0, 1}, {0, 1}});
  const auto ia = simple_ia(clones, Ordering{{0, 1}}).to_random(2);
  CHECK_FALSE(equal_treatment_of_equals(clones, ia).holds);
}

TEST_CASE("envy-freeness notions") {
  const Problem ex2 = example2_problem();
  const AxiomVerdict weak = weak_sd_envy_free(ex2, kPrEx2);
  REQUIRE_FALSE(weak.holds);
  CHECK(*weak.witness->agent_i == 0);
  CHECK((*weak.witness->agent_j == 1 || *weak.witness->agent_j == 2));

  const Problem solo = unit_problem({{0, 1}});
  const auto top = mat({"1 0"});
  CHECK(weak_sd_envy_free(solo, top).holds);
  CHECK(sd_envy_free(solo, top).holds);

  // Simultaneous eating outputs are envy-free in the strong sense.
  RandomSource rng(61);
  for (int trial = 0; trial < 25; ++trial) {
    const Problem p = random_problem(rng, 3, 3, 2);
    CHECK(sd_envy_free(p, ps(p)).holds);
  }
  CHECK_FALSE(sd_envy_free(ex2, kPrEx2).holds);
}

TEST_CASE("favoring higher ranks") {
  const Problem prop2 = prop2_problem();
  const AxiomVerdict v = favors_higher_ranks(prop2, DeterministicAssignment{{2, 0, 1}});
  REQUIRE_FALSE(v.holds);
  CHECK(*v.witness->agent_i == 0);
  CHECK(*v.witness->agent_j == 1);
  CHECK(*v.witness->object == 0);

  const Problem solo = unit_problem({{1, 0}});
  CHECK(favors_higher_ranks(solo, DeterministicAssignment{{1}}).holds);

  RandomSource rng(67);
  for (int trial = 0; trial < 30; ++trial) {
    const Problem p = random_problem(rng, 4, 3, 2);
    Ordering f{{0, 1, 2, 3}};
    rng.shuffle(f.sequence);
    CHECK(favors_higher_ranks(p, simple_ia(p, f)).holds);
  }
}

TEST_CASE("equal-rank envy-freeness implies equal treatment on the exhaustive corpus") {
  Guards guards;
  for (const auto& p : exhaustive_corpus(3, 3, {}, /*canonical_only=*/true)) {
    for (const auto& name : all_rule_names()) {
      const RandomAssignment pi = make_rule(name, guards)(p);
      if (equal_rank_envy_free(p, pi).holds) CHECK(equal_treatment_of_equals(p, pi).holds);
    }
  }
}

TEST_CASE("failing verdicts replay against the raw definitions") {
  const Problem ex2 = example2_problem();
  // weak-sd-envy-freeness witness: the envied row strictly dominates.
  const AxiomVerdict weak = weak_sd_envy_free(ex2, kPrEx2);
  REQUIRE_FALSE(weak.holds);
  CHECK(replay_weak_dominance(ex2.profile[*weak.witness->agent_i],
                              kPrEx2.row(*weak.witness->agent_j),
                              kPrEx2.row(*weak.witness->agent_i)));

  // equal-rank witness: recompute both sides of the inequality from scratch.
  const Problem pair = unit_problem({{0, 1}, {0, 1}});
  const auto lopsided = mat({"1 0", "0 1"});
  const AxiomVerdict v = equal_rank_envy_free(pair, lopsided);
  REQUIRE_FALSE(v.holds);
  const AgentIdx i = *v.witness->agent_i, j = *v.witness->agent_j;
  const ObjectIdx a = *v.witness->object;
  REQUIRE(pair.profile[i].rank(a) == pair.profile[j].rank(a));
  Rational strict_sum = 0;
  for (ObjectIdx b : upper_contour(pair.profile[i], a, false)) strict_sum += lopsided.at(i, b);
  const Rational lhs = std::min(strict_sum + lopsided.at(j, a), Rational(1));
  const Rational rhs = strict_sum + lopsided.at(i, a);
  CHECK(lhs == *v.witness->lhs);
  CHECK(rhs == *v.witness->rhs);
  CHECK(lhs > rhs);
}
