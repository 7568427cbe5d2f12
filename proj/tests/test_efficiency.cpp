#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "prkit/audits.hpp"
#include "prkit/corpus.hpp"
#include "prkit/efficiency.hpp"
#include "prkit/rules.hpp"
#include "test_support.hpp"

using namespace prkit;
using namespace prkit::testing;

namespace {

const RandomAssignment kPrEx2 =
    mat({"1/3 0 0 2/3", "1/3 0 1/2 1/6", "1/3 0 1/2 1/6", "0 1 0 0"});
const RandomAssignment kRiaEx1 =
    mat({"1/2 0 3/8 1/8", "1/2 0 1/8 3/8", "0 1/2 3/8 1/8", "0 1/2 1/8 3/8"});
// The assignment exhibited against pr on the Example 2 profile.
const RandomAssignment kRankWitness = mat({"1 0 0 0", "0 0 1/2 1/2", "0 0 1/2 1/2", "0 1 0 0"});

std::vector<Rational> cum(std::vector<long long> nums, std::vector<long long> dens) {
  std::vector<Rational> out;
  for (size_t i = 0; i < nums.size(); ++i) out.emplace_back(nums[i], dens[i]);
  return out;
}

void replay_cycle(const Problem& problem, const RandomAssignment& pi, const Witness& w) {
  REQUIRE(!w.cycle.empty());
  for (size_t t = 0; t < w.cycle.size(); ++t) {
    const auto [agent, held] = w.cycle[t];
    const ObjectIdx wanted = w.cycle[(t + 1) % w.cycle.size()].second;
    CHECK(pi.at(agent, held) > 0);
    CHECK(problem.profile[agent].prefers(wanted, held));
  }
}

void replay_domination(const Problem& problem, const RandomAssignment& pi, const Witness& w) {
  REQUIRE(w.assignment.has_value());
  const RandomAssignment& better = *w.assignment;
  CHECK(validate_assignment(problem, better).empty());
  CHECK(!(better == pi));
  for (AgentIdx i = 0; i < problem.n(); ++i)
    CHECK(replay_weak_dominance(problem.profile[i], better.row(i), pi.row(i)));
}

}  // namespace

TEST_CASE("rank distributions") {
  const Problem ex2 = example2_problem();
  CHECK(rank_distribution(ex2, kRankWitness).cumulative == cum({2, 3, 4, 4}, {1, 1, 1, 1}));
  CHECK(rank_distribution(ex2, kPrEx2).cumulative == cum({2, 3, 10, 4}, {1, 1, 3, 1}));

  const Problem tops = unit_problem({{0, 1}, {1, 0}});
  const auto everyone_top = mat({"1 0", "0 1"});
  CHECK(rank_distribution(tops, everyone_top).cumulative == cum({2, 2}, {1, 1}));
}

TEST_CASE("rank dominance") {
  const Problem ex2 = example2_problem();
  CHECK(rank_dominates(ex2, kRankWitness, kPrEx2));
  CHECK_FALSE(rank_dominates(ex2, kPrEx2, kPrEx2));
  RankDistribution d1{cum({2, 3, 4, 4}, {1, 1, 1, 1})};
  RankDistribution d2{cum({2, 3, 10, 4}, {1, 1, 3, 1})};
  CHECK(rank_dominates(d1, d2));
  CHECK_FALSE(rank_dominates(d2, d1));
}

TEST_CASE("cycle characterization of sd-efficiency") {
  const Problem ex1 = example1_problem();
  const AxiomVerdict bad = sd_efficient_cycle_check(ex1, kRiaEx1);
  REQUIRE_FALSE(bad.holds);
  replay_cycle(ex1, kRiaEx1, *bad.witness);

  const Problem ex2 = example2_problem();
  CHECK(sd_efficient_cycle_check(ex2, kPrEx2).holds);

  const Problem tops = unit_problem({{0, 1}, {1, 0}});
  CHECK(sd_efficient_cycle_check(tops, mat({"1 0", "0 1"})).holds);
}

TEST_CASE("lp oracle for sd-efficiency") {
  const Problem ex1 = example1_problem();
  const AxiomVerdict bad = sd_efficient_lp_oracle(ex1, kRiaEx1);
  REQUIRE_FALSE(bad.holds);
  replay_domination(ex1, kRiaEx1, *bad.witness);

  const Problem ex2 = example2_problem();
  CHECK(sd_efficient_lp_oracle(ex2, kPrEx2).holds);
}

TEST_CASE("cycle check agrees with the lp oracle on random instances") {
  RandomSource rng(71);
  Guards guards;
  for (int trial = 0; trial < 25; ++trial) {
    const Problem p = random_problem(rng, 3, 3, 2);
    for (const auto& name : all_rule_names()) {
      const RandomAssignment pi = make_rule(name, guards)(p);
      CHECK(sd_efficient_cycle_check(p, pi).holds == sd_efficient_lp_oracle(p, pi).holds);
    }
  }
}

TEST_CASE("rank efficiency oracle") {
  const Problem ex2 = example2_problem();
  const AxiomVerdict v = rank_efficient_check(ex2, kPrEx2);
  REQUIRE_FALSE(v.holds);
  // Replay: the witness matrix rank-dominates the audited one.
  REQUIRE(v.witness->assignment.has_value());
  CHECK(validate_assignment(ex2, *v.witness->assignment).empty());
  CHECK(rank_dominates(ex2, *v.witness->assignment, kPrEx2));

  const Problem tops = unit_problem({{0, 1}, {1, 0}});
  CHECK(rank_efficient_check(tops, mat({"1 0", "0 1"})).holds);

  // Simultaneous eating on the first walk-through profile yields the same
  // matrix as rank-synchronized eating, and it is rank efficient there.
  const Problem ex1 = example1_problem();
  CHECK(rank_efficient_check(ex1, ps(ex1)).holds);
  CHECK(rank_distribution(ex1, ps(ex1)).cumulative == cum({2, 4, 4, 4}, {1, 1, 1, 1}));
}

TEST_CASE("deterministic enumeration and pareto efficiency") {
  const Problem prop2 = prop2_problem();
  CHECK(all_deterministic(prop2).size() == 6);

  const DeterministicAssignment d{{2, 0, 1}};  // 1->c 2->a 3->b
  CHECK(pareto_efficient(prop2, d).holds);
  CHECK(sd_efficient_cycle_check(prop2, d.to_random(3)).holds);

  const Problem swap = unit_problem({{0, 1}, {1, 0}});
  const AxiomVerdict v = pareto_efficient(swap, DeterministicAssignment{{1, 0}});
  REQUIRE_FALSE(v.holds);
  REQUIRE(v.witness->assignment.has_value());

  Guards tiny;
  tiny.brute_max_agents = 2;
  CHECK_THROWS_AS(all_deterministic(prop2, tiny), SizeGuardError);
}

TEST_CASE("immediate acceptance outputs are pareto efficient on the 3x3 corpus") {
  RandomSource rng(73);
  const auto corpus = exhaustive_corpus(3, 3, {}, /*canonical_only=*/true);
  for (size_t idx = 0; idx < corpus.size(); idx += 3) {  // sampled subset; full sweep in acceptance
    Ordering f{{0, 1, 2}};
    rng.shuffle(f.sequence);
    CHECK(pareto_efficient(corpus[idx], simple_ia(corpus[idx], f)).holds);
  }
}

TEST_CASE("ex post efficiency") {
  const Problem swap = unit_problem({{0, 1}, {1, 0}});
  // The flipped matching is Pareto dominated, and as a degenerate lottery it
  // is exactly the one decomposition of itself.
  CHECK_FALSE(ex_post_efficient_check(swap, mat({"0 1", "1 0"})).holds);
  CHECK(ex_post_efficient_check(swap, mat({"1 0", "0 1"})).holds);

  RandomSource rng(79);
  Guards guards;
  for (int trial = 0; trial < 12; ++trial) {
    const Problem p = random_problem(rng, 3, 3, 1);
    CHECK(ex_post_efficient_check(p, rsd(p)).holds);
  }

  // Farkas witness replays: y certifies that the weight system is empty.
  const AxiomVerdict v = ex_post_efficient_check(swap, mat({"0 1", "1 0"}));
  REQUIRE_FALSE(v.holds);
  const auto pe = pareto_efficient_set(swap);
  const auto& y = v.witness->certificate;
  REQUIRE(y.size() == 4 + 1);  // one per matrix cell plus the weight-sum row
  Rational rhs_combo = 0;
  const RandomAssignment pi = mat({"0 1", "1 0"});
  for (int cell = 0; cell < 4; ++cell) rhs_combo += y[cell] * pi.cells[cell];
  rhs_combo += y[4] * 1;
  CHECK(rhs_combo > 0);
  for (size_t t = 0; t < pe.size(); ++t) {
    Rational col = y[4];
    for (AgentIdx i = 0; i < 2; ++i) col += y[i * 2 + pe[t].object_of[i]];
    CHECK(col <= 0);
  }
}

TEST_CASE("birkhoff decomposition") {
  const Problem swap = unit_problem({{0, 1}, {1, 0}});
  const Decomposition trivial = bvn_decompose(swap, mat({"1 0", "0 1"}));
  REQUIRE(trivial.parts.size() == 1);
  CHECK(trivial.parts[0].first == 1);
  CHECK(trivial.parts[0].second.object_of == std::vector<ObjectIdx>{0, 1});

  const Decomposition half = bvn_decompose(swap, mat({"1/2 1/2", "1/2 1/2"}));
  REQUIRE(half.parts.size() == 2);
  CHECK(half.parts[0].first == Rational(1, 2));
  CHECK(half.parts[1].first == Rational(1, 2));
  CHECK(half.parts[0].second.object_of != half.parts[1].second.object_of);

  const Problem ex1 = example1_problem();
  const Decomposition dec = bvn_decompose(ex1, kRiaEx1);
  Rational weight_total = 0;
  RandomAssignment rebuilt(4, 4);
  for (const auto& [w, d] : dec.parts) {
    CHECK(w > 0);
    weight_total += w;
    CHECK(validate_deterministic(ex1, d).empty());
    for (AgentIdx i = 0; i < 4; ++i) rebuilt.at(i, d.object_of[i]) += w;
  }
  CHECK(weight_total == 1);
  CHECK(rebuilt == kRiaEx1);
  CHECK(dec.parts.size() <= 4 * 4 + 1);
}

TEST_CASE("birkhoff decomposition on random rule outputs") {
  RandomSource rng(83);
  Guards guards;
  for (int trial = 0; trial < 15; ++trial) {
    const Problem p = random_problem(rng, 2 + static_cast<int>(rng.below(3)),
                                     2 + static_cast<int>(rng.below(3)), 2);
    for (const auto& name : all_rule_names()) {
      const RandomAssignment pi = make_rule(name, guards)(p);
      const Decomposition dec = bvn_decompose(p, pi);
      Rational total = 0;
      RandomAssignment rebuilt(p.n(), p.m());
      for (const auto& [w, d] : dec.parts) {
        total += w;
        CHECK(validate_deterministic(p, d).empty());
        for (AgentIdx i = 0; i < p.n(); ++i) rebuilt.at(i, d.object_of[i]) += w;
      }
      CHECK(total == 1);
      CHECK(rebuilt == pi);
      CHECK(static_cast<int>(dec.parts.size()) <= p.n() * p.m() + 1);
    }
  }
}

TEST_CASE("rank fairness and rank efficiency are independent") {
  // Rank-synchronized eating is rank fair yet rank dominated on the second
  // walk-through profile.
  const Problem ex2 = example2_problem();
  CHECK(sd_rank_fair(ex2, kPrEx2).holds);
  CHECK_FALSE(rank_efficient_check(ex2, kPrEx2).holds);

  // Conversely: everyone-top-down assignment on a profile where two agents
  // agree is rank efficient but not rank fair.
  const Problem skewed = unit_problem({{0, 1, 2}, {0, 1, 2}, {1, 2, 0}});
  const auto d = DeterministicAssignment{{0, 1, 2}}.to_random(3);
  CHECK(rank_efficient_check(skewed, d).holds);
  CHECK_FALSE(sd_rank_fair(skewed, d).holds);
}

TEST_CASE("efficiency implication chain on the canonical corpus") {
  Guards guards;
  const auto corpus = exhaustive_corpus(3, 3, {}, /*canonical_only=*/true);
  for (size_t idx = 0; idx < corpus.size(); idx += 4) {  // subset; full sweep in acceptance
    const Problem& p = corpus[idx];
    const auto pe = pareto_efficient_set(p, guards);
    for (const auto& name : all_rule_names()) {
      const RandomAssignment pi = make_rule(name, guards)(p);
      const bool rank_eff = rank_efficient_check(p, pi, guards).holds;
      const bool sd_eff = sd_efficient_cycle_check(p, pi).holds;
      const bool ex_post = ex_post_efficient_check(p, pi, guards, &pe).holds;
      if (rank_eff) CHECK(sd_eff);
      if (sd_eff) CHECK(ex_post);
    }
  }
}
