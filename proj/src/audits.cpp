#include "prkit/audits.hpp"

#include <algorithm>
#include <sstream>

#include "prkit/rules.hpp"

namespace prkit {

const std::vector<std::string>& grid_rule_names() {
  static const std::vector<std::string> names{"rsd", "ps", "ria", "pr"};
  return names;
}

const std::vector<std::string>& all_rule_names() {
  static const std::vector<std::string> names{"pr", "ps", "ria", "rsd", "uniform"};
  return names;
}

RuleFn make_rule(const std::string& name, const Guards& guards) {
  if (name == "pr") return [](const Problem& p) { return pr(p); };
  if (name == "ps") return [](const Problem& p) { return ps(p); };
  if (name == "ria") return [guards](const Problem& p) { return ria(p, guards); };
  if (name == "rsd") return [guards](const Problem& p) { return rsd(p, guards); };
  if (name == "uniform") return [](const Problem& p) { return uniform_rule(p); };
  throw std::invalid_argument("unknown rule '" + name + "'");
}

const std::vector<std::string>& grid_axiom_names() {
  static const std::vector<std::string> names{
      "weak-strategy-proof",       "strategy-proof",
      "equal-treatment-of-equals", "weak-sd-envy-free",
      "sd-envy-free",              "equal-rank-envy-free",
      "ex-post-efficient",         "sd-efficient",
      "sd-rank-fair",              "rank-efficient"};
  return names;
}

const std::vector<std::string>& assignment_axiom_names() {
  static const std::vector<std::string> names{
      "non-wasteful",       "sd-rank-fair",       "equal-rank-envy-free",
      "equal-treatment-of-equals", "weak-sd-envy-free", "sd-envy-free",
      "sd-efficient",       "rank-efficient",     "ex-post-efficient",
      "favors-higher-ranks", "pareto-efficient"};
  return names;
}

bool is_incentive_axiom(const std::string& axiom) {
  return axiom == "weak-strategy-proof" || axiom == "strategy-proof";
}

namespace {

bool is_deterministic_matrix(const RandomAssignment& pi) {
  for (const auto& cell : pi.cells)
    if (cell != 0 && cell != 1) return false;
  return true;
}

DeterministicAssignment to_deterministic(const RandomAssignment& pi) {
  DeterministicAssignment d;
  d.object_of.assign(pi.rows, -1);
  for (AgentIdx i = 0; i < pi.rows; ++i)
    for (ObjectIdx a = 0; a < pi.cols; ++a)
      if (pi.at(i, a) == 1) d.object_of[i] = a;
  return d;
}

}  // namespace

AxiomVerdict evaluate_axiom(const Problem& problem, const RandomAssignment& pi,
                            const std::string& axiom, const Guards& guards,
                            const std::vector<DeterministicAssignment>* pareto_set) {
  if (axiom == "non-wasteful") return non_wasteful(problem, pi);
  if (axiom == "sd-rank-fair") return sd_rank_fair(problem, pi);
  if (axiom == "equal-rank-envy-free") return equal_rank_envy_free(problem, pi);
  if (axiom == "equal-treatment-of-equals") return equal_treatment_of_equals(problem, pi);
  if (axiom == "weak-sd-envy-free") return weak_sd_envy_free(problem, pi);
  if (axiom == "sd-envy-free") return sd_envy_free(problem, pi);
  if (axiom == "sd-efficient") return sd_efficient_cycle_check(problem, pi);
  if (axiom == "rank-efficient") return rank_efficient_check(problem, pi, guards);
  if (axiom == "ex-post-efficient")
    return ex_post_efficient_check(problem, pi, guards, pareto_set);
  if (axiom == "favors-higher-ranks" || axiom == "pareto-efficient") {
    if (!is_deterministic_matrix(pi))
      throw std::invalid_argument("axiom '" + axiom + "' requires a deterministic assignment");
    DeterministicAssignment d = to_deterministic(pi);
    return axiom == "favors-higher-ranks" ? favors_higher_ranks(problem, d)
                                          : pareto_efficient(problem, d, guards);
  }
  if (is_incentive_axiom(axiom))
    throw std::invalid_argument("axiom '" + axiom + "' needs a rule, not a single assignment");
  throw std::invalid_argument("unknown axiom '" + axiom + "'");
}

InstanceVerdict evaluate_rule_axiom(const Problem& problem, const std::string& rule,
                                    const std::string& axiom, const Guards& guards) {
  InstanceVerdict out;
  const RuleFn fn = make_rule(rule, guards);
  if (is_incentive_axiom(axiom)) {
    const SpMode mode = axiom == "weak-strategy-proof" ? SpMode::kWeak : SpMode::kStrict;
    if (auto w = find_manipulation(problem, fn, mode, guards)) {
      out.holds = false;
      out.manipulation = std::move(*w);
    }
    return out;
  }
  AxiomVerdict verdict = evaluate_axiom(problem, fn(problem), axiom, guards);
  out.holds = verdict.holds;
  out.witness = std::move(verdict.witness);
  return out;
}

namespace {

Problem named_problem(std::vector<int> quotas, std::vector<std::vector<ObjectIdx>> orders) {
  return make_problem(std::move(quotas), std::move(orders));
}

}  // namespace

Problem example1_problem() {
  // 1: a c b d | 2: a d b c | 3: b c a d | 4: b d a c
  return named_problem({1, 1, 1, 1},
                       {{0, 2, 1, 3}, {0, 3, 1, 2}, {1, 2, 0, 3}, {1, 3, 0, 2}});
}

Problem example2_problem() {
  // 1: a b c d | 2: a c d b | 3: a c d b | 4: b a c d
  return named_problem({1, 1, 1, 1},
                       {{0, 1, 2, 3}, {0, 2, 3, 1}, {0, 2, 3, 1}, {1, 0, 2, 3}});
}

Problem example2_problem_misreport1() {
  Problem p = example2_problem();
  p.profile[0] = Preference{{0, 2, 1, 3}};  // a c b d
  return p;
}

Problem example2_problem_misreport2() {
  Problem p = example2_problem();
  p.profile[0] = Preference{{0, 2, 3, 1}};  // a c d b
  return p;
}

Problem prop2_problem() {
  // 1: a b c | 2: b a c | 3: b a c
  return named_problem({1, 1, 1}, {{0, 1, 2}, {1, 0, 2}, {1, 0, 2}});
}

std::vector<Problem> landmark_problems() {
  std::vector<Problem> out;
  out.push_back(example1_problem());
  out.push_back(example2_problem());
  out.push_back(example2_problem_misreport1());
  out.push_back(prop2_problem());
  // Two pairs of agents with flipped tails; the ordering lottery wastes
  // second choices here.
  out.push_back(named_problem({1, 1, 1, 1},
                              {{0, 1, 2, 3}, {0, 1, 2, 3}, {1, 0, 3, 2}, {1, 0, 3, 2}}));
  // Three agents share a top object while the fourth eats hers alone and
  // reaches the common second choice late.
  out.push_back(named_problem({1, 1, 1, 1},
                              {{0, 1, 2, 3}, {0, 2, 3, 1}, {0, 2, 3, 1}, {1, 2, 3, 0}}));
  return out;
}

SearchResult search_counterexample(const std::string& rule, const std::string& axiom,
                                   const SearchOptions& options, const Guards& guards) {
  SearchResult result;
  auto scan_block = [&](const std::vector<Problem>& block) -> std::optional<SearchHit> {
    const auto verdicts = parallel_map<std::optional<InstanceVerdict>>(
        block.size(),
        [&](size_t idx) -> std::optional<InstanceVerdict> {
          InstanceVerdict v = evaluate_rule_axiom(block[idx], rule, axiom, guards);
          if (v.holds) return std::nullopt;
          return v;
        },
        options.threads);
    for (size_t idx = 0; idx < block.size(); ++idx) {
      ++result.instances_checked;
      if (verdicts[idx])
        return SearchHit{block[idx], std::move(*verdicts[idx]), result.instances_checked - 1};
    }
    return std::nullopt;
  };

  if (options.include_landmarks) {
    for (const auto& lm : landmark_problems()) {
      if (lm.n() > options.agents || lm.m() > options.objects) continue;
      ++result.instances_checked;
      InstanceVerdict v = evaluate_rule_axiom(lm, rule, axiom, guards);
      if (!v.holds) {
        result.hit = SearchHit{lm, std::move(v), result.instances_checked - 1};
        return result;
      }
    }
  }

  if (options.exhaustive) {
    if (options.objects > 3 || options.agents > 4)
      throw SizeGuardError("search: exhaustive profile enumeration beyond 4 agents / 3 objects "
                           "is not supported; use random mode");
    std::vector<int> quotas;  // unit quotas in exhaustive mode
    const auto corpus =
        exhaustive_corpus(options.agents, options.objects, quotas, /*canonical_only=*/true);
    constexpr size_t kBlock = 128;
    for (size_t start = 0; start < corpus.size(); start += kBlock) {
      std::vector<Problem> block(corpus.begin() + start,
                                 corpus.begin() + std::min(corpus.size(), start + kBlock));
      if (auto hit = scan_block(block)) {
        result.hit = std::move(hit);
        return result;
      }
    }
    return result;
  }

  RandomSource rng(options.seed);
  long long remaining = options.samples;
  while (remaining > 0) {
    const size_t block_size = static_cast<size_t>(std::min<long long>(remaining, 128));
    std::vector<Problem> block;
    block.reserve(block_size);
    for (size_t b = 0; b < block_size; ++b)
      block.push_back(random_problem(rng, options.agents, options.objects, options.max_quota));
    if (auto hit = scan_block(block)) {
      result.hit = std::move(hit);
      return result;
    }
    remaining -= static_cast<long long>(block_size);
  }
  return result;
}

GridResult rule_axiom_grid(const GridOptions& options, const Guards& guards) {
  GridResult grid;
  grid.axioms = grid_axiom_names();
  grid.rules = grid_rule_names();
  grid.cells.assign(grid.axioms.size(), std::vector<GridCell>(grid.rules.size()));
  {
    std::ostringstream note;
    note << "check = no violation on the exhaustive " << options.exhaustive_agents << "x"
         << options.exhaustive_objects << " unit-quota corpus nor in the targeted search; "
         << "cross = counterexample found (landmarks, exhaustive corpus, then "
         << options.random_samples << " seeded random " << options.search_agents << "x"
         << options.search_objects << " instances, seed " << options.seed << ")";
    grid.bounds_note = note.str();
  }

  const auto corpus = exhaustive_corpus(options.exhaustive_agents, options.exhaustive_objects,
                                        {}, /*canonical_only=*/true);
  for (size_t x = 0; x < grid.axioms.size(); ++x) {
    for (size_t r = 0; r < grid.rules.size(); ++r) {
      GridCell& cell = grid.cells[x][r];
      SearchOptions search;
      search.agents = options.search_agents;
      search.objects = options.search_objects;
      search.threads = options.threads;
      search.include_landmarks = true;
      search.exhaustive = false;
      search.seed = options.seed + 1000003 * (x * grid.rules.size() + r);
      search.samples = 0;  // landmarks only on this first pass
      SearchResult hit = search_counterexample(grid.rules[r], grid.axioms[x], search, guards);
      if (!hit.hit) {
        // Exhaustive corpus scan.
        const auto verdicts = parallel_map<char>(
            corpus.size(),
            [&](size_t idx) {
              return evaluate_rule_axiom(corpus[idx], grid.rules[r], grid.axioms[x], guards).holds
                         ? char(1)
                         : char(0);
            },
            options.threads);
        for (size_t idx = 0; idx < corpus.size() && !hit.hit; ++idx)
          if (!verdicts[idx])
            hit.hit = SearchHit{corpus[idx],
                                evaluate_rule_axiom(corpus[idx], grid.rules[r], grid.axioms[x], guards),
                                static_cast<long long>(idx)};
      }
      if (!hit.hit && options.random_samples > 0) {
        SearchOptions random_search = search;
        random_search.include_landmarks = false;
        random_search.samples = options.random_samples;
        random_search.max_quota = 2;
        SearchResult r2 = search_counterexample(grid.rules[r], grid.axioms[x], random_search, guards);
        if (r2.hit) hit.hit = std::move(r2.hit);
      }
      if (hit.hit) {
        cell.holds = false;
        cell.counterexample = hit.hit->problem;
        cell.detail = "counterexample with " + std::to_string(hit.hit->problem.n()) +
                      " agents, " + std::to_string(hit.hit->problem.m()) + " objects";
      } else {
        cell.holds = true;
        cell.detail = "no violation found";
      }
    }
  }
  return grid;
}

std::string render_grid(const GridResult& grid) {
  size_t label_width = 0;
  for (const auto& axiom : grid.axioms) label_width = std::max(label_width, axiom.size());
  std::ostringstream os;
  os << std::string(label_width, ' ');
  for (const auto& rule : grid.rules) {
    std::string upper = rule;
    std::transform(upper.begin(), upper.end(), upper.begin(), ::toupper);
    os << "  " << upper;
  }
  os << "\n";
  for (size_t x = 0; x < grid.axioms.size(); ++x) {
    os << grid.axioms[x] << std::string(label_width - grid.axioms[x].size(), ' ');
    for (size_t r = 0; r < grid.rules.size(); ++r) {
      const size_t pad = grid.rules[r].size() + 1;
      os << std::string(pad, ' ') << (grid.cells[x][r].holds ? "+" : "x");
    }
    os << "\n";
  }
  os << grid.bounds_note << "\n";
  return os.str();
}

std::vector<CompareRuleStats> compare_rules(const CompareOptions& options,
                                            const Guards& guards) {
  if (options.rules.empty()) throw std::invalid_argument("compare: no rules given");
  if (options.samples <= 0) throw std::invalid_argument("compare: sample count must be positive");
  static const std::vector<std::string> battery{
      "non-wasteful", "sd-rank-fair", "equal-rank-envy-free", "weak-sd-envy-free",
      "sd-efficient"};
  RandomSource rng(options.seed);
  std::vector<Problem> instances;
  instances.reserve(static_cast<size_t>(options.samples));
  for (int s = 0; s < options.samples; ++s)
    instances.push_back(random_problem(rng, options.agents, options.objects, options.max_quota));

  std::vector<CompareRuleStats> stats;
  for (const auto& rule : options.rules) {
    CompareRuleStats st;
    st.rule = rule;
    st.mean_rank_mass.assign(options.objects, 0);
    for (const auto& axiom : battery) st.violation_counts[axiom] = 0;
    struct PerInstance {
      RankDistribution dist;
      std::vector<char> violated;
    };
    const auto rows = parallel_map<PerInstance>(
        instances.size(),
        [&](size_t idx) {
          PerInstance out;
          const RandomAssignment pi = make_rule(rule, guards)(instances[idx]);
          out.dist = rank_distribution(instances[idx], pi);
          out.violated.reserve(battery.size());
          for (const auto& axiom : battery)
            out.violated.push_back(
                evaluate_axiom(instances[idx], pi, axiom, guards).holds ? 0 : 1);
          return out;
        },
        options.threads);
    for (const auto& row : rows) {
      for (int k = 0; k < options.objects; ++k) st.mean_rank_mass[k] += row.dist.cumulative[k];
      for (size_t b = 0; b < battery.size(); ++b)
        st.violation_counts[battery[b]] += row.violated[b];
    }
    for (auto& mass : st.mean_rank_mass) mass /= options.samples;
    stats.push_back(std::move(st));
  }
  return stats;
}

}  // namespace prkit
