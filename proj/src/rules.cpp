#include "prkit/rules.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

namespace prkit {

namespace {

void require_valid_ordering(const Problem& problem, const Ordering& f) {
  if (static_cast<int>(f.sequence.size()) != problem.n())
    throw std::invalid_argument("ordering size differs from the agent count");
  std::vector<char> seen(problem.n(), 0);
  for (AgentIdx i : f.sequence) {
    if (i < 0 || i >= problem.n() || seen[i])
      throw std::invalid_argument("ordering is not a permutation of the agent set");
    seen[i] = 1;
  }
}

// Factorial for the enumeration guard and exact averaging.
long long factorial(int n) {
  long long f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// Shared driver for ria/rsd: exact average of a deterministic rule over
// all n! orderings, accumulated as integer counts.
template <typename DetRule>
RandomAssignment average_over_orderings(const Problem& problem, const Guards& guards,
                                        DetRule&& det_rule, const char* rule_name) {
  require_valid(problem);
  const int n = problem.n();
  if (n > guards.enumeration_max_agents)
    throw SizeGuardError(std::string(rule_name) + ": exact enumeration of " +
                         std::to_string(n) +
                         "! orderings exceeds the cap of n <= " +
                         std::to_string(guards.enumeration_max_agents) +
                         "; use the sampled estimator instead");
  std::vector<AgentIdx> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<long long> counts(static_cast<size_t>(n) * problem.m(), 0);
  do {
    DeterministicAssignment d = det_rule(problem, Ordering{perm});
    for (AgentIdx i = 0; i < n; ++i)
      ++counts[static_cast<size_t>(i) * problem.m() + d.object_of[i]];
  } while (std::next_permutation(perm.begin(), perm.end()));
  const long long total = factorial(n);
  RandomAssignment pi(n, problem.m());
  for (size_t c = 0; c < counts.size(); ++c) pi.cells[c] = Rational(counts[c], total);
  return pi;
}

template <typename DetRule>
RandomAssignment average_over_sampled_orderings(const Problem& problem, int samples,
                                                uint64_t seed, DetRule&& det_rule) {
  require_valid(problem);
  if (samples <= 0) throw std::invalid_argument("sample count must be positive");
  std::mt19937_64 eng(seed);
  const int n = problem.n();
  std::vector<AgentIdx> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<long long> counts(static_cast<size_t>(n) * problem.m(), 0);
  for (int s = 0; s < samples; ++s) {
    // Fisher-Yates with rejection sampling keeps the stream portable.
    for (int i = n - 1; i > 0; --i) {
      const uint64_t bound = static_cast<uint64_t>(i) + 1;
      const uint64_t limit = std::numeric_limits<uint64_t>::max() -
                             std::numeric_limits<uint64_t>::max() % bound;
      uint64_t r;
      do {
        r = eng();
      } while (r >= limit);
      std::swap(perm[i], perm[r % bound]);
    }
    DeterministicAssignment d = det_rule(problem, Ordering{perm});
    for (AgentIdx i = 0; i < n; ++i)
      ++counts[static_cast<size_t>(i) * problem.m() + d.object_of[i]];
  }
  RandomAssignment pi(n, problem.m());
  for (size_t c = 0; c < counts.size(); ++c) pi.cells[c] = Rational(counts[c], samples);
  return pi;
}

}  // namespace

DeterministicAssignment simple_ia(const Problem& problem, const Ordering& f) {
  require_valid(problem);
  require_valid_ordering(problem, f);
  const int n = problem.n();
  const int m = problem.m();
  std::vector<int> priority(n);  // lower value = higher priority
  for (int pos = 0; pos < n; ++pos) priority[f.sequence[pos]] = pos;

  std::vector<ObjectIdx> assigned(n, -1);
  std::vector<int> residual = problem.quotas;
  for (int step = 1; step <= m; ++step) {
    std::vector<std::vector<AgentIdx>> applicants(m);
    for (AgentIdx i = 0; i < n; ++i)
      if (assigned[i] < 0) applicants[problem.profile[i].at_rank(step)].push_back(i);
    for (ObjectIdx a = 0; a < m; ++a) {
      auto& apps = applicants[a];
      if (apps.empty()) continue;
      std::sort(apps.begin(), apps.end(),
                [&](AgentIdx x, AgentIdx y) { return priority[x] < priority[y]; });
      const int accepted = std::min<int>(residual[a], static_cast<int>(apps.size()));
      for (int t = 0; t < accepted; ++t) assigned[apps[t]] = a;
      residual[a] -= accepted;
    }
  }
  for (AgentIdx i = 0; i < n; ++i)
    if (assigned[i] < 0)
      throw std::logic_error("immediate acceptance left an agent unassigned after m steps");
  return DeterministicAssignment{std::move(assigned)};
}

RandomAssignment ria(const Problem& problem, const Guards& guards) {
  return average_over_orderings(problem, guards, simple_ia, "ria");
}

std::vector<Rational> waterfill(const std::vector<Rational>& demands,
                                const Rational& capacity) {
  return waterfill_weighted(demands, std::vector<Rational>(demands.size(), 1), capacity);
}

std::vector<Rational> waterfill_weighted(const std::vector<Rational>& demands,
                                         const std::vector<Rational>& speeds,
                                         const Rational& capacity) {
  if (speeds.size() != demands.size())
    throw std::invalid_argument("speeds and demands differ in length");
  if (capacity < 0) throw std::invalid_argument("capacity must be nonnegative");
  for (size_t i = 0; i < demands.size(); ++i) {
    if (demands[i] < 0) throw std::invalid_argument("demands must be nonnegative");
    if (speeds[i] <= 0) throw std::invalid_argument("speeds must be positive");
  }
  Rational total = 0;
  for (const auto& d : demands) total += d;
  if (total <= capacity) return demands;

  // Solve sum_i min(d_i, s_i * theta) = capacity. The left side is piecewise
  // linear and increasing in theta with breakpoints at d_i / s_i.
  const size_t g = demands.size();
  std::vector<size_t> idx(g);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](size_t x, size_t y) {
    return demands[x] * speeds[y] < demands[y] * speeds[x];  // d_x/s_x < d_y/s_y
  });
  Rational saturated_mass = 0;  // sum of demands already below theta
  Rational active_speed = 0;
  for (const auto& s : speeds) active_speed += s;
  Rational theta = -1;
  for (size_t j = 0; j <= g; ++j) {
    // Candidate segment: breakpoints idx[0..j-1] are saturated.
    Rational candidate = (capacity - saturated_mass) / active_speed;
    const bool above_prev =
        j == 0 || candidate * speeds[idx[j - 1]] >= demands[idx[j - 1]];
    const bool below_next =
        j == g || candidate * speeds[idx[j]] <= demands[idx[j]];
    if (above_prev && below_next) {
      theta = candidate;
      break;
    }
    if (j == g) break;
    saturated_mass += demands[idx[j]];
    active_speed -= speeds[idx[j]];
    if (active_speed == 0) break;  // all demands saturated; cannot happen when total > capacity
  }
  if (theta < 0) throw std::logic_error("waterfill level equation had no solution");
  std::vector<Rational> amounts(g);
  for (size_t i = 0; i < g; ++i) amounts[i] = std::min(demands[i], speeds[i] * theta);
  return amounts;
}

RandomAssignment pr(const Problem& problem, EatingTrace* trace) {
  return pr_weighted(problem, std::vector<Rational>(problem.profile.size(), 1), trace);
}

RandomAssignment pr_weighted(const Problem& problem, const std::vector<Rational>& speeds,
                             EatingTrace* trace) {
  require_valid(problem);
  if (static_cast<int>(speeds.size()) != problem.n())
    throw std::invalid_argument("speed vector size differs from the agent count");
  for (const auto& s : speeds)
    if (s <= 0) throw std::invalid_argument("speeds must be positive");
  const int n = problem.n();
  const int m = problem.m();
  RandomAssignment pi(n, m);
  std::vector<Rational> demand(n, 1);
  std::vector<Rational> residual(m);
  for (ObjectIdx a = 0; a < m; ++a) residual[a] = problem.quotas[a];
  if (trace) trace->stages.clear();

  for (int stage = 1; stage <= m; ++stage) {
    std::map<ObjectIdx, std::vector<AgentIdx>> eaters;
    for (AgentIdx i = 0; i < n; ++i)
      if (demand[i] > 0) eaters[problem.profile[i].at_rank(stage)].push_back(i);
    EatingStage st;
    st.stage = stage;
    for (auto& [a, group] : eaters) {
      StageObjectTrace ot;
      ot.object = a;
      ot.eaters = group;
      ot.residual_before = residual[a];
      std::vector<Rational> d(group.size()), s(group.size());
      for (size_t t = 0; t < group.size(); ++t) {
        d[t] = demand[group[t]];
        s[t] = speeds[group[t]];
      }
      std::vector<Rational> amounts = waterfill_weighted(d, s, residual[a]);
      for (size_t t = 0; t < group.size(); ++t) {
        const AgentIdx i = group[t];
        pi.at(i, a) += amounts[t];
        demand[i] -= amounts[t];
        residual[a] -= amounts[t];
        ot.amounts.emplace_back(i, amounts[t]);
      }
      ot.residual_after = residual[a];
      st.objects.push_back(std::move(ot));
    }
    if (trace) trace->stages.push_back(std::move(st));
  }
  for (AgentIdx i = 0; i < n; ++i)
    if (demand[i] != 0)
      throw std::logic_error("rank-synchronized eating left an agent hungry after m stages");
  return pi;
}

RandomAssignment ps(const Problem& problem, EatingTrace* trace) {
  require_valid(problem);
  const int n = problem.n();
  const int m = problem.m();
  RandomAssignment pi(n, m);
  std::vector<Rational> residual(m);
  for (ObjectIdx a = 0; a < m; ++a) residual[a] = problem.quotas[a];
  Rational t = 0;
  if (trace) trace->stages.clear();
  int event = 0;

  while (t < 1) {
    // Everyone still eats at speed 1 until exactly time 1, so the only
    // events are object exhaustions and the final cutoff.
    std::map<ObjectIdx, std::vector<AgentIdx>> eaters;
    int eating = 0;
    for (AgentIdx i = 0; i < n; ++i) {
      const auto& pref = problem.profile[i];
      for (int k = 1; k <= m; ++k) {
        ObjectIdx a = pref.at_rank(k);
        if (residual[a] > 0) {
          eaters[a].push_back(i);
          ++eating;
          break;
        }
      }
    }
    if (eating != n)
      throw std::logic_error("simultaneous eating ran out of supply before time 1");
    Rational dt = 1 - t;
    for (const auto& [a, group] : eaters)
      dt = std::min(dt, residual[a] / static_cast<int>(group.size()));
    EatingStage st;
    st.stage = ++event;
    st.time_begin = t;
    st.time_end = t + dt;
    for (auto& [a, group] : eaters) {
      StageObjectTrace ot;
      ot.object = a;
      ot.eaters = group;
      ot.residual_before = residual[a];
      for (AgentIdx i : group) {
        pi.at(i, a) += dt;
        ot.amounts.emplace_back(i, dt);
      }
      residual[a] -= dt * static_cast<int>(group.size());
      ot.residual_after = residual[a];
      st.objects.push_back(std::move(ot));
    }
    if (trace) trace->stages.push_back(std::move(st));
    t += dt;
  }
  return pi;
}

DeterministicAssignment serial_dictatorship(const Problem& problem, const Ordering& f) {
  require_valid(problem);
  require_valid_ordering(problem, f);
  std::vector<int> residual = problem.quotas;
  std::vector<ObjectIdx> assigned(problem.n(), -1);
  for (AgentIdx i : f.sequence) {
    for (int k = 1; k <= problem.m(); ++k) {
      ObjectIdx a = problem.profile[i].at_rank(k);
      if (residual[a] > 0) {
        assigned[i] = a;
        --residual[a];
        break;
      }
    }
    if (assigned[i] < 0)
      throw std::logic_error("serial dictatorship found no residual object");
  }
  return DeterministicAssignment{std::move(assigned)};
}

RandomAssignment rsd(const Problem& problem, const Guards& guards) {
  return average_over_orderings(problem, guards, serial_dictatorship, "rsd");
}

RandomAssignment uniform_rule(const Problem& problem) {
  require_valid(problem);
  const int total = problem.total_quota();
  RandomAssignment pi(problem.n(), problem.m());
  for (AgentIdx i = 0; i < problem.n(); ++i)
    for (ObjectIdx a = 0; a < problem.m(); ++a)
      pi.at(i, a) = Rational(problem.quotas[a], total);
  return pi;
}

RandomAssignment sampled_ria(const Problem& problem, int samples, uint64_t seed) {
  return average_over_sampled_orderings(problem, samples, seed, simple_ia);
}

RandomAssignment sampled_rsd(const Problem& problem, int samples, uint64_t seed) {
  return average_over_sampled_orderings(problem, samples, seed, serial_dictatorship);
}

}  // namespace prkit
