#include "prkit/efficiency.hpp"

#include <algorithm>
#include <deque>

#include "prkit/ratlp.hpp"

namespace prkit {

namespace {

AxiomVerdict pass(const char* axiom) { return {axiom, true, std::nullopt}; }

AxiomVerdict fail(const char* axiom, Witness w) { return {axiom, false, std::move(w)}; }

void check_brute_guards(const Problem& problem, const Guards& guards, const char* what) {
  if (problem.n() > guards.brute_max_agents || problem.m() > guards.brute_max_objects ||
      *std::max_element(problem.quotas.begin(), problem.quotas.end()) > guards.brute_max_quota)
    throw SizeGuardError(std::string(what) + ": instance exceeds the brute-force caps (n <= " +
                         std::to_string(guards.brute_max_agents) + ", m <= " +
                         std::to_string(guards.brute_max_objects) + ", quota <= " +
                         std::to_string(guards.brute_max_quota) + ")");
}

RandomAssignment solution_to_matrix(const std::vector<Rational>& x, int n, int m) {
  RandomAssignment pi(n, m);
  for (AgentIdx i = 0; i < n; ++i)
    for (ObjectIdx a = 0; a < m; ++a) pi.at(i, a) = x[static_cast<size_t>(i) * m + a];
  return pi;
}

// Shared feasibility rows over nm variables x[i*m+a]: unit row sums and
// column quotas.
void add_feasibility_rows(LinearProgram& lp, const Problem& problem) {
  const int n = problem.n();
  const int m = problem.m();
  for (AgentIdx i = 0; i < n; ++i) {
    std::vector<Rational> row(static_cast<size_t>(n) * m, 0);
    for (ObjectIdx a = 0; a < m; ++a) row[static_cast<size_t>(i) * m + a] = 1;
    lp.add_row(std::move(row), Sense::kEq, 1);
  }
  for (ObjectIdx a = 0; a < m; ++a) {
    std::vector<Rational> row(static_cast<size_t>(n) * m, 0);
    for (AgentIdx i = 0; i < n; ++i) row[static_cast<size_t>(i) * m + a] = 1;
    lp.add_row(std::move(row), Sense::kLe, problem.quotas[a]);
  }
}

}  // namespace

RankDistribution rank_distribution(const Problem& problem, const RandomAssignment& pi) {
  require_valid(problem, pi);
  RankDistribution dist;
  dist.cumulative.assign(problem.m(), 0);
  for (AgentIdx i = 0; i < problem.n(); ++i)
    for (ObjectIdx a = 0; a < problem.m(); ++a)
      dist.cumulative[problem.profile[i].rank(a) - 1] += pi.at(i, a);
  for (size_t k = 1; k < dist.cumulative.size(); ++k)
    dist.cumulative[k] += dist.cumulative[k - 1];
  return dist;
}

bool rank_dominates(const RankDistribution& d1, const RankDistribution& d2) {
  if (d1.cumulative.size() != d2.cumulative.size())
    throw std::invalid_argument("rank distributions differ in length");
  bool strict = false;
  for (size_t k = 0; k < d1.cumulative.size(); ++k) {
    if (d1.cumulative[k] < d2.cumulative[k]) return false;
    if (d1.cumulative[k] > d2.cumulative[k]) strict = true;
  }
  return strict;
}

bool rank_dominates(const Problem& problem, const RandomAssignment& pi1,
                    const RandomAssignment& pi2) {
  return rank_dominates(rank_distribution(problem, pi1), rank_distribution(problem, pi2));
}

AxiomVerdict sd_efficient_cycle_check(const Problem& problem, const RandomAssignment& pi) {
  AxiomVerdict nw = non_wasteful(problem, pi);
  if (!nw.holds) {
    Witness w = *nw.witness;
    w.note = "wasteful: " + w.note;
    return fail("sd-efficient", std::move(w));
  }
  const int m = problem.m();
  // edge_agent[a][b] = an agent holding a who strictly prefers b, else -1.
  std::vector<std::vector<AgentIdx>> edge_agent(m, std::vector<AgentIdx>(m, -1));
  for (AgentIdx i = 0; i < problem.n(); ++i)
    for (ObjectIdx a = 0; a < m; ++a) {
      if (pi.at(i, a) == 0) continue;
      for (ObjectIdx b : upper_contour(problem.profile[i], a, /*weak=*/false))
        if (edge_agent[a][b] < 0) edge_agent[a][b] = i;
    }
  // Depth-first search for a directed cycle among objects.
  std::vector<int> state(m, 0);  // 0 fresh, 1 on the current path, 2 done
  std::vector<ObjectIdx> path;
  std::vector<ObjectIdx> cycle_nodes;
  auto dfs = [&](auto&& self, ObjectIdx a) -> bool {
    state[a] = 1;
    path.push_back(a);
    for (ObjectIdx b = 0; b < m; ++b) {
      if (edge_agent[a][b] < 0) continue;
      if (state[b] == 1) {
        auto it = std::find(path.begin(), path.end(), b);
        cycle_nodes.assign(it, path.end());
        return true;
      }
      if (state[b] == 0 && self(self, b)) return true;
    }
    state[a] = 2;
    path.pop_back();
    return false;
  };
  for (ObjectIdx start = 0; start < m; ++start) {
    if (state[start] != 0 || !dfs(dfs, start)) continue;
    Witness w;
    for (size_t t = 0; t < cycle_nodes.size(); ++t) {
      const ObjectIdx held = cycle_nodes[t];
      const ObjectIdx wanted = cycle_nodes[(t + 1) % cycle_nodes.size()];
      w.cycle.emplace_back(edge_agent[held][wanted], held);
    }
    w.note = "trading cycle: each listed agent holds a positive share of her object "
             "and strictly prefers the next listed agent's object";
    return fail("sd-efficient", std::move(w));
  }
  return pass("sd-efficient");
}

AxiomVerdict sd_efficient_lp_oracle(const Problem& problem, const RandomAssignment& pi,
                                    const Guards& guards) {
  require_valid(problem, pi);
  const int n = problem.n();
  const int m = problem.m();
  // Cumulative truthful shares per agent and rank.
  std::vector<std::vector<Rational>> cum(n, std::vector<Rational>(m + 1, 0));
  for (AgentIdx i = 0; i < n; ++i)
    for (int k = 1; k <= m; ++k)
      cum[i][k] = cum[i][k - 1] + pi.at(i, problem.profile[i].at_rank(k));

  LinearProgram base(n * m);
  add_feasibility_rows(base, problem);
  for (AgentIdx i = 0; i < n; ++i)
    for (int k = 1; k < m; ++k) {  // rank m is implied by the unit row sum
      std::vector<Rational> row(static_cast<size_t>(n) * m, 0);
      for (int l = 1; l <= k; ++l)
        row[static_cast<size_t>(i) * m + problem.profile[i].at_rank(l)] = 1;
      base.add_row(std::move(row), Sense::kGe, cum[i][k]);
    }

  for (AgentIdx i = 0; i < n; ++i)
    for (int k = 1; k <= m; ++k) {
      LinearProgram lp = base;
      lp.maximize = true;
      lp.objective.assign(static_cast<size_t>(n) * m, 0);
      for (int l = 1; l <= k; ++l)
        lp.objective[static_cast<size_t>(i) * m + problem.profile[i].at_rank(l)] = 1;
      LpOutcome out = solve(lp, guards);
      if (out.status != LpStatus::kOptimal)
        throw std::logic_error("dominance polytope should contain pi and be bounded");
      if (out.value > cum[i][k]) {
        Witness w;
        w.agent_i = i;
        w.rank_k = k;
        w.lhs = out.value;
        w.rhs = cum[i][k];
        w.assignment = solution_to_matrix(out.solution, n, m);
        w.note = "a feasible assignment weakly dominates every row and strictly raises agent " +
                 problem.agent_ids[i] + "'s cumulative share at rank " + std::to_string(k);
        return fail("sd-efficient", std::move(w));
      }
    }
  return pass("sd-efficient");
}

AxiomVerdict rank_efficient_check(const Problem& problem, const RandomAssignment& pi,
                                  const Guards& guards) {
  require_valid(problem, pi);
  const int n = problem.n();
  const int m = problem.m();
  const RankDistribution dist = rank_distribution(problem, pi);

  LinearProgram base(n * m);
  add_feasibility_rows(base, problem);
  auto rank_mass_row = [&](int k) {
    std::vector<Rational> row(static_cast<size_t>(n) * m, 0);
    for (AgentIdx i = 0; i < n; ++i)
      for (int l = 1; l <= k; ++l)
        row[static_cast<size_t>(i) * m + problem.profile[i].at_rank(l)] = 1;
    return row;
  };
  for (int k = 1; k <= m; ++k)
    base.add_row(rank_mass_row(k), Sense::kGe, dist.cumulative[k - 1]);

  for (int k = 1; k <= m; ++k) {
    LinearProgram lp = base;
    lp.maximize = true;
    lp.objective = rank_mass_row(k);
    LpOutcome out = solve(lp, guards);
    if (out.status != LpStatus::kOptimal)
      throw std::logic_error("rank-dominance polytope should contain pi and be bounded");
    if (out.value > dist.cumulative[k - 1]) {
      Witness w;
      w.rank_k = k;
      w.lhs = out.value;
      w.rhs = dist.cumulative[k - 1];
      w.assignment = solution_to_matrix(out.solution, n, m);
      w.note = "a feasible assignment rank-dominates: every cumulative rank mass is at least "
               "as large and rank " + std::to_string(k) + " is strictly larger";
      return fail("rank-efficient", std::move(w));
    }
  }
  return pass("rank-efficient");
}

std::vector<DeterministicAssignment> all_deterministic(const Problem& problem,
                                                       const Guards& guards) {
  require_valid(problem);
  check_brute_guards(problem, guards, "all_deterministic");
  std::vector<DeterministicAssignment> out;
  std::vector<int> residual = problem.quotas;
  std::vector<ObjectIdx> current(problem.n(), -1);
  auto recurse = [&](auto&& self, AgentIdx i) -> void {
    if (i == problem.n()) {
      out.push_back(DeterministicAssignment{current});
      return;
    }
    for (ObjectIdx a = 0; a < problem.m(); ++a) {
      if (residual[a] == 0) continue;
      current[i] = a;
      --residual[a];
      self(self, i + 1);
      ++residual[a];
    }
  };
  recurse(recurse, 0);
  return out;
}

namespace {

// D2 weakly Pareto-improves on D1: everyone at least as well off, someone
// strictly better.
bool pareto_improves(const Problem& problem, const DeterministicAssignment& d2,
                     const DeterministicAssignment& d1) {
  bool strict = false;
  for (AgentIdx i = 0; i < problem.n(); ++i) {
    const int r2 = problem.profile[i].rank(d2.object_of[i]);
    const int r1 = problem.profile[i].rank(d1.object_of[i]);
    if (r2 > r1) return false;
    if (r2 < r1) strict = true;
  }
  return strict;
}

}  // namespace

AxiomVerdict pareto_efficient(const Problem& problem, const DeterministicAssignment& d,
                              const Guards& guards) {
  auto violations = validate_deterministic(problem, d);
  if (!violations.empty())
    throw std::invalid_argument("invalid deterministic assignment: " + violations.front().message);
  for (const auto& d2 : all_deterministic(problem, guards)) {
    if (pareto_improves(problem, d2, d)) {
      Witness w;
      w.assignment = d2.to_random(problem.m());
      w.note = "another feasible deterministic assignment makes every agent weakly better off "
               "and someone strictly better off";
      return fail("pareto-efficient", std::move(w));
    }
  }
  return pass("pareto-efficient");
}

std::vector<DeterministicAssignment> pareto_efficient_set(const Problem& problem,
                                                          const Guards& guards) {
  const auto all = all_deterministic(problem, guards);
  std::vector<DeterministicAssignment> out;
  for (const auto& d : all) {
    bool dominated = false;
    for (const auto& d2 : all)
      if (pareto_improves(problem, d2, d)) {
        dominated = true;
        break;
      }
    if (!dominated) out.push_back(d);
  }
  return out;
}

AxiomVerdict ex_post_efficient_check(const Problem& problem, const RandomAssignment& pi,
                                     const Guards& guards,
                                     const std::vector<DeterministicAssignment>* pareto_set) {
  require_valid(problem, pi);
  std::vector<DeterministicAssignment> local;
  if (!pareto_set) {
    local = pareto_efficient_set(problem, guards);
    pareto_set = &local;
  }
  const int parts = static_cast<int>(pareto_set->size());
  const int n = problem.n();
  const int m = problem.m();
  // Weights over Pareto-efficient assignments reproducing pi exactly.
  LinearProgram lp(parts);
  for (AgentIdx i = 0; i < n; ++i)
    for (ObjectIdx a = 0; a < m; ++a) {
      std::vector<Rational> row(parts, 0);
      for (int t = 0; t < parts; ++t)
        if ((*pareto_set)[t].object_of[i] == a) row[t] = 1;
      lp.add_row(std::move(row), Sense::kEq, pi.at(i, a));
    }
  lp.add_row(std::vector<Rational>(parts, 1), Sense::kEq, 1);
  LpOutcome out = solve(lp, guards);
  if (out.status == LpStatus::kOptimal) return pass("ex-post-efficient");
  Witness w;
  w.certificate = out.infeasibility_certificate;
  w.note = "no convex combination of the " + std::to_string(parts) +
           " Pareto-efficient deterministic assignments reproduces the matrix "
           "(exact Farkas certificate attached)";
  return fail("ex-post-efficient", std::move(w));
}

namespace {

// Integer max-flow with lower bounds, small and dense. Nodes are indexed
// 0..v-1; arcs store capacity minus already-pushed flow.
class FlowNetwork {
 public:
  explicit FlowNetwork(int nodes) : head_(nodes, -1) {}

  int add_arc(int from, int to, long long capacity) {
    arcs_.push_back({to, head_[from], capacity, 0});
    head_[from] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({from, head_[to], 0, 0});
    head_[to] = static_cast<int>(arcs_.size()) - 1;
    return static_cast<int>(arcs_.size()) - 2;
  }

  long long max_flow(int source, int sink) {
    long long total = 0;
    for (;;) {
      // BFS for a shortest augmenting path.
      std::vector<int> via(head_.size(), -1);
      std::deque<int> queue{source};
      via[source] = -2;
      while (!queue.empty() && via[sink] == -1) {
        int u = queue.front();
        queue.pop_front();
        for (int e = head_[u]; e >= 0; e = arcs_[e].next)
          if (arcs_[e].capacity > arcs_[e].flow && via[arcs_[e].to] == -1) {
            via[arcs_[e].to] = e;
            queue.push_back(arcs_[e].to);
          }
      }
      if (via[sink] == -1) return total;
      long long push = std::numeric_limits<long long>::max();
      for (int v = sink; v != source;) {
        const int e = via[v];
        push = std::min(push, arcs_[e].capacity - arcs_[e].flow);
        v = arcs_[e ^ 1].to;
      }
      for (int v = sink; v != source;) {
        const int e = via[v];
        arcs_[e].flow += push;
        arcs_[e ^ 1].flow -= push;
        v = arcs_[e ^ 1].to;
      }
      total += push;
    }
  }

  long long flow_on(int arc) const { return arcs_[arc].flow; }

  // Freezes an arc (and its reverse) at its current flow.
  void disable_arc(int arc) {
    arcs_[arc].capacity = arcs_[arc].flow;
    arcs_[arc ^ 1].capacity = arcs_[arc ^ 1].flow;
  }

 private:
  struct Arc {
    int to;
    int next;
    long long capacity;
    long long flow;
  };
  std::vector<int> head_;
  std::vector<Arc> arcs_;
};

// Finds a deterministic assignment supported on the positive entries of the
// residual matrix rho, assigning every agent one object, respecting quotas,
// and covering every column a with rho-column-sum == scale * q_a at exactly
// q_a agents (otherwise the remaining mass could not stay feasible).
DeterministicAssignment supported_assignment(const Problem& problem,
                                             const RandomAssignment& rho,
                                             const Rational& scale) {
  const int n = problem.n();
  const int m = problem.m();
  // Nodes: 0 = source, 1..n agents, n+1..n+m objects, n+m+1 = sink,
  // n+m+2 / n+m+3 = super source/sink for the lower-bound transform.
  const int src = 0, snk = n + m + 1, ssrc = n + m + 2, ssnk = n + m + 3;
  FlowNetwork net(n + m + 4);
  std::vector<std::vector<int>> agent_arcs(n);
  std::vector<std::vector<ObjectIdx>> supports(n);
  for (AgentIdx i = 0; i < n; ++i) net.add_arc(src, 1 + i, 1);
  for (AgentIdx i = 0; i < n; ++i)
    for (ObjectIdx a = 0; a < m; ++a)
      if (rho.at(i, a) > 0) {
        agent_arcs[i].push_back(net.add_arc(1 + i, 1 + n + a, 1));
        supports[i].push_back(a);
      }
  long long forced_total = 0;
  for (ObjectIdx a = 0; a < m; ++a) {
    const bool saturated = rho.column_sum(a) == scale * problem.quotas[a];
    const long long lower = saturated ? problem.quotas[a] : 0;
    // Arc (object -> sink) with bounds [lower, q_a]: the mandatory part is
    // shifted onto the super source/sink pair.
    net.add_arc(1 + n + a, snk, problem.quotas[a] - lower);
    if (lower > 0) {
      net.add_arc(ssrc, snk, lower);
      net.add_arc(1 + n + a, ssnk, lower);
      forced_total += lower;
    }
  }
  const int closure = net.add_arc(snk, src, n);
  if (net.max_flow(ssrc, ssnk) != forced_total)
    throw std::logic_error("decomposition: no supported assignment covers the saturated columns");
  net.disable_arc(closure);
  net.max_flow(src, snk);
  long long matched = 0;
  DeterministicAssignment d;
  d.object_of.assign(n, -1);
  for (AgentIdx i = 0; i < n; ++i)
    for (size_t t = 0; t < agent_arcs[i].size(); ++t)
      if (net.flow_on(agent_arcs[i][t]) == 1) {
        d.object_of[i] = supports[i][t];
        ++matched;
      }
  if (matched != n)
    throw std::logic_error("decomposition: support admits no full assignment of agents");
  return d;
}

}  // namespace

Decomposition bvn_decompose(const Problem& problem, const RandomAssignment& pi) {
  require_valid(problem, pi);
  Decomposition out;
  RandomAssignment rho = pi;
  Rational remaining = 1;
  const int n = problem.n();
  const int m = problem.m();
  const int extraction_limit = n * m + 1;

  while (remaining > 0) {
    if (static_cast<int>(out.parts.size()) >= extraction_limit)
      throw std::logic_error("decomposition failed to terminate within n*m + 1 extractions");
    DeterministicAssignment d = supported_assignment(problem, rho, remaining);
    // Largest weight keeping the residual nonnegative and column-feasible.
    Rational w = remaining;
    for (AgentIdx i = 0; i < n; ++i) w = std::min(w, rho.at(i, d.object_of[i]));
    for (ObjectIdx a = 0; a < m; ++a) {
      const int used = d.column_count(a);
      if (used < problem.quotas[a]) {
        // col(rho) - w*used <= (remaining - w) * q_a
        Rational bound = (remaining * problem.quotas[a] - rho.column_sum(a)) /
                         (problem.quotas[a] - used);
        w = std::min(w, bound);
      }
    }
    if (w <= 0)
      throw std::logic_error("decomposition extracted a non-positive weight");
    for (AgentIdx i = 0; i < n; ++i) rho.at(i, d.object_of[i]) -= w;
    remaining -= w;
    out.parts.emplace_back(w, std::move(d));
  }
  for (const auto& cell : rho.cells)
    if (cell != 0) throw std::logic_error("decomposition left residual mass behind");
  return out;
}

}  // namespace prkit
