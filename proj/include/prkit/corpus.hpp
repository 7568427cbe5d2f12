// Problem-corpus machinery: exhaustive profile enumeration (optionally up
// to agent relabeling), seeded random instances, and a deterministic
// parallel sweep helper shared by the search and comparison drivers.
#pragma once

#include <cstdint>
#include <functional>

#include "prkit/core.hpp"

namespace prkit {

// All m! strict preference orders over objects 0..m-1, lexicographic.
std::vector<std::vector<ObjectIdx>> all_preference_orders(int m);

// Every profile of n preferences over m objects with the given quotas
// (unit quotas when empty). With `canonical_only`, one representative per
// agent-relabeling orbit (profiles with non-decreasing preference indices);
// sufficient for checking anonymous rules and relabeling-invariant axioms.
std::vector<Problem> exhaustive_corpus(int n, int m, std::vector<int> quotas = {},
                                       bool canonical_only = false);

// Portable deterministic random stream (fixed engine, rejection sampling;
// no distribution objects whose output could vary across standard
// libraries).
class RandomSource {
 public:
  explicit RandomSource(uint64_t seed) : state_(seed) {}
  uint64_t next();
  // Uniform in [0, bound).
  uint64_t below(uint64_t bound);
  // Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  uint64_t state_;
};

// Random problem with quotas in 1..max_quota, re-drawn until total supply
// covers the agents.
Problem random_problem(RandomSource& rng, int n, int m, int max_quota = 1);

namespace detail {
// Work-stealing-free indexed sweep: workers pull the next index from a
// shared counter; each result is written to its own slot.
void parallel_sweep(size_t count, const std::function<void(size_t)>& task, int threads);
}  // namespace detail

// Runs fn(0..count-1) across a small worker pool; results land in input
// order regardless of scheduling. fn must be pure.
template <typename Result>
std::vector<Result> parallel_map(size_t count, const std::function<Result(size_t)>& fn,
                                 int threads = 0) {
  std::vector<Result> results(count);
  detail::parallel_sweep(count, [&](size_t idx) { results[idx] = fn(idx); }, threads);
  return results;
}

}  // namespace prkit
