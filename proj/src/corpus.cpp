#include "prkit/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <thread>

namespace prkit {

std::vector<std::vector<ObjectIdx>> all_preference_orders(int m) {
  std::vector<ObjectIdx> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::vector<ObjectIdx>> out;
  do {
    out.push_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

std::vector<Problem> exhaustive_corpus(int n, int m, std::vector<int> quotas,
                                       bool canonical_only) {
  if (quotas.empty()) quotas.assign(m, 1);
  if (static_cast<int>(quotas.size()) != m)
    throw std::invalid_argument("quota list size differs from the object count");
  const auto orders = all_preference_orders(m);
  const size_t base = orders.size();
  std::vector<Problem> out;
  std::vector<size_t> pick(n, 0);
  for (;;) {
    bool canonical = true;
    if (canonical_only)
      for (int i = 1; i < n && canonical; ++i) canonical = pick[i - 1] <= pick[i];
    if (canonical) {
      std::vector<std::vector<ObjectIdx>> profile;
      profile.reserve(n);
      for (int i = 0; i < n; ++i) profile.push_back(orders[pick[i]]);
      out.push_back(make_problem(quotas, std::move(profile)));
    }
    int pos = n - 1;
    while (pos >= 0 && pick[pos] + 1 == base) pick[pos--] = 0;
    if (pos < 0) break;
    ++pick[pos];
  }
  return out;
}

uint64_t RandomSource::next() {
  // splitmix64; stable across platforms.
  state_ += 0x9E3779B97F4A7C15ULL;
  uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

uint64_t RandomSource::below(uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("empty range");
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t r;
  do {
    r = next();
  } while (r >= limit);
  return r % bound;
}

Problem random_problem(RandomSource& rng, int n, int m, int max_quota) {
  if (n < 1 || m < 1 || max_quota < 1)
    throw std::invalid_argument("random_problem needs positive sizes");
  std::vector<int> quotas(m);
  do {
    for (int a = 0; a < m; ++a) quotas[a] = 1 + static_cast<int>(rng.below(max_quota));
  } while (std::accumulate(quotas.begin(), quotas.end(), 0) < n);
  std::vector<std::vector<ObjectIdx>> profile(n);
  for (int i = 0; i < n; ++i) {
    std::vector<ObjectIdx> order(m);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    profile[i] = std::move(order);
  }
  return make_problem(std::move(quotas), std::move(profile));
}

namespace detail {

void parallel_sweep(size_t count, const std::function<void(size_t)>& task, int threads) {
  if (count == 0) return;
  unsigned workers = threads > 0 ? static_cast<unsigned>(threads)
                                 : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(count));
  if (workers <= 1) {
    for (size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<size_t> cursor{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const size_t i = cursor.fetch_add(1);
      if (i >= count) return;
      try {
        task(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

}  // namespace prkit
