// Shared helpers for the test suites: terse constructors for problems and
// matrices, and independent re-checkers used to replay witnesses against
// the raw definitions.
#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "prkit/axioms.hpp"
#include "prkit/core.hpp"

namespace prkit::testing {

inline Rational rat(long long num, long long den = 1) { return Rational(num, den); }

// Builds a matrix from rows of fraction strings: {"1/2 0 3/8 1/8", ...}.
inline RandomAssignment mat(const std::vector<std::string>& rows) {
  std::vector<std::vector<Rational>> parsed;
  for (const auto& row : rows) {
    std::istringstream is(row);
    std::string token;
    std::vector<Rational> values;
    while (is >> token) values.push_back(parse_rational(token));
    parsed.push_back(std::move(values));
  }
  RandomAssignment pi(static_cast<int>(parsed.size()),
                      parsed.empty() ? 0 : static_cast<int>(parsed.front().size()));
  for (int i = 0; i < pi.rows; ++i)
    for (int a = 0; a < pi.cols; ++a) pi.at(i, a) = parsed[i][a];
  return pi;
}

// Unit-quota problem from preference orders given as object indices.
inline Problem unit_problem(std::vector<std::vector<ObjectIdx>> orders) {
  const int m = orders.empty() ? 0 : static_cast<int>(orders.front().size());
  return make_problem(std::vector<int>(m, 1), std::move(orders));
}

// Independent cumulative-share comparison, written directly from the
// definition (no reuse of the library's dominance helpers).
inline bool replay_weak_dominance(const Preference& p, std::span<const Rational> r1,
                                  std::span<const Rational> r2) {
  for (int k = 1; k <= p.num_objects(); ++k) {
    Rational c1 = 0, c2 = 0;
    for (int l = 1; l <= k; ++l) {
      c1 += r1[static_cast<size_t>(p.at_rank(l))];
      c2 += r2[static_cast<size_t>(p.at_rank(l))];
    }
    if (c1 < c2) return false;
  }
  return true;
}

}  // namespace prkit::testing
