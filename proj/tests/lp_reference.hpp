// Test-only reference oracle for the exact simplex: brute-force vertex
// enumeration over boxed systems, with exact Gaussian elimination. Fully
// independent of the solver it checks.
#pragma once

#include <optional>

#include "prkit/corpus.hpp"
#include "prkit/ratlp.hpp"

namespace prkit::testing {

inline std::optional<std::vector<Rational>> gauss_solve(
    std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const int k = static_cast<int>(b.size());
  for (int col = 0; col < k; ++col) {
    int pivot = -1;
    for (int row = col; row < k; ++row)
      if (a[row][col] != 0) {
        pivot = row;
        break;
      }
    if (pivot < 0) return std::nullopt;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    const Rational inv = Rational(1) / a[col][col];
    for (auto& v : a[col]) v *= inv;
    b[col] *= inv;
    for (int row = 0; row < k; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Rational f = a[row][col];
      for (int c2 = 0; c2 < k; ++c2) a[row][c2] -= f * a[col][c2];
      b[row] -= f * b[col];
    }
  }
  return b;
}

struct VertexOracleResult {
  LpStatus status = LpStatus::kInfeasible;
  Rational value;
};

// Enumerates every choice of num_vars active facets (constraint rows plus
// nonnegativity), solves the square system exactly, keeps feasible vertices
// and maximizes over them. Sound for bounded regions; the boxed generator
// below guarantees boundedness, and any nonempty region of such a system
// has a vertex because x >= 0 makes it pointed.
inline VertexOracleResult brute_force_lp(const LinearProgram& lp) {
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  for (const auto& row : lp.rows) {
    rows.push_back(row.coeffs);
    rhs.push_back(row.rhs);
  }
  for (int j = 0; j < lp.num_vars; ++j) {
    std::vector<Rational> facet(lp.num_vars, 0);
    facet[j] = 1;
    rows.push_back(std::move(facet));
    rhs.push_back(0);
  }
  auto feasible = [&](const std::vector<Rational>& x) {
    for (int j = 0; j < lp.num_vars; ++j)
      if (x[j] < 0) return false;
    for (const auto& row : lp.rows) {
      Rational lhs = 0;
      for (int j = 0; j < lp.num_vars; ++j) lhs += row.coeffs[j] * x[j];
      if (row.sense == Sense::kLe && lhs > row.rhs) return false;
      if (row.sense == Sense::kGe && lhs < row.rhs) return false;
      if (row.sense == Sense::kEq && lhs != row.rhs) return false;
    }
    return true;
  };

  VertexOracleResult out;
  bool any = false;
  std::vector<int> pick(lp.num_vars);
  const int total = static_cast<int>(rows.size());
  auto recurse = [&](auto&& self, int from, int depth) -> void {
    if (depth == lp.num_vars) {
      std::vector<std::vector<Rational>> a(lp.num_vars);
      std::vector<Rational> b(lp.num_vars);
      for (int t = 0; t < lp.num_vars; ++t) {
        a[t] = rows[pick[t]];
        b[t] = rhs[pick[t]];
      }
      auto x = gauss_solve(std::move(a), std::move(b));
      if (!x || !feasible(*x)) return;
      Rational value = 0;
      for (int j = 0; j < lp.num_vars; ++j) value += lp.objective[j] * (*x)[j];
      if (!any || value > out.value) out.value = value;
      any = true;
      return;
    }
    for (int r = from; r < total; ++r) {
      pick[depth] = r;
      self(self, r + 1, depth + 1);
    }
  };
  recurse(recurse, 0, 0);
  out.status = any ? LpStatus::kOptimal : LpStatus::kInfeasible;
  return out;
}

// Random system over at most 4 variables with small integer data and a
// bounding box, so the vertex oracle is exact on it.
inline LinearProgram random_boxed_lp(RandomSource& rng) {
  const int vars = 1 + static_cast<int>(rng.below(4));
  LinearProgram lp(vars);
  lp.maximize = true;
  lp.objective.resize(vars);
  for (auto& c : lp.objective) c = Rational(static_cast<long long>(rng.below(11)) - 5);
  const int extra = 1 + static_cast<int>(rng.below(4));
  for (int r = 0; r < extra; ++r) {
    std::vector<Rational> coeffs(vars);
    for (auto& c : coeffs) c = Rational(static_cast<long long>(rng.below(9)) - 4);
    const Sense sense = rng.below(4) == 0 ? Sense::kEq : (rng.below(2) ? Sense::kLe : Sense::kGe);
    lp.add_row(std::move(coeffs), sense, Rational(static_cast<long long>(rng.below(13)) - 4));
  }
  for (int j = 0; j < vars; ++j) {
    std::vector<Rational> coeffs(vars, 0);
    coeffs[j] = 1;
    lp.add_row(std::move(coeffs), Sense::kLe, Rational(1 + static_cast<long long>(rng.below(4))));
  }
  return lp;
}

}  // namespace prkit::testing
