// Exact rational linear programming over small dense systems. Two-phase
// simplex with Bland's pivoting rule: slow but cycle-free, and every
// returned value, point, and certificate is exact.
#pragma once

#include <optional>

#include "prkit/core.hpp"

namespace prkit {

enum class Sense { kLe, kEq, kGe };

struct LpRow {
  std::vector<Rational> coeffs;
  Sense sense = Sense::kLe;
  Rational rhs;
};

// Variables are nonnegative by default; encode upper bounds as rows.
struct LinearProgram {
  int num_vars = 0;
  bool maximize = true;
  std::vector<Rational> objective;  // size num_vars; empty means all zeros
  std::vector<LpRow> rows;

  explicit LinearProgram(int vars = 0) : num_vars(vars) {}
  void add_row(std::vector<Rational> coeffs, Sense sense, Rational rhs);
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpOutcome {
  LpStatus status = LpStatus::kInfeasible;
  Rational value;                  // objective value in the caller's sense
  std::vector<Rational> solution;  // structural variables only
  // On infeasibility: multipliers y (one per original row) such that
  // y_i <= 0 for <= rows, y_i >= 0 for >= rows, sum_i y_i * row_i <= 0
  // componentwise, and y . rhs > 0. Certifies that no x >= 0 satisfies
  // all rows.
  std::vector<Rational> infeasibility_certificate;
};

// Throws SizeGuardError when the instance exceeds the configured caps.
LpOutcome solve(const LinearProgram& lp, const Guards& guards = {});

// Phase-one only: an exact feasible point, or nullopt with the certificate
// available through solve().
std::optional<std::vector<Rational>> find_feasible_point(const LinearProgram& lp,
                                                         const Guards& guards = {});

}  // namespace prkit
