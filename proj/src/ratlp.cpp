#include "prkit/ratlp.hpp"

#include <algorithm>

namespace prkit {

void LinearProgram::add_row(std::vector<Rational> coeffs, Sense sense, Rational rhs) {
  if (static_cast<int>(coeffs.size()) != num_vars)
    throw std::invalid_argument("constraint coefficient count differs from the variable count");
  rows.push_back({std::move(coeffs), sense, std::move(rhs)});
}

namespace {

// Dense tableau over columns [structural | slack/surplus | artificial | rhs],
// with an extra cost row at the bottom holding reduced costs.
class SimplexTableau {
 public:
  SimplexTableau(const LinearProgram& lp, const Guards& guards) : lp_(lp) {
    if (lp.num_vars > guards.lp_max_vars)
      throw SizeGuardError("lp: " + std::to_string(lp.num_vars) +
                           " variables exceed the cap of " + std::to_string(guards.lp_max_vars));
    if (static_cast<int>(lp.rows.size()) > guards.lp_max_rows)
      throw SizeGuardError("lp: " + std::to_string(lp.rows.size()) +
                           " rows exceed the cap of " + std::to_string(guards.lp_max_rows));
    if (!lp.objective.empty() && static_cast<int>(lp.objective.size()) != lp.num_vars)
      throw std::invalid_argument("objective size differs from the variable count");

    const int r = static_cast<int>(lp.rows.size());
    flip_.assign(r, false);
    int num_slack = 0;
    for (const auto& row : lp.rows)
      if (row.sense != Sense::kEq) ++num_slack;
    slack_begin_ = lp.num_vars;
    art_begin_ = slack_begin_ + num_slack;
    cols_ = art_begin_ + r;  // one artificial per row; unused ones stay zero

    tab_.assign(r + 1, std::vector<Rational>(cols_ + 1, Rational(0)));
    basis_.assign(r, -1);

    // probe_col_[i] is a column equal to +e_i, used to read the simplex
    // multiplier of row i off the cost row; probe_cost_[i] is its phase-1
    // objective coefficient.
    probe_col_.assign(r, -1);
    probe_cost_.assign(r, Rational(0));
    int next_slack = slack_begin_;
    for (int i = 0; i < r; ++i) {
      const LpRow& row = lp.rows[i];
      Sense sense = row.sense;
      Rational rhs = row.rhs;
      bool flip = rhs < 0;
      flip_[i] = flip;
      if (flip) {
        rhs = -rhs;
        if (sense == Sense::kLe)
          sense = Sense::kGe;
        else if (sense == Sense::kGe)
          sense = Sense::kLe;
      }
      for (int j = 0; j < lp.num_vars; ++j)
        tab_[i][j] = flip ? -row.coeffs[j] : row.coeffs[j];
      tab_[i][cols_] = rhs;
      if (sense == Sense::kLe) {
        tab_[i][next_slack] = 1;
        basis_[i] = next_slack;
        probe_col_[i] = next_slack++;
      } else if (sense == Sense::kGe) {
        tab_[i][next_slack++] = -1;
        tab_[i][art_begin_ + i] = 1;
        basis_[i] = art_begin_ + i;
        probe_col_[i] = art_begin_ + i;
        probe_cost_[i] = 1;
      } else {
        tab_[i][art_begin_ + i] = 1;
        basis_[i] = art_begin_ + i;
        probe_col_[i] = art_begin_ + i;
        probe_cost_[i] = 1;
      }
    }
  }

  // Returns false when the phase-1 optimum is positive (infeasible).
  bool run_phase1() {
    // Cost: minimize the sum of artificials. Express reduced costs by
    // subtracting the rows whose artificial is basic.
    auto& cost = tab_.back();
    std::fill(cost.begin(), cost.end(), Rational(0));
    for (int j = art_begin_; j < cols_; ++j) cost[j] = 1;
    for (int i = 0; i < num_rows(); ++i)
      if (basis_[i] >= art_begin_) subtract_row_from_cost(i);
    optimize(/*allow_artificials=*/true);
    return -tab_.back()[cols_] == 0;  // cost row carries -objective
  }

  // Farkas multipliers for the original rows, valid when phase 1 ended
  // with a positive optimum.
  std::vector<Rational> extract_certificate() const {
    std::vector<Rational> y(num_rows());
    for (int i = 0; i < num_rows(); ++i) {
      // The probe column equals +e_i, so its reduced cost is cost_j - y_i.
      Rational yi = probe_cost_[i] - tab_.back()[probe_col_[i]];
      y[i] = flip_[i] ? -yi : yi;
    }
    return y;
  }

  void run_phase2() {
    pivot_out_artificials();
    auto& cost = tab_.back();
    std::fill(cost.begin(), cost.end(), Rational(0));
    if (!lp_.objective.empty())
      for (int j = 0; j < lp_.num_vars; ++j)
        cost[j] = lp_.maximize ? -lp_.objective[j] : lp_.objective[j];
    for (int i = 0; i < num_rows(); ++i)
      if (cost[basis_[i]] != 0) subtract_multiple_from_cost(i, cost[basis_[i]]);
    unbounded_ = false;
    optimize(/*allow_artificials=*/false);
  }

  bool unbounded() const { return unbounded_; }

  std::vector<Rational> structural_solution() const {
    std::vector<Rational> x(lp_.num_vars, Rational(0));
    for (int i = 0; i < num_rows(); ++i)
      if (basis_[i] < lp_.num_vars) x[basis_[i]] = tab_[i][cols_];
    return x;
  }

 private:
  int num_rows() const { return static_cast<int>(tab_.size()) - 1; }

  void subtract_row_from_cost(int i) { subtract_multiple_from_cost(i, Rational(1)); }

  void subtract_multiple_from_cost(int i, Rational factor) {
    auto& cost = tab_.back();
    for (int j = 0; j <= cols_; ++j)
      if (tab_[i][j] != 0) cost[j] -= factor * tab_[i][j];
  }

  void pivot(int row, int col) {
    auto& pr = tab_[row];
    const Rational inv = Rational(1) / pr[col];
    for (auto& v : pr) v *= inv;
    for (int i = 0; i <= num_rows(); ++i) {
      if (i == row || tab_[i][col] == 0) continue;
      const Rational factor = tab_[i][col];
      for (int j = 0; j <= cols_; ++j)
        if (pr[j] != 0) tab_[i][j] -= factor * pr[j];
    }
    basis_[row] = col;
  }

  // Bland's rule: smallest-index entering column with a negative reduced
  // cost; leaving row = minimum ratio, ties broken by the smallest basic
  // variable index. Guarantees termination without cycling.
  void optimize(bool allow_artificials) {
    const int limit = allow_artificials ? cols_ : art_begin_;
    const auto& cost = tab_.back();
    for (;;) {
      int entering = -1;
      for (int j = 0; j < limit; ++j)
        if (cost[j] < 0) {
          entering = j;
          break;
        }
      if (entering < 0) return;
      int leaving = -1;
      Rational best_ratio;
      for (int i = 0; i < num_rows(); ++i) {
        if (tab_[i][entering] <= 0) continue;
        Rational ratio = tab_[i][cols_] / tab_[i][entering];
        if (leaving < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leaving])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if (leaving < 0) {
        unbounded_ = true;
        return;
      }
      pivot(leaving, entering);
    }
  }

  // Any artificial still basic at a feasible point sits at zero; swap it
  // for a structural or slack column, or drop the row as redundant.
  void pivot_out_artificials() {
    for (int i = 0; i < num_rows(); ++i) {
      if (basis_[i] < art_begin_) continue;
      int col = -1;
      for (int j = 0; j < art_begin_; ++j)
        if (tab_[i][j] != 0) {
          col = j;
          break;
        }
      if (col >= 0) {
        pivot(i, col);
      } else {
        // All-zero row over real columns: redundant constraint; neutralize.
        tab_[i][cols_] = 0;
      }
    }
  }

  const LinearProgram& lp_;
  std::vector<std::vector<Rational>> tab_;
  std::vector<int> basis_;
  std::vector<bool> flip_;
  std::vector<int> probe_col_;
  std::vector<Rational> probe_cost_;
  int slack_begin_ = 0;
  int art_begin_ = 0;
  int cols_ = 0;
  bool unbounded_ = false;
};

}  // namespace

LpOutcome solve(const LinearProgram& lp, const Guards& guards) {
  SimplexTableau tableau(lp, guards);
  LpOutcome out;
  if (!tableau.run_phase1()) {
    out.status = LpStatus::kInfeasible;
    out.infeasibility_certificate = tableau.extract_certificate();
    return out;
  }
  tableau.run_phase2();
  if (tableau.unbounded()) {
    out.status = LpStatus::kUnbounded;
    return out;
  }
  out.status = LpStatus::kOptimal;
  out.solution = tableau.structural_solution();
  out.value = 0;
  if (!lp.objective.empty())
    for (int j = 0; j < lp.num_vars; ++j) out.value += lp.objective[j] * out.solution[j];
  return out;
}

std::optional<std::vector<Rational>> find_feasible_point(const LinearProgram& lp,
                                                         const Guards& guards) {
  LinearProgram probe = lp;
  probe.objective.clear();
  LpOutcome out = solve(probe, guards);
  if (out.status != LpStatus::kOptimal) return std::nullopt;
  return out.solution;
}

}  // namespace prkit
