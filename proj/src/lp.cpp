#include "pilp/lp.hpp"

#include "pilp/error.hpp"

namespace pilp {

namespace {

// Dense tableau for: maximize cost . z subject to rows . z = rhs, z >= 0.
class Tableau {
 public:
  Tableau(std::vector<std::vector<Rational>> rows, std::vector<Rational> rhs, std::size_t cols)
      : rows_(std::move(rows)), rhs_(std::move(rhs)), cols_(cols), basis_(rows_.size()) {}

  std::vector<std::vector<Rational>>& rows() { return rows_; }
  std::vector<Rational>& rhs() { return rhs_; }
  std::vector<std::size_t>& basis() { return basis_; }
  std::size_t cols() const { return cols_; }

  void set_cost(std::vector<Rational> cost, std::vector<bool> allowed) {
    cost_ = std::move(cost);
    allowed_ = std::move(allowed);
    reduced_ = cost_;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational cb = cost_[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j < cols_; ++j) reduced_[j] -= cb * rows_[i][j];
    }
  }

  /// Returns false when the objective is unbounded.
  bool optimize() {
    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (allowed_[j] && reduced_[j] > 0) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return true;
      std::size_t leave = rows_.size();
      Rational best_ratio;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i][enter] <= 0) continue;
        Rational ratio = rhs_[i] / rows_[i][enter];
        if (leave == rows_.size() || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leave == rows_.size()) return false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t col) {
    const Rational p = rows_[r][col];
    for (auto& v : rows_[r]) v /= p;
    rhs_[r] /= p;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r || rows_[i][col] == 0) continue;
      const Rational f = rows_[i][col];
      for (std::size_t j = 0; j < cols_; ++j) {
        if (rows_[r][j] != 0) rows_[i][j] -= f * rows_[r][j];
      }
      rhs_[i] -= f * rhs_[r];
    }
    if (!reduced_.empty() && reduced_[col] != 0) {
      const Rational f = reduced_[col];
      for (std::size_t j = 0; j < cols_; ++j) {
        if (rows_[r][j] != 0) reduced_[j] -= f * rows_[r][j];
      }
    }
    basis_[r] = col;
  }

  void drop_row(std::size_t r) {
    rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
    rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  Rational value() const {
    Rational v = 0;
    for (std::size_t i = 0; i < rows_.size(); ++i) v += cost_[basis_[i]] * rhs_[i];
    return v;
  }

  std::vector<Rational> solution() const {
    std::vector<Rational> z(cols_);
    for (std::size_t i = 0; i < rows_.size(); ++i) z[basis_[i]] = rhs_[i];
    return z;
  }

 private:
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> rhs_;
  std::size_t cols_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> cost_;
  std::vector<Rational> reduced_;
  std::vector<bool> allowed_;
};

struct StandardForm {
  // Column layout: [variable parts | slacks | artificials].
  std::vector<std::size_t> pos_col, neg_col;  // neg_col == npos for nonnegative variables
  std::size_t structural = 0;
  std::size_t artificial_begin = 0;
  std::size_t cols = 0;
};

constexpr std::size_t kNoColumn = static_cast<std::size_t>(-1);

}  // namespace

LpResult maximize(const LinearSystem& system, std::span<const Rational> objective) {
  const std::size_t nv = system.num_vars;
  if (objective.size() != nv) throw PreconditionError("objective length does not match num_vars");
  if (!system.nonnegative.empty() && system.nonnegative.size() != nv) {
    throw PreconditionError("nonnegative flags do not match num_vars");
  }
  for (const auto& c : system.constraints) {
    if (c.coeffs.size() != nv) throw PreconditionError("constraint length does not match num_vars");
  }

  StandardForm layout;
  layout.pos_col.resize(nv);
  layout.neg_col.assign(nv, kNoColumn);
  std::size_t col = 0;
  for (std::size_t j = 0; j < nv; ++j) {
    layout.pos_col[j] = col++;
    const bool nonneg = !system.nonnegative.empty() && system.nonnegative[j];
    if (!nonneg) layout.neg_col[j] = col++;
  }
  std::size_t slack_count = 0;
  for (const auto& c : system.constraints) slack_count += (c.relation != Relation::kEqual);
  layout.structural = col + slack_count;
  const std::size_t m = system.constraints.size();
  layout.artificial_begin = layout.structural;
  layout.cols = layout.structural + m;

  std::vector<std::vector<Rational>> rows(m, std::vector<Rational>(layout.cols));
  std::vector<Rational> rhs(m);
  std::size_t next_slack = col;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = system.constraints[i];
    for (std::size_t j = 0; j < nv; ++j) {
      rows[i][layout.pos_col[j]] = c.coeffs[j];
      if (layout.neg_col[j] != kNoColumn) rows[i][layout.neg_col[j]] = -c.coeffs[j];
    }
    if (c.relation == Relation::kLessEqual) rows[i][next_slack++] = 1;
    if (c.relation == Relation::kGreaterEqual) rows[i][next_slack++] = -1;
    rhs[i] = c.rhs;
    if (rhs[i] < 0) {
      for (auto& v : rows[i]) v = -v;
      rhs[i] = -rhs[i];
    }
    rows[i][layout.artificial_begin + i] = 1;
  }

  Tableau tab(std::move(rows), std::move(rhs), layout.cols);
  for (std::size_t i = 0; i < m; ++i) tab.basis()[i] = layout.artificial_begin + i;

  // Phase 1: maximize -(sum of artificials).
  std::vector<Rational> phase1(layout.cols);
  for (std::size_t i = 0; i < m; ++i) phase1[layout.artificial_begin + i] = -1;
  tab.set_cost(phase1, std::vector<bool>(layout.cols, true));
  tab.optimize();
  LpResult result;
  if (tab.value() < 0) {
    result.status = LpStatus::kInfeasible;
    return result;
  }
  // Drive artificial variables out of the basis; rows that cannot be
  // repaired are linearly dependent and get dropped.
  for (std::size_t i = tab.rows().size(); i-- > 0;) {
    if (tab.basis()[i] < layout.artificial_begin) continue;
    std::size_t replacement = kNoColumn;
    for (std::size_t j = 0; j < layout.artificial_begin; ++j) {
      if (tab.rows()[i][j] != 0) {
        replacement = j;
        break;
      }
    }
    if (replacement == kNoColumn) {
      tab.drop_row(i);
    } else {
      tab.pivot(i, replacement);
    }
  }

  std::vector<Rational> cost(layout.cols);
  for (std::size_t j = 0; j < nv; ++j) {
    cost[layout.pos_col[j]] = objective[j];
    if (layout.neg_col[j] != kNoColumn) cost[layout.neg_col[j]] = -objective[j];
  }
  std::vector<bool> allowed(layout.cols, true);
  for (std::size_t j = layout.artificial_begin; j < layout.cols; ++j) allowed[j] = false;
  tab.set_cost(cost, std::move(allowed));
  if (!tab.optimize()) {
    result.status = LpStatus::kUnbounded;
    return result;
  }
  const auto z = tab.solution();
  result.status = LpStatus::kOptimal;
  result.x.resize(nv);
  for (std::size_t j = 0; j < nv; ++j) {
    result.x[j] = z[layout.pos_col[j]];
    if (layout.neg_col[j] != kNoColumn) result.x[j] -= z[layout.neg_col[j]];
  }
  result.value = tab.value();
  return result;
}

Feasibility lp_feasible_exact(const LinearSystem& system) {
  const std::vector<Rational> zero(system.num_vars);
  LpResult r = maximize(system, zero);
  if (r.status == LpStatus::kInfeasible) return {false, {}};
  return {true, std::move(r.x)};
}

}  // namespace pilp
