#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pilp/arith.hpp"

namespace pilp {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct LinearConstraint {
  std::vector<Rational> coeffs;
  Relation relation = Relation::kLessEqual;
  Rational rhs;
};

/// A finite system of linear constraints over Q. Variables are free unless
/// flagged in `nonnegative` (an empty vector means all free).
struct LinearSystem {
  std::size_t num_vars = 0;
  std::vector<LinearConstraint> constraints;
  std::vector<bool> nonnegative;

  void add(std::vector<Rational> coeffs, Relation relation, Rational rhs) {
    constraints.push_back({std::move(coeffs), relation, std::move(rhs)});
  }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<Rational> x;  // optimal point when status == kOptimal
  Rational value;
};

/// Exact two-phase primal simplex with Bland's rule.
LpResult maximize(const LinearSystem& system, std::span<const Rational> objective);

struct Feasibility {
  bool feasible = false;
  std::vector<Rational> witness;
};

Feasibility lp_feasible_exact(const LinearSystem& system);

}  // namespace pilp
