#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mldforge/rational.hpp"

namespace mldforge {

// minimize cost.x + constant  subject to  rows[i].x <= rhs[i],
// lower <= x <= upper (upper optional per variable).
struct LinearProgram {
  std::size_t nvars = 0;
  std::vector<Rational> cost;
  Rational constant;
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  std::vector<Rational> lower;
  std::vector<std::optional<Rational>> upper;

  explicit LinearProgram(std::size_t n = 0)
      : nvars(n), cost(n), lower(n), upper(n) {}
  void add_row(std::vector<Rational> a, Rational b) {
    rows.push_back(std::move(a));
    rhs.push_back(std::move(b));
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  std::vector<Rational> x;
};

// Exact two-phase simplex with Bland's rule.
LpResult solve_lp(const LinearProgram& lp);

struct IntegerProgram {
  LinearProgram lp;
  std::vector<bool> integral;
};

struct IlpOptions {
  long initial_box = 4;
  long max_box = 1 << 12;
  std::size_t node_budget = 2000000;
};

struct IlpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  std::vector<Rational> x;
  std::size_t nodes = 0;
  long box = 0;  // radius at which the outside-box certificate closed
};

// Branch and bound inside the box [lower, lower + R] on the integral
// variables, then LP certificates that no better point lies outside; R doubles
// until they hold. An unbounded relaxation with an integral point reports
// Unbounded. Throws BudgetExceeded past max_box or node_budget.
IlpResult minimize_integer(const IntegerProgram& ip, const IlpOptions& options = {});

}  // namespace mldforge
