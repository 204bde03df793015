#pragma once

#include <optional>

#include <Eigen/Core>

namespace conesel {

/// Absolute feasibility tolerance on constraint residuals (scaled by
/// max(1, |rhs|) where right-hand sides are large).
inline constexpr double kTolFeas = 1e-8;

/// Dense linear program
///
///   minimize    objective' x
///   subject to  eq_lhs x   =  eq_rhs
///               ineq_lhs x <= ineq_rhs
///               x_j >= var_lower_j
///
/// An empty `var_lower` leaves every variable free; an entry equal to
/// -infinity leaves that single variable free. Matrices with zero rows may
/// have zero columns.
struct LpProblem {
  Eigen::VectorXd objective;
  Eigen::MatrixXd eq_lhs;
  Eigen::VectorXd eq_rhs;
  Eigen::MatrixXd ineq_lhs;
  Eigen::VectorXd ineq_rhs;
  Eigen::VectorXd var_lower;

  Eigen::Index num_vars() const { return objective.size(); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

const char* to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  /// Optimal point; set iff status == Optimal.
  std::optional<Eigen::VectorXd> x;
  std::optional<double> objective_value;
  /// Feasible direction along which the objective strictly decreases; set iff
  /// status == Unbounded.
  std::optional<Eigen::VectorXd> unbounded_ray;
  /// Basic feasible point at which unboundedness was detected; set iff
  /// status == Unbounded.
  std::optional<Eigen::VectorXd> feasible_point;
  /// Multipliers (>= 0) of the inequality rows at the optimum; set iff
  /// status == Optimal.
  std::optional<Eigen::VectorXd> ineq_multipliers;
  int pivots = 0;
};

/// Two-phase dense tableau simplex with Bland's rule. The status is an exact
/// classification up to kTolFeas; identical inputs give bit-identical output.
///
/// Throws DimensionError on inconsistent shapes and NonFiniteError on NaN/inf
/// data (var_lower may hold -infinity).
LpSolution solve_lp(const LpProblem& problem);

}  // namespace conesel
