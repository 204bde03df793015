#pragma once

#include <Eigen/Core>

#include "conesel/constraints.hpp"

namespace conesel {

/// Elastic (slacked) LP over the enforced constraints:
///
///   minimize sum_i s_i  over enforced soft i
///   s.t.     A_i'u <= B_i + s_i  (enforced soft),  A_i'u <= B_i  (hard),  s >= 0.
struct SlackReport {
  bool feasible = false;          // total_slack <= kTolFeas
  Eigen::VectorXd slacks;         // size c, zero for hard and disregarded entries
  double total_slack = 0.0;
  Eigen::VectorXd multipliers;    // size c, LP multipliers of the enforced rows
};

/// Throws HardInfeasibleError when the hard rows alone are infeasible.
SlackReport slack_feasible(const ConstraintSet& cs, const Configuration& config);

/// Elastic-programming constraint dropping: starting from every constraint
/// enforced, while the elastic optimum is positive, drop the violated soft
/// constraint whose removal gives the smallest re-solved total slack (ties by
/// lower index).
Configuration baseline1_select(const ConstraintSet& cs);

struct Baseline2Result {
  Configuration config;
  Eigen::VectorXd multipliers;  // size c, from the final elastic solve
};

/// Multiplier-ranked dropping with reintroduction: every soft constraint
/// disregarded in `previous` is re-enforced with its multiplier reset to 0;
/// while the elastic LP reports infeasibility, the enforced soft constraint
/// with the largest previous multiplier is dropped (ties by lower index).
/// An empty `prev_multipliers` counts as all zeros.
Baseline2Result baseline2_select(const ConstraintSet& cs, const Configuration& previous,
                                 const Eigen::VectorXd& prev_multipliers);

}  // namespace conesel
