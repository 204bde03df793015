#pragma once

#include <vector>

#include <Eigen/Core>

#include "conesel/constraints.hpp"
#include "conesel/feasibility.hpp"

namespace conesel {

/// Enforces every hard constraint and every soft constraint with B_i >= 0.
/// nu = B certifies the result, so it is always feasible.
Configuration init_config(const ConstraintSet& cs);

struct IcaResult {
  Configuration config;
  Eigen::VectorXd nu;
  int iterations = 0;
  /// The initial input was infeasible and the search restarted from hard-only.
  bool restarted = false;
  /// Every configuration visited, starting with the (possibly restarted)
  /// initial one. Each is feasible.
  std::vector<Configuration> trace;
};

/// Iterative constraint addition: repeatedly enforce every disregarded
/// constraint whose component of nu is nonnegative.
/// Throws HardInfeasibleError when even hard-only is infeasible.
IcaResult iterative_constraint_addition(const ConstraintSet& cs, const Configuration& initial);
IcaResult iterative_constraint_addition(const ConstraintSet& cs, const NullspaceBasis& nb,
                                        const Configuration& initial);

enum class LcsBranch { Feasible, DropSucceeded, FallbackToIca };

struct LcsResult {
  Configuration config;
  Eigen::VectorXd nu;  // certificate of `config` for this constraint set
  LcsBranch branch = LcsBranch::Feasible;
  int checks = 0;      // feasibility checks performed
};

/// Local configuration search with depth `depth` >= 1.
///
/// Feasible current configuration: run ICA, then test disregarded constraints
/// one at a time, closest-to-zero nu first, keeping each one that leaves the
/// configuration feasible. Infeasible: drop enforced soft constraints one at
/// a time in increasing order of `nu_prev`, stopping as soon as the
/// configuration becomes feasible; if that never happens within `depth`
/// rounds, run ICA from hard-only. Hard constraints are never dropped.
LcsResult local_configuration_search(const ConstraintSet& cs, const Configuration& current,
                                     const Configuration& last_feasible, const Eigen::VectorXd& nu_prev,
                                     int depth);
LcsResult local_configuration_search(const ConstraintSet& cs, const NullspaceBasis& nb,
                                     const Configuration& current, const Configuration& last_feasible,
                                     const Eigen::VectorXd& nu_prev, int depth);

/// Selector state threaded through consecutive control steps.
struct SelectionState {
  Configuration current;
  Configuration last_feasible;
  Eigen::VectorXd nu_last;
  int depth = 1;
};

}  // namespace conesel
