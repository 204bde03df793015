#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "conesel/constraints.hpp"
#include "conesel/lp.hpp"

namespace conesel {

/// Verdict of the feasibility check for one configuration.
///
/// When feasible, `nu` solves  basis' nu = reduced_bounds  with the enforced
/// components nonnegative. Equivalently nu = B - A'u for some input u that
/// satisfies every enforced constraint, so nu_i is the slack of constraint i
/// at that u.
struct FeasibilityCertificate {
  bool feasible = false;
  Eigen::VectorXd nu;  // size c when feasible, empty otherwise
  std::vector<Eigen::Index> enforced;         // nu_e (>= 0)
  std::vector<Eigen::Index> disregarded_pos;  // disregarded with nu >= 0
  std::vector<Eigen::Index> disregarded_neg;  // disregarded with nu < 0
  /// The ranking objective (P - 1/2)' nu was unbounded below; `nu` is the
  /// feasible vertex where the solver stopped rather than a minimizer.
  bool cost_unbounded = false;
};

/// Polar-cone components of the reduced bounds.
struct PolarConeReport {
  Eigen::VectorXd nu_star;
  double objective = 0.0;        // 1' nu_star
  double nu_min_enforced = 0.0;  // smallest component of nu_star
  std::optional<double> dist_lower;
  std::optional<double> dist_upper;
};

/// Distance bounds from a minimal simplicial representation.
struct SimplicialBounds {
  double dist_lower = 0.0;
  double dist_upper = 0.0;
  double nu_min = 0.0;
  double sigma_min = 0.0;      // smallest singular value of the chosen generators
  double max_gen_norm = 0.0;   // largest generator norm
  std::vector<Eigen::Index> generators;  // rows of the generator matrix used
  Eigen::VectorXd coefficients;          // reduced_bounds = sum coefficients_j g_j
};

/// True iff {u : A'u <= B} is nonempty, decided by phase-1 feasibility of
/// {basis' nu = reduced_bounds, nu >= 0}. Nullity zero is always feasible.
bool farkas_feasible(const ConstraintSet& cs);
bool farkas_feasible(const NullspaceBasis& nb);

/// The conic LP  max -reduced_bounds' mu  s.t.  basis mu >= 0, posed as a
/// minimization over free mu. Bounded (optimum 0 at mu = 0) iff the
/// constraint set is feasible.
LpSolution solve_conic_lp(const NullspaceBasis& nb);

/// Feasibility check of a configuration:
///
///   minimize (P - 1/2)' nu  s.t.  basis' nu = reduced_bounds,  nu_i >= 0 for enforced i.
///
/// The configuration is feasible iff this LP is feasible.
FeasibilityCertificate feasibility_check(const ConstraintSet& cs, const Configuration& config);
FeasibilityCertificate feasibility_check(const ConstraintSet& cs, const NullspaceBasis& nb,
                                         const Configuration& config);

/// min 1'nu s.t. basis' nu = reduced_bounds, nu >= 0; attaches simplicial
/// distance bounds when the nullity is at most 3 and they are available.
/// Throws InfeasibleInputError on an infeasible constraint set.
PolarConeReport polar_components(const ConstraintSet& cs);
PolarConeReport polar_components(const ConstraintSet& cs, const NullspaceBasis& nb);

/// Bounds on the distance from the reduced bounds to the boundary of the cone
/// generated by the kernel-basis rows. std::nullopt when the nullity exceeds
/// 3, the cone is not pointed and full-dimensional, the point is not strictly
/// interior, or no simplicial cell reproduces the boundary distance.
std::optional<SimplicialBounds> simplicial_bounds(const ConstraintSet& cs);
std::optional<SimplicialBounds> simplicial_bounds(const NullspaceBasis& nb);

/// Same as above for a cone given by generator rows (n x k, k <= 3) and a
/// point of R^k.
std::optional<SimplicialBounds> simplicial_bounds_from_generators(const Eigen::MatrixXd& generator_rows,
                                                                  const Eigen::VectorXd& point);

}  // namespace conesel
