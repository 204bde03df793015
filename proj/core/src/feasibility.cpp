#include "conesel/feasibility.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "conesel/error.hpp"

namespace conesel {

using Eigen::Index;

namespace {

constexpr double kFree = -std::numeric_limits<double>::infinity();

LpProblem cone_system(const NullspaceBasis& nb, Eigen::VectorXd objective, Eigen::VectorXd lower) {
  LpProblem lp;
  lp.objective = std::move(objective);
  lp.eq_lhs = nb.basis.transpose();
  lp.eq_rhs = nb.reduced_bounds;
  lp.ineq_lhs.resize(0, lp.objective.size());
  lp.ineq_rhs.resize(0);
  lp.var_lower = std::move(lower);
  return lp;
}

}  // namespace

bool farkas_feasible(const ConstraintSet& cs) { return farkas_feasible(nullspace_basis(cs)); }

bool farkas_feasible(const NullspaceBasis& nb) {
  if (nb.nullity() == 0) return true;
  const Index c = nb.basis.rows();
  const auto sol = solve_lp(cone_system(nb, Eigen::VectorXd::Zero(c), Eigen::VectorXd::Zero(c)));
  return sol.status != LpStatus::Infeasible;
}

LpSolution solve_conic_lp(const NullspaceBasis& nb) {
  LpProblem lp;
  lp.objective = nb.reduced_bounds;
  lp.eq_lhs.resize(0, nb.nullity());
  lp.eq_rhs.resize(0);
  lp.ineq_lhs = -nb.basis;
  lp.ineq_rhs = Eigen::VectorXd::Zero(nb.basis.rows());
  return solve_lp(lp);
}

FeasibilityCertificate feasibility_check(const ConstraintSet& cs, const Configuration& config) {
  return feasibility_check(cs, nullspace_basis(cs), config);
}

FeasibilityCertificate feasibility_check(const ConstraintSet& cs, const NullspaceBasis& nb,
                                         const Configuration& config) {
  const Index c = cs.size();
  if (config.size() != c || nb.basis.rows() != c) {
    throw DimensionError("feasibility_check: configuration/basis size does not match " +
                         std::to_string(c) + " constraints");
  }
  Eigen::VectorXd objective(c);
  Eigen::VectorXd lower(c);
  for (Index i = 0; i < c; ++i) {
    objective[i] = config.enforced(i) ? 0.5 : -0.5;
    lower[i] = config.enforced(i) ? 0.0 : kFree;
  }
  const auto sol = solve_lp(cone_system(nb, std::move(objective), std::move(lower)));

  FeasibilityCertificate cert;
  if (sol.status == LpStatus::Infeasible) return cert;
  cert.feasible = true;
  if (sol.status == LpStatus::Optimal) {
    cert.nu = *sol.x;
  } else {
    // Walk along the recession ray until every entry that grows on it is
    // nonnegative; enforced entries never shrink along the ray.
    const Eigen::VectorXd& ray = *sol.unbounded_ray;
    cert.nu = *sol.feasible_point;
    double step = 0.0;
    for (Index i = 0; i < c; ++i) {
      if (ray[i] > kTolFeas && cert.nu[i] < 0.0) step = std::max(step, -cert.nu[i] / ray[i]);
    }
    if (step > 0.0) cert.nu += (step + 1.0) * ray;
    cert.cost_unbounded = true;
  }
  for (Index i = 0; i < c; ++i) {
    if (config.enforced(i)) {
      cert.enforced.push_back(i);
    } else if (cert.nu[i] >= 0.0) {
      cert.disregarded_pos.push_back(i);
    } else {
      cert.disregarded_neg.push_back(i);
    }
  }
  return cert;
}

PolarConeReport polar_components(const ConstraintSet& cs) {
  return polar_components(cs, nullspace_basis(cs));
}

PolarConeReport polar_components(const ConstraintSet& cs, const NullspaceBasis& nb) {
  const Index c = cs.size();
  const auto sol = solve_lp(cone_system(nb, Eigen::VectorXd::Ones(c), Eigen::VectorXd::Zero(c)));
  if (sol.status != LpStatus::Optimal) {
    throw InfeasibleInputError("polar_components: constraint set is infeasible");
  }
  PolarConeReport report;
  report.nu_star = *sol.x;
  report.objective = *sol.objective_value;
  report.nu_min_enforced = report.nu_star.minCoeff();
  if (nb.nullity() >= 1 && nb.nullity() <= 3) {
    if (auto bounds = simplicial_bounds(nb)) {
      report.dist_lower = bounds->dist_lower;
      report.dist_upper = bounds->dist_upper;
    }
  }
  return report;
}

std::optional<SimplicialBounds> simplicial_bounds(const ConstraintSet& cs) {
  return simplicial_bounds(nullspace_basis(cs));
}

std::optional<SimplicialBounds> simplicial_bounds(const NullspaceBasis& nb) {
  if (nb.nullity() < 1 || nb.nullity() > 3) return std::nullopt;
  return simplicial_bounds_from_generators(nb.basis, nb.reduced_bounds);
}

}  // namespace conesel
