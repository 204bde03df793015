// Comparison heuristics. Both are reconstructions from one-line descriptions
// of published algorithms and exist to reproduce comparative trends.

#include "conesel/baselines.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "conesel/error.hpp"
#include "conesel/lp.hpp"

namespace conesel {

using Eigen::Index;

SlackReport slack_feasible(const ConstraintSet& cs, const Configuration& config) {
  if (config.size() != cs.size()) throw DimensionError("slack_feasible: configuration size mismatch");
  const Index m = cs.input_dim();
  std::vector<Index> rows;
  std::vector<Index> soft_rows;
  for (Index i = 0; i < cs.size(); ++i) {
    if (!config.enforced(i) && !cs.is_hard(i)) continue;
    rows.push_back(i);
    if (!cs.is_hard(i)) soft_rows.push_back(i);
  }
  const Index ns = static_cast<Index>(soft_rows.size());
  const Index nr = static_cast<Index>(rows.size());

  // Variables: [u (free, m) | s (>= 0, ns)].
  LpProblem lp;
  lp.objective = Eigen::VectorXd::Zero(m + ns);
  lp.objective.tail(ns).setOnes();
  lp.eq_lhs.resize(0, m + ns);
  lp.eq_rhs.resize(0);
  lp.ineq_lhs = Eigen::MatrixXd::Zero(nr, m + ns);
  lp.ineq_rhs.resize(nr);
  lp.var_lower = Eigen::VectorXd::Constant(m + ns, -std::numeric_limits<double>::infinity());
  lp.var_lower.tail(ns).setZero();
  Index slack_col = m;
  for (Index r = 0; r < nr; ++r) {
    const Index i = rows[static_cast<std::size_t>(r)];
    lp.ineq_lhs.row(r).head(m) = cs.normals().col(i).transpose();
    lp.ineq_rhs[r] = cs.bounds()[i];
    if (!cs.is_hard(i)) lp.ineq_lhs(r, slack_col++) = -1.0;
  }

  const auto sol = solve_lp(lp);
  if (sol.status == LpStatus::Infeasible) {
    throw HardInfeasibleError("slack_feasible: hard constraints alone are infeasible");
  }
  if (sol.status != LpStatus::Optimal) {
    throw Error("slack_feasible: elastic LP is unbounded, which is impossible for a nonnegative cost");
  }

  SlackReport report;
  report.slacks = Eigen::VectorXd::Zero(cs.size());
  report.multipliers = Eigen::VectorXd::Zero(cs.size());
  for (Index j = 0; j < ns; ++j) {
    report.slacks[soft_rows[static_cast<std::size_t>(j)]] = std::max(0.0, (*sol.x)[m + j]);
  }
  for (Index r = 0; r < nr; ++r) {
    report.multipliers[rows[static_cast<std::size_t>(r)]] = (*sol.ineq_multipliers)[r];
  }
  report.total_slack = report.slacks.sum();
  report.feasible = report.total_slack <= kTolFeas;
  return report;
}

Configuration baseline1_select(const ConstraintSet& cs) {
  Configuration config = Configuration::all_enforced(cs.size());
  auto report = slack_feasible(cs, config);
  while (!report.feasible) {
    Index best = -1;
    SlackReport best_report;
    for (Index i = cs.num_hard(); i < cs.size(); ++i) {
      if (!config.enforced(i) || report.slacks[i] <= kTolFeas) continue;
      config.set(i, false);
      auto trial = slack_feasible(cs, config);
      config.set(i, true);
      if (best < 0 || trial.total_slack < best_report.total_slack) {
        best = i;
        best_report = std::move(trial);
      }
    }
    if (best < 0) break;  // positive total with no positive slack: rounding only
    config.set(best, false);
    report = std::move(best_report);
  }
  return config;
}

Baseline2Result baseline2_select(const ConstraintSet& cs, const Configuration& previous,
                                 const Eigen::VectorXd& prev_multipliers) {
  if (previous.size() != cs.size()) throw DimensionError("baseline2_select: configuration size mismatch");
  if (prev_multipliers.size() != 0 && prev_multipliers.size() != cs.size()) {
    throw DimensionError("baseline2_select: multiplier vector size mismatch");
  }
  Eigen::VectorXd lm = prev_multipliers.size() ? prev_multipliers : Eigen::VectorXd::Zero(cs.size());
  Configuration config = Configuration::all_enforced(cs.size());
  for (Index i = cs.num_hard(); i < cs.size(); ++i) {
    if (!previous.enforced(i)) lm[i] = 0.0;
  }

  auto report = slack_feasible(cs, config);
  while (!report.feasible) {
    Index drop = -1;
    for (Index i = cs.num_hard(); i < cs.size(); ++i) {
      if (!config.enforced(i)) continue;
      if (drop < 0 || lm[i] > lm[drop]) drop = i;
    }
    if (drop < 0) break;
    config.set(drop, false);
    report = slack_feasible(cs, config);
  }
  return {std::move(config), std::move(report.multipliers)};
}

}  // namespace conesel
