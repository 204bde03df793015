#include "conesel/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "conesel/error.hpp"

namespace conesel {

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal:
      return "optimal";
    case LpStatus::Infeasible:
      return "infeasible";
    case LpStatus::Unbounded:
      return "unbounded";
  }
  return "unknown";
}

namespace {

using Eigen::Index;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr int kMaxPivots = 500000;

void validate(const LpProblem& p) {
  const Index n = p.num_vars();
  auto check_block = [n](const Eigen::MatrixXd& lhs, const Eigen::VectorXd& rhs, const char* name) {
    if (lhs.rows() != rhs.size()) {
      throw DimensionError(std::string(name) + ": lhs has " + std::to_string(lhs.rows()) +
                           " rows but rhs has " + std::to_string(rhs.size()) + " entries");
    }
    if (lhs.rows() > 0 && lhs.cols() != n) {
      throw DimensionError(std::string(name) + ": lhs has " + std::to_string(lhs.cols()) +
                           " columns, expected " + std::to_string(n));
    }
    if (!lhs.allFinite() || !rhs.allFinite()) {
      throw NonFiniteError(std::string(name) + ": non-finite entry");
    }
  };
  if (!p.objective.allFinite()) throw NonFiniteError("objective: non-finite entry");
  check_block(p.eq_lhs, p.eq_rhs, "equality block");
  check_block(p.ineq_lhs, p.ineq_rhs, "inequality block");
  if (p.var_lower.size() != 0 && p.var_lower.size() != n) {
    throw DimensionError("var_lower has " + std::to_string(p.var_lower.size()) +
                         " entries, expected 0 or " + std::to_string(n));
  }
  for (Index j = 0; j < p.var_lower.size(); ++j) {
    const double l = p.var_lower[j];
    if (std::isnan(l) || l == std::numeric_limits<double>::infinity()) {
      throw NonFiniteError("var_lower[" + std::to_string(j) + "] must be finite or -inf");
    }
  }
}

// One standard-form column: x[var] += sign * z (var < 0 marks a slack).
struct StdColumn {
  Index var;
  double sign;
};

// Dense simplex tableau. Rows [0, rows) hold constraints; the last row holds
// reduced costs, with -objective in the rhs column.
class Tableau {
 public:
  Tableau(RowMatrix t, std::vector<Index> basis) : t_(std::move(t)), basis_(std::move(basis)) {}

  Index rows() const { return t_.rows() - 1; }
  Index cols() const { return t_.cols() - 1; }
  Index rhs_col() const { return t_.cols() - 1; }
  Index cost_row() const { return t_.rows() - 1; }
  double& at(Index r, Index c) { return t_(r, c); }
  double at(Index r, Index c) const { return t_(r, c); }
  const std::vector<Index>& basis() const { return basis_; }
  RowMatrix& raw() { return t_; }
  int pivots() const { return pivots_; }

  void pivot(Index r, Index c) {
    const double piv = t_(r, c);
    t_.row(r) /= piv;
    for (Index i = 0; i < t_.rows(); ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f != 0.0) {
        t_.row(i) -= f * t_.row(r);
        t_(i, c) = 0.0;
      }
    }
    t_(r, c) = 1.0;
    basis_[static_cast<std::size_t>(r)] = c;
    if (++pivots_ > kMaxPivots) {
      throw Error("simplex exceeded pivot limit; cycling despite Bland's rule");
    }
  }

  enum class Outcome { Optimal, Unbounded };

  // Bland's rule: lowest-index improving column enters, ties in the ratio test
  // leave by lowest basic index. Columns >= `allowed_cols` never enter.
  Outcome run(Index allowed_cols, Index* unbounded_col) {
    for (;;) {
      Index enter = -1;
      for (Index j = 0; j < allowed_cols; ++j) {
        if (t_(cost_row(), j) < -kCostTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return Outcome::Optimal;

      Index leave = -1;
      double best = 0.0;
      for (Index i = 0; i < rows(); ++i) {
        const double a = t_(i, enter);
        if (a <= kPivotTol) continue;
        const double ratio = t_(i, rhs_col()) / a;
        if (leave < 0) {
          leave = i;
          best = ratio;
          continue;
        }
        const double tie = 1e-12 * (1.0 + std::abs(best));
        if (ratio < best - tie) {
          leave = i;
          best = ratio;
        } else if (ratio <= best + tie &&
                   basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)]) {
          leave = i;
          best = std::min(best, ratio);
        }
      }
      if (leave < 0) {
        *unbounded_col = enter;
        return Outcome::Unbounded;
      }
      pivot(leave, enter);
    }
  }

  // Values of all standard-form columns at the current basis.
  Eigen::VectorXd point(Index ncols) const {
    Eigen::VectorXd z = Eigen::VectorXd::Zero(ncols);
    for (Index i = 0; i < rows(); ++i) {
      const Index b = basis_[static_cast<std::size_t>(i)];
      if (b < ncols) z[b] = std::max(0.0, t_(i, rhs_col()));
    }
    return z;
  }

  void drop_rows_and_cols(const std::vector<bool>& keep_row, Index keep_cols) {
    Index nrows = 0;
    for (bool k : keep_row) nrows += k ? 1 : 0;
    RowMatrix next(nrows + 1, keep_cols + 1);
    std::vector<Index> next_basis;
    Index out = 0;
    for (Index i = 0; i < rows(); ++i) {
      if (!keep_row[static_cast<std::size_t>(i)]) continue;
      next.row(out).head(keep_cols) = t_.row(i).head(keep_cols);
      next(out, keep_cols) = t_(i, rhs_col());
      next_basis.push_back(basis_[static_cast<std::size_t>(i)]);
      ++out;
    }
    next.row(nrows).setZero();
    t_ = std::move(next);
    basis_ = std::move(next_basis);
  }

 private:
  RowMatrix t_;
  std::vector<Index> basis_;
  int pivots_ = 0;
};

}  // namespace

LpSolution solve_lp(const LpProblem& p) {
  validate(p);
  const Index n = p.num_vars();
  const Index meq = p.eq_rhs.size();
  const Index mineq = p.ineq_rhs.size();
  const Index nrows = meq + mineq;

  // Shift bounded variables to x = l + z and split free ones as z+ - z-.
  std::vector<StdColumn> columns;
  Eigen::VectorXd offset = Eigen::VectorXd::Zero(n);
  for (Index j = 0; j < n; ++j) {
    const bool bounded = p.var_lower.size() != 0 && std::isfinite(p.var_lower[j]);
    if (bounded) {
      offset[j] = p.var_lower[j];
      columns.push_back({j, 1.0});
    } else {
      columns.push_back({j, 1.0});
      columns.push_back({j, -1.0});
    }
  }
  const Index nstd = static_cast<Index>(columns.size());
  const Index first_slack = nstd;
  const Index first_art = nstd + mineq;

  Eigen::MatrixXd body = Eigen::MatrixXd::Zero(nrows, first_art);
  Eigen::VectorXd rhs(nrows);
  for (Index i = 0; i < nrows; ++i) {
    const bool is_eq = i < meq;
    const auto row = is_eq ? p.eq_lhs.row(i) : p.ineq_lhs.row(i - meq);
    for (Index c = 0; c < nstd; ++c) {
      const auto& col = columns[static_cast<std::size_t>(c)];
      body(i, c) = row[col.var] * col.sign;
    }
    rhs[i] = (is_eq ? p.eq_rhs[i] : p.ineq_rhs[i - meq]) - (n > 0 ? row.dot(offset) : 0.0);
    if (!is_eq) body(i, first_slack + (i - meq)) = 1.0;
  }

  // Nonnegative rhs; a non-flipped inequality row starts with its slack basic.
  std::vector<Index> basis(static_cast<std::size_t>(nrows));
  std::vector<Index> art_rows;
  for (Index i = 0; i < nrows; ++i) {
    const bool flipped = rhs[i] < 0.0;
    if (flipped) {
      body.row(i) *= -1.0;
      rhs[i] = -rhs[i];
    }
    if (i >= meq && !flipped) {
      basis[static_cast<std::size_t>(i)] = first_slack + (i - meq);
    } else {
      basis[static_cast<std::size_t>(i)] = first_art + static_cast<Index>(art_rows.size());
      art_rows.push_back(i);
    }
  }
  const Index nart = static_cast<Index>(art_rows.size());
  const Index ncols = first_art + nart;
  const double rhs_scale = std::max(1.0, nrows > 0 ? rhs.cwiseAbs().maxCoeff() : 0.0);

  RowMatrix t = RowMatrix::Zero(nrows + 1, ncols + 1);
  t.topLeftCorner(nrows, first_art) = body;
  t.block(0, ncols, nrows, 1) = rhs;
  for (Index a = 0; a < nart; ++a) {
    const Index r = art_rows[static_cast<std::size_t>(a)];
    t(r, first_art + a) = 1.0;
    t.row(nrows).head(first_art) -= t.row(r).head(first_art);
    t(nrows, ncols) -= rhs[r];
  }

  Tableau tab(std::move(t), std::move(basis));
  LpSolution sol;

  // Phase 1: minimize the sum of artificials.
  if (nart > 0) {
    Index dummy = -1;
    const auto outcome = tab.run(ncols, &dummy);
    (void)outcome;  // phase 1 is bounded below by zero
    const double infeas = -tab.at(tab.cost_row(), tab.rhs_col());
    if (infeas > kTolFeas * rhs_scale) {
      sol.status = LpStatus::Infeasible;
      sol.pivots = tab.pivots();
      return sol;
    }
    // Drive remaining (zero-valued) artificials out of the basis.
    std::vector<bool> keep(static_cast<std::size_t>(tab.rows()), true);
    for (Index r = 0; r < tab.rows(); ++r) {
      if (tab.basis()[static_cast<std::size_t>(r)] < first_art) continue;
      Index best = -1;
      double best_abs = kPivotTol;
      for (Index j = 0; j < first_art; ++j) {
        const double a = std::abs(tab.at(r, j));
        if (a > best_abs) {
          best_abs = a;
          best = j;
        }
      }
      if (best >= 0) {
        tab.pivot(r, best);
      } else {
        keep[static_cast<std::size_t>(r)] = false;  // redundant equality
      }
    }
    tab.drop_rows_and_cols(keep, first_art);
  } else {
    std::vector<bool> keep(static_cast<std::size_t>(tab.rows()), true);
    tab.drop_rows_and_cols(keep, first_art);
  }

  // Phase 2 reduced costs.
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(first_art);
  for (Index c = 0; c < nstd; ++c) {
    const auto& col = columns[static_cast<std::size_t>(c)];
    cost[c] = p.objective[col.var] * col.sign;
  }
  {
    auto& raw = tab.raw();
    const Index cr = tab.cost_row();
    raw.row(cr).head(first_art) = cost.transpose();
    raw(cr, tab.rhs_col()) = 0.0;
    for (Index r = 0; r < tab.rows(); ++r) {
      const double cb = cost[tab.basis()[static_cast<std::size_t>(r)]];
      if (cb != 0.0) raw.row(cr) -= cb * raw.row(r);
    }
  }

  auto to_original = [&](const Eigen::VectorXd& z, bool with_offset) {
    Eigen::VectorXd x = with_offset ? offset : Eigen::VectorXd::Zero(n);
    for (Index c = 0; c < nstd; ++c) {
      const auto& col = columns[static_cast<std::size_t>(c)];
      x[col.var] += col.sign * z[c];
    }
    return x;
  };

  Index enter = -1;
  const auto outcome = tab.run(first_art, &enter);
  sol.pivots = tab.pivots();
  const Eigen::VectorXd z = tab.point(first_art);

  if (outcome == Tableau::Outcome::Unbounded) {
    Eigen::VectorXd dz = Eigen::VectorXd::Zero(first_art);
    dz[enter] = 1.0;
    for (Index r = 0; r < tab.rows(); ++r) {
      dz[tab.basis()[static_cast<std::size_t>(r)]] = -tab.at(r, enter);
    }
    Eigen::VectorXd ray = to_original(dz, false);
    const double scale = ray.size() > 0 ? ray.cwiseAbs().maxCoeff() : 0.0;
    if (scale > 0.0) ray /= scale;
    sol.status = LpStatus::Unbounded;
    sol.unbounded_ray = std::move(ray);
    sol.feasible_point = to_original(z, true);
    return sol;
  }

  sol.status = LpStatus::Optimal;
  Eigen::VectorXd x = to_original(z, true);
  sol.objective_value = n > 0 ? p.objective.dot(x) : 0.0;
  Eigen::VectorXd lambda(mineq);
  for (Index i = 0; i < mineq; ++i) {
    lambda[i] = std::max(0.0, tab.at(tab.cost_row(), first_slack + i));
  }
  sol.ineq_multipliers = std::move(lambda);
  sol.x = std::move(x);
  return sol;
}

}  // namespace conesel
