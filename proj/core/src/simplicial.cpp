// Extreme rays and simplicial cells of the cone generated by kernel-basis rows,
// for cone dimension 1..3. Higher dimensions are rejected by the caller.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "conesel/error.hpp"
#include "conesel/feasibility.hpp"
#include "conesel/lp.hpp"

namespace conesel {

using Eigen::Index;

namespace {

constexpr double kAngleTol = 1e-10;

struct Cone {
  std::vector<Index> rays;            // extreme-ray row indices
  std::vector<Eigen::VectorXd> facet_normals;  // unit inward normals
};

std::vector<Index> nonzero_rows(const Eigen::MatrixXd& rows) {
  const double scale = rows.rowwise().norm().maxCoeff();
  std::vector<Index> out;
  for (Index i = 0; i < rows.rows(); ++i) {
    if (rows.row(i).norm() > 1e-12 * std::max(1.0, scale)) out.push_back(i);
  }
  return out;
}

std::optional<Cone> cone_1d(const Eigen::MatrixXd& rows, const std::vector<Index>& live) {
  const double sign = rows(live.front(), 0) > 0.0 ? 1.0 : -1.0;
  for (Index i : live) {
    if (rows(i, 0) * sign < 0.0) return std::nullopt;  // whole line
  }
  Cone cone;
  cone.rays.push_back(live.front());
  cone.facet_normals.push_back(Eigen::VectorXd::Constant(1, sign));
  return cone;
}

std::optional<Cone> cone_2d(const Eigen::MatrixXd& rows, const std::vector<Index>& live) {
  struct Dir {
    double angle;
    Index row;
  };
  std::vector<Dir> dirs;
  for (Index i : live) dirs.push_back({std::atan2(rows(i, 1), rows(i, 0)), i});
  std::sort(dirs.begin(), dirs.end(), [](const Dir& a, const Dir& b) {
    return a.angle < b.angle || (a.angle == b.angle && a.row < b.row);
  });
  // The cone is pointed iff some angular gap between consecutive directions
  // exceeds pi; the rays bounding that gap are the extreme rays.
  const std::size_t n = dirs.size();
  double best_gap = -1.0;
  std::size_t gap_after = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double next = i + 1 < n ? dirs[i + 1].angle : dirs[0].angle + 2.0 * std::numbers::pi;
    const double gap = next - dirs[i].angle;
    if (gap > best_gap) {
      best_gap = gap;
      gap_after = i;
    }
  }
  if (best_gap <= std::numbers::pi + kAngleTol) return std::nullopt;
  if (2.0 * std::numbers::pi - best_gap < kAngleTol) return std::nullopt;  // single direction

  // Counter-clockwise: the cone starts after the gap and ends before it.
  const std::size_t start_pos = (gap_after + 1) % n;
  const std::size_t end_pos = gap_after;
  auto lowest_parallel = [&](std::size_t pos) {
    Index best = dirs[pos].row;
    for (const auto& d : dirs) {
      if (std::abs(std::remainder(d.angle - dirs[pos].angle, 2.0 * std::numbers::pi)) < kAngleTol) {
        best = std::min(best, d.row);
      }
    }
    return best;
  };
  const Index start = lowest_parallel(start_pos);
  const Index end = lowest_parallel(end_pos);

  Cone cone;
  cone.rays = {start, end};
  Eigen::VectorXd n_start(2), n_end(2);
  n_start << -rows(start, 1), rows(start, 0);
  n_end << rows(end, 1), -rows(end, 0);
  cone.facet_normals = {n_start.normalized(), n_end.normalized()};
  return cone;
}

std::optional<Cone> cone_3d(const Eigen::MatrixXd& rows, const std::vector<Index>& live) {
  // Find w with w'r > 0 for every generator: maximize t s.t. r_hat' w >= t,
  // |w|_inf <= 1, t <= 1.
  const Index n = static_cast<Index>(live.size());
  LpProblem lp;
  lp.objective = Eigen::VectorXd::Zero(4);
  lp.objective[3] = -1.0;
  lp.eq_lhs.resize(0, 4);
  lp.eq_rhs.resize(0);
  lp.ineq_lhs = Eigen::MatrixXd::Zero(n + 7, 4);
  lp.ineq_rhs = Eigen::VectorXd::Zero(n + 7);
  for (Index i = 0; i < n; ++i) {
    lp.ineq_lhs.row(i).head(3) = -rows.row(live[static_cast<std::size_t>(i)]).normalized();
    lp.ineq_lhs(i, 3) = 1.0;
  }
  for (Index j = 0; j < 3; ++j) {
    lp.ineq_lhs(n + 2 * j, j) = 1.0;
    lp.ineq_rhs[n + 2 * j] = 1.0;
    lp.ineq_lhs(n + 2 * j + 1, j) = -1.0;
    lp.ineq_rhs[n + 2 * j + 1] = 1.0;
  }
  lp.ineq_lhs(n + 6, 3) = 1.0;
  lp.ineq_rhs[n + 6] = 1.0;
  const auto sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal || (*sol.x)[3] <= 1e-9) return std::nullopt;
  const Eigen::Vector3d w = sol.x->head(3).normalized();

  // Central projection onto the plane w'x = 1, in 2-D coordinates.
  Eigen::Vector3d e1 = w.unitOrthogonal();
  Eigen::Vector3d e2 = w.cross(e1);
  struct Pt {
    double x, y;
    Index row;
  };
  std::vector<Pt> pts;
  for (Index i : live) {
    const Eigen::Vector3d r = rows.row(i).transpose();
    const Eigen::Vector3d q = r / w.dot(r);
    pts.push_back({e1.dot(q), e2.dot(q), i});
  }
  std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) {
    return a.x < b.x || (a.x == b.x && (a.y < b.y || (a.y == b.y && a.row < b.row)));
  });
  // Merge coincident directions, keeping the lowest row index.
  std::vector<Pt> uniq;
  for (const auto& p : pts) {
    if (!uniq.empty() && std::hypot(p.x - uniq.back().x, p.y - uniq.back().y) < kAngleTol) {
      uniq.back().row = std::min(uniq.back().row, p.row);
    } else {
      uniq.push_back(p);
    }
  }
  if (uniq.size() < 3) return std::nullopt;
  auto cross = [](const Pt& o, const Pt& a, const Pt& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  };
  // Andrew's monotone chain, collinear points dropped.
  std::vector<Pt> hull(2 * uniq.size());
  std::size_t k = 0;
  for (const auto& p : uniq) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= kAngleTol) --k;
    hull[k++] = p;
  }
  for (std::size_t i = uniq.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], uniq[i]) <= kAngleTol) --k;
    hull[k++] = uniq[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 3) return std::nullopt;

  Cone cone;
  Eigen::Vector3d interior = Eigen::Vector3d::Zero();
  for (const auto& p : hull) {
    cone.rays.push_back(p.row);
    interior += rows.row(p.row).transpose().normalized();
  }
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Eigen::Vector3d a = rows.row(hull[i].row).transpose();
    const Eigen::Vector3d b = rows.row(hull[(i + 1) % hull.size()].row).transpose();
    Eigen::Vector3d nrm = a.cross(b).normalized();
    if (nrm.dot(interior) < 0.0) nrm = -nrm;
    cone.facet_normals.push_back(nrm);
  }
  return cone;
}

// All k-subsets of {0..n-1} in lexicographic order.
void for_each_subset(std::size_t n, std::size_t k, const auto& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  for (;;) {
    if (fn(idx)) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::optional<SimplicialBounds> simplicial_bounds_from_generators(const Eigen::MatrixXd& generator_rows,
                                                                  const Eigen::VectorXd& point) {
  const Index k = generator_rows.cols();
  if (k < 1 || k > 3 || point.size() != k) return std::nullopt;
  if (generator_rows.rows() == 0) return std::nullopt;
  const auto live = nonzero_rows(generator_rows);
  if (live.empty()) return std::nullopt;

  std::optional<Cone> cone;
  if (k == 1) cone = cone_1d(generator_rows, live);
  if (k == 2) cone = cone_2d(generator_rows, live);
  if (k == 3) cone = cone_3d(generator_rows, live);
  if (!cone) return std::nullopt;

  // Strict interiority and distance to the cone boundary.
  const double interior_tol = kTolFeas * std::max(1.0, point.norm());
  double dist_cone = std::numeric_limits<double>::infinity();
  for (const auto& nrm : cone->facet_normals) dist_cone = std::min(dist_cone, nrm.dot(point));
  if (!(dist_cone > interior_tol)) return std::nullopt;

  std::optional<SimplicialBounds> found;
  for_each_subset(cone->rays.size(), static_cast<std::size_t>(k), [&](const std::vector<std::size_t>& pick) {
    Eigen::MatrixXd g(k, k);
    std::vector<Index> gens;
    for (Index j = 0; j < k; ++j) {
      gens.push_back(cone->rays[pick[static_cast<std::size_t>(j)]]);
      g.col(j) = generator_rows.row(gens.back()).transpose();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(g);
    const auto& sv = svd.singularValues();
    if (sv[k - 1] <= 1e-12 * sv[0]) return false;
    const Eigen::MatrixXd g_inv = g.inverse();
    const Eigen::VectorXd coeff = g_inv * point;
    if (coeff.minCoeff() <= 0.0) return false;
    double dist_cell = std::numeric_limits<double>::infinity();
    for (Index j = 0; j < k; ++j) dist_cell = std::min(dist_cell, coeff[j] / g_inv.row(j).norm());
    if (dist_cell < dist_cone - 1e-9 * std::max(1.0, dist_cone)) return false;

    SimplicialBounds b;
    b.generators = gens;
    b.coefficients = coeff;
    b.nu_min = coeff.minCoeff();
    b.sigma_min = sv[k - 1];
    b.max_gen_norm = g.colwise().norm().maxCoeff();
    b.dist_lower = b.sigma_min * b.nu_min;
    b.dist_upper = b.max_gen_norm * b.nu_min;
    found = std::move(b);
    return true;
  });
  return found;
}

}  // namespace conesel
