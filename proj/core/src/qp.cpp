#include "conesel/qp.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "conesel/error.hpp"

namespace conesel {

namespace {

using Eigen::Index;

constexpr double kQpTol = 1e-8;
constexpr double kRankTol = 1e-10;

// Stack-allocated up to the largest supported input dimension.
using SmallMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 3, 3>;
using SmallVec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 3, 1>;

class Enumerator {
 public:
  Enumerator(const Eigen::VectorXd& u_ref, const Eigen::MatrixXd& normals, const Eigen::VectorXd& bounds)
      : u_ref_(u_ref), normals_(normals), bounds_(bounds), norms_(normals.colwise().norm().transpose()) {}

  std::optional<Eigen::VectorXd> solve() {
    std::vector<Index> active;
    visit(active, 0);
    return best_;
  }

 private:
  void visit(std::vector<Index>& active, Index start) {
    consider(active);
    if (static_cast<Index>(active.size()) == u_ref_.size()) return;
    for (Index i = start; i < normals_.cols(); ++i) {
      active.push_back(i);
      visit(active, i + 1);
      active.pop_back();
    }
  }

  void consider(const std::vector<Index>& active) {
    const Index s = static_cast<Index>(active.size());
    SmallVec u = u_ref_;
    if (s > 0) {
      SmallMat as(u_ref_.size(), s);
      SmallVec bs(s);
      for (Index j = 0; j < s; ++j) {
        as.col(j) = normals_.col(active[static_cast<std::size_t>(j)]);
        bs[j] = bounds_[active[static_cast<std::size_t>(j)]];
      }
      Eigen::ColPivHouseholderQR<SmallMat> qr(as);
      qr.setThreshold(kRankTol);
      if (qr.rank() < s) return;
      const SmallMat gram = as.transpose() * as;
      const SmallVec lambda = gram.ldlt().solve(as.transpose() * u_ref_ - bs);
      u -= as * lambda;
    }
    const double cost = (u - u_ref_).squaredNorm();
    if (best_ && cost >= best_cost_) return;
    for (Index i = 0; i < normals_.cols(); ++i) {
      const double slack = bounds_[i] - normals_.col(i).dot(u);
      const double tol = kQpTol * (1.0 + std::abs(bounds_[i]) + norms_[i] * (1.0 + u.norm()));
      if (slack < -tol) return;
    }
    best_ = Eigen::VectorXd(u);
    best_cost_ = cost;
  }

  const Eigen::VectorXd& u_ref_;
  const Eigen::MatrixXd& normals_;
  const Eigen::VectorXd& bounds_;
  Eigen::VectorXd norms_;
  std::optional<Eigen::VectorXd> best_;
  double best_cost_ = std::numeric_limits<double>::infinity();
};

}  // namespace

Eigen::VectorXd solve_min_norm_qp(const Eigen::VectorXd& u_ref, const Eigen::MatrixXd& normals,
                                  const Eigen::VectorXd& bounds) {
  const Index m = u_ref.size();
  if (m < 1 || m > 3) {
    throw DimensionError("solve_min_norm_qp supports input dimension 1..3, got " + std::to_string(m));
  }
  if (normals.cols() != bounds.size() || (normals.cols() > 0 && normals.rows() != m)) {
    throw DimensionError("solve_min_norm_qp: normals must be " + std::to_string(m) + "x" +
                         std::to_string(bounds.size()));
  }
  if (!u_ref.allFinite() || !normals.allFinite() || !bounds.allFinite()) {
    throw NonFiniteError("solve_min_norm_qp: non-finite input");
  }
  auto u = Enumerator(u_ref, normals, bounds).solve();
  if (!u) throw InfeasibleError("solve_min_norm_qp: constraint polyhedron is empty");
  return *u;
}

}  // namespace conesel
