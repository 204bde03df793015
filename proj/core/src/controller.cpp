#include "conesel/controller.hpp"

#include "conesel/error.hpp"
#include "conesel/qp.hpp"

namespace conesel {

ConstraintSet build_constraints(const Position& x, double t, const std::vector<Zone>& zones,
                                const Position& goal, const ControlGains& gains) {
  const Eigen::Index c = kNumHard + static_cast<Eigen::Index>(zones.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, c);
  Eigen::VectorXd b(c);

  const Eigen::Vector2d e = x - goal;
  a.col(0) = 2.0 * e;
  b[0] = -gains.gamma_clf * e.squaredNorm();
  for (int k = 0; k < 2; ++k) {
    a(k, 1 + k) = 1.0;
    b[1 + k] = gains.u_max;
    a(k, 3 + k) = -1.0;
    b[3 + k] = gains.u_max;
  }

  for (std::size_t i = 0; i < zones.size(); ++i) {
    const Zone& z = zones[i];
    const Eigen::Index col = kNumHard + static_cast<Eigen::Index>(i);
    const Eigen::Vector2d d = x - z.center_at(t);
    const double h = d.squaredNorm() - z.radius * z.radius;
    a.col(col) = -2.0 * d;
    b[col] = gains.gamma_cbf * h - 2.0 * d.dot(z.velocity);
  }
  return ConstraintSet(std::move(a), std::move(b), kNumHard);
}

Input reference_input(const Position& x, const Position& goal, const ControlGains& gains) {
  return (-gains.k_ref * (x - goal)).cwiseMax(-gains.u_max).cwiseMin(gains.u_max);
}

Input control_step(const ConstraintSet& cs, const Configuration& config, const Input& u_ref) {
  const auto sys = mask(cs, config);
  const Eigen::VectorXd u = solve_min_norm_qp(u_ref, sys.normals, sys.bounds);
  return u;
}

}  // namespace conesel
