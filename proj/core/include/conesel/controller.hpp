#pragma once

#include <vector>

#include <Eigen/Core>

#include "conesel/constraints.hpp"

namespace conesel {

using Position = Eigen::Vector2d;
using Velocity = Eigen::Vector2d;
using Input = Eigen::Vector2d;

/// Circular zone to avoid; the center moves with constant velocity
/// (zero for static zones). Units: m, m/s.
struct Zone {
  Position center = Position::Zero();  // at t = 0
  Velocity velocity = Velocity::Zero();
  double radius = 1.5;

  Position center_at(double t) const { return center + velocity * t; }
  bool is_static() const { return velocity.isZero(0.0); }
};

/// Linear class-K slopes (1/s), the input box half-width (m/s) and the gain of
/// the goal-seeking reference input (1/s).
struct ControlGains {
  double gamma_cbf = 1.0;
  double gamma_clf = 0.1;
  double u_max = 1.0;
  double k_ref = 1.0;
};

/// Number of hard constraints for a planar single integrator: the CLF row and
/// the two input-box blocks.
inline constexpr int kNumHard = 1 + 2 * 2;

/// Affine input constraints at state x and time t.
///
/// Columns: [CLF | +u box (2) | -u box (2) | zones in the given order]; the
/// first kNumHard are hard. For zone i with h = |x - y|^2 - r^2:
///   static:  -2(x - y)'u <= gamma_cbf h
///   moving:  -2(x - y)'u <= gamma_cbf h - 2(x - y)'v
/// CLF: 2(x - g)'u <= -gamma_clf |x - g|^2. Box: +-u_k <= u_max.
ConstraintSet build_constraints(const Position& x, double t, const std::vector<Zone>& zones,
                                const Position& goal, const ControlGains& gains);

/// Goal-seeking reference: -k_ref (x - goal) clamped to the input box.
Input reference_input(const Position& x, const Position& goal, const ControlGains& gains);

/// Projection of u_ref onto the enforced constraints. Throws InfeasibleError
/// when the enforced set is empty, which means the selector handed over an
/// infeasible configuration.
Input control_step(const ConstraintSet& cs, const Configuration& config, const Input& u_ref);

}  // namespace conesel
