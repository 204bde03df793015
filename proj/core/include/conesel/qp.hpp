#pragma once

#include <Eigen/Core>

namespace conesel {

/// Euclidean projection of `u_ref` onto {u : normals' u <= bounds}, where
/// column i of `normals` is the normal of constraint i.
///
/// Exact active-set enumeration: every subset of at most m linearly
/// independent constraints yields a candidate (projection onto the subset's
/// affine hull); the cheapest candidate satisfying all constraints is the
/// projection. Meant for m <= 3.
///
/// Throws InfeasibleError when the polyhedron is empty and DimensionError on
/// shape mismatch or m > 3.
Eigen::VectorXd solve_min_norm_qp(const Eigen::VectorXd& u_ref, const Eigen::MatrixXd& normals,
                                  const Eigen::VectorXd& bounds);

}  // namespace conesel
