#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace conesel {

/// Affine input constraints A_i' u <= B_i, i = 0..c-1, with A stored m x c so
/// that column i is the normal of constraint i. The first `num_hard()`
/// constraints are hard and must be enforced by every configuration.
class ConstraintSet {
 public:
  ConstraintSet() = default;

  /// Throws DimensionError / NonFiniteError when the data is malformed.
  ConstraintSet(Eigen::MatrixXd normals, Eigen::VectorXd bounds, int num_hard);

  const Eigen::MatrixXd& normals() const { return normals_; }
  const Eigen::VectorXd& bounds() const { return bounds_; }
  Eigen::Index input_dim() const { return normals_.rows(); }
  Eigen::Index size() const { return bounds_.size(); }
  int num_hard() const { return num_hard_; }
  int num_soft() const { return static_cast<int>(size()) - num_hard_; }
  bool is_hard(Eigen::Index i) const { return i < num_hard_; }

 private:
  Eigen::MatrixXd normals_;
  Eigen::VectorXd bounds_;
  int num_hard_ = 0;
};

/// Which constraints are enforced (true) or disregarded (false).
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(std::vector<bool> bits) : bits_(std::move(bits)) {}

  static Configuration all_enforced(Eigen::Index size);
  /// Hard constraints only.
  static Configuration hard_only(const ConstraintSet& cs);

  Eigen::Index size() const { return static_cast<Eigen::Index>(bits_.size()); }
  bool enforced(Eigen::Index i) const { return bits_[static_cast<std::size_t>(i)]; }
  void set(Eigen::Index i, bool on) { bits_[static_cast<std::size_t>(i)] = on; }
  const std::vector<bool>& bits() const { return bits_; }

  int count_enforced() const;
  /// True when every hard index of `cs` is enforced and sizes match.
  bool respects_hard(const ConstraintSet& cs) const;
  /// Percentage of soft constraints of `cs` that are disregarded.
  double dropped_soft_pct(const ConstraintSet& cs) const;
  /// True when every constraint enforced here is also enforced in `other`.
  bool subset_of(const Configuration& other) const;

  /// Bit string such as "11010".
  std::string to_string() const;

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  std::vector<bool> bits_;
};

/// Orthonormal basis of ker(A) together with the reduced right-hand side.
struct NullspaceBasis {
  Eigen::MatrixXd basis;  // c x k
  Eigen::VectorXd reduced_bounds;  // k, basis' * B

  Eigen::Index nullity() const { return basis.cols(); }
};

/// Relative rank threshold: singular values below kRankTol * max(1, s_max)
/// count as zero.
inline constexpr double kRankTol = 1e-9;

/// Orthonormal kernel basis of the normal matrix via a full SVD.
NullspaceBasis nullspace_basis(const ConstraintSet& cs);

/// Reuses a caller-supplied kernel basis (e.g. a rotated one); only recomputes
/// the reduced bounds.
NullspaceBasis with_basis(const ConstraintSet& cs, Eigen::MatrixXd basis);

/// The enforced sub-system, keeping the original order.
struct MaskedSystem {
  Eigen::MatrixXd normals;
  Eigen::VectorXd bounds;
  std::vector<Eigen::Index> indices;
};

MaskedSystem mask(const ConstraintSet& cs, const Configuration& config);

/// Text record: a header line "m c n_hard", then A row-major (m rows of c
/// values), then the c entries of B. Whitespace separated, locale independent.
ConstraintSet read_constraint_set(std::istream& in);
void write_constraint_set(std::ostream& out, const ConstraintSet& cs);

}  // namespace conesel
