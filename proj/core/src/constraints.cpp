#include "conesel/constraints.hpp"

#include <algorithm>
#include <string>

#include <Eigen/SVD>

#include "conesel/error.hpp"

namespace conesel {

using Eigen::Index;

ConstraintSet::ConstraintSet(Eigen::MatrixXd normals, Eigen::VectorXd bounds, int num_hard)
    : normals_(std::move(normals)), bounds_(std::move(bounds)), num_hard_(num_hard) {
  if (bounds_.size() < 1) throw DimensionError("constraint set needs at least one constraint");
  if (normals_.cols() != bounds_.size()) {
    throw DimensionError("normal matrix has " + std::to_string(normals_.cols()) + " columns but " +
                         std::to_string(bounds_.size()) + " bounds");
  }
  if (normals_.rows() < 1) throw DimensionError("input dimension must be positive");
  if (num_hard_ < 0 || num_hard_ > bounds_.size()) {
    throw DimensionError("num_hard " + std::to_string(num_hard_) + " out of range");
  }
  if (!normals_.allFinite() || !bounds_.allFinite()) {
    throw NonFiniteError("constraint set contains non-finite entries");
  }
}

Configuration Configuration::all_enforced(Index size) {
  return Configuration(std::vector<bool>(static_cast<std::size_t>(size), true));
}

Configuration Configuration::hard_only(const ConstraintSet& cs) {
  std::vector<bool> bits(static_cast<std::size_t>(cs.size()), false);
  std::fill_n(bits.begin(), cs.num_hard(), true);
  return Configuration(std::move(bits));
}

int Configuration::count_enforced() const {
  return static_cast<int>(std::count(bits_.begin(), bits_.end(), true));
}

bool Configuration::respects_hard(const ConstraintSet& cs) const {
  if (size() != cs.size()) return false;
  for (int i = 0; i < cs.num_hard(); ++i) {
    if (!bits_[static_cast<std::size_t>(i)]) return false;
  }
  return true;
}

double Configuration::dropped_soft_pct(const ConstraintSet& cs) const {
  if (cs.num_soft() == 0) return 0.0;
  int dropped = 0;
  for (Index i = cs.num_hard(); i < cs.size(); ++i) dropped += enforced(i) ? 0 : 1;
  return 100.0 * dropped / cs.num_soft();
}

bool Configuration::subset_of(const Configuration& other) const {
  if (size() != other.size()) return false;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] && !other.bits_[i]) return false;
  }
  return true;
}

std::string Configuration::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (bool b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

NullspaceBasis nullspace_basis(const ConstraintSet& cs) {
  const Eigen::MatrixXd& a = cs.normals();
  const Index c = cs.size();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double threshold = kRankTol * std::max(1.0, sv.size() > 0 ? sv[0] : 0.0);
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i) rank += sv[i] > threshold ? 1 : 0;

  NullspaceBasis out;
  out.basis = svd.matrixV().rightCols(c - rank);
  // Sign convention: the largest-magnitude entry of each column is positive.
  for (Index j = 0; j < out.basis.cols(); ++j) {
    Index at = 0;
    out.basis.col(j).cwiseAbs().maxCoeff(&at);
    if (out.basis(at, j) < 0.0) out.basis.col(j) *= -1.0;
  }
  out.reduced_bounds = out.basis.transpose() * cs.bounds();
  return out;
}

NullspaceBasis with_basis(const ConstraintSet& cs, Eigen::MatrixXd basis) {
  if (basis.rows() != cs.size()) {
    throw DimensionError("kernel basis has " + std::to_string(basis.rows()) + " rows, expected " +
                         std::to_string(cs.size()));
  }
  NullspaceBasis out;
  out.basis = std::move(basis);
  out.reduced_bounds = out.basis.transpose() * cs.bounds();
  return out;
}

MaskedSystem mask(const ConstraintSet& cs, const Configuration& config) {
  if (config.size() != cs.size()) {
    throw DimensionError("configuration has " + std::to_string(config.size()) + " bits for " +
                         std::to_string(cs.size()) + " constraints");
  }
  MaskedSystem out;
  for (Index i = 0; i < cs.size(); ++i) {
    if (config.enforced(i)) out.indices.push_back(i);
  }
  const Index n = static_cast<Index>(out.indices.size());
  out.normals.resize(cs.input_dim(), n);
  out.bounds.resize(n);
  for (Index j = 0; j < n; ++j) {
    out.normals.col(j) = cs.normals().col(out.indices[static_cast<std::size_t>(j)]);
    out.bounds[j] = cs.bounds()[out.indices[static_cast<std::size_t>(j)]];
  }
  return out;
}

}  // namespace conesel
