#include "conesel/selection.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "conesel/error.hpp"

namespace conesel {

using Eigen::Index;

Configuration init_config(const ConstraintSet& cs) {
  std::vector<bool> bits(static_cast<std::size_t>(cs.size()));
  for (Index i = 0; i < cs.size(); ++i) {
    bits[static_cast<std::size_t>(i)] = cs.is_hard(i) || cs.bounds()[i] >= 0.0;
  }
  return Configuration(std::move(bits));
}

namespace {

void require_hard(const ConstraintSet& cs, const Configuration& config, const char* what) {
  if (!config.respects_hard(cs)) {
    throw Error(std::string(what) + ": configuration " + config.to_string() +
                " does not enforce every hard constraint");
  }
}

// ICA from an already-checked feasible configuration.
IcaResult ica_from(const ConstraintSet& cs, const NullspaceBasis& nb, Configuration config,
                   FeasibilityCertificate cert) {
  IcaResult out;
  out.trace.push_back(config);
  while (!cert.disregarded_pos.empty() && out.iterations < cs.size()) {
    Configuration next = config;
    for (Index j : cert.disregarded_pos) next.set(j, true);
    auto next_cert = feasibility_check(cs, nb, next);
    // Cannot happen in exact arithmetic; stop on the last certified one.
    if (!next_cert.feasible) break;
    config = std::move(next);
    cert = std::move(next_cert);
    ++out.iterations;
    out.trace.push_back(config);
  }
  out.config = std::move(config);
  out.nu = std::move(cert.nu);
  return out;
}

IcaResult ica_hard_only(const ConstraintSet& cs, const NullspaceBasis& nb) {
  auto hard = Configuration::hard_only(cs);
  auto cert = feasibility_check(cs, nb, hard);
  if (!cert.feasible) {
    throw HardInfeasibleError("hard constraints alone are infeasible (" + std::to_string(cs.num_hard()) +
                              " hard of " + std::to_string(cs.size()) + ")");
  }
  auto out = ica_from(cs, nb, std::move(hard), std::move(cert));
  out.restarted = true;
  return out;
}

// Indices sorted by `key` (ascending or descending), ties by lower index.
std::vector<Index> ranked(std::vector<Index> idx, const Eigen::VectorXd& key, bool descending) {
  std::stable_sort(idx.begin(), idx.end(), [&](Index a, Index b) {
    const double ka = key.size() ? key[a] : 0.0;
    const double kb = key.size() ? key[b] : 0.0;
    return descending ? ka > kb : ka < kb;
  });
  return idx;
}

}  // namespace

IcaResult iterative_constraint_addition(const ConstraintSet& cs, const Configuration& initial) {
  return iterative_constraint_addition(cs, nullspace_basis(cs), initial);
}

IcaResult iterative_constraint_addition(const ConstraintSet& cs, const NullspaceBasis& nb,
                                        const Configuration& initial) {
  require_hard(cs, initial, "iterative_constraint_addition");
  auto cert = feasibility_check(cs, nb, initial);
  if (!cert.feasible) return ica_hard_only(cs, nb);
  return ica_from(cs, nb, initial, std::move(cert));
}

LcsResult local_configuration_search(const ConstraintSet& cs, const Configuration& current,
                                     const Configuration& last_feasible, const Eigen::VectorXd& nu_prev,
                                     int depth) {
  return local_configuration_search(cs, nullspace_basis(cs), current, last_feasible, nu_prev, depth);
}

LcsResult local_configuration_search(const ConstraintSet& cs, const NullspaceBasis& nb,
                                     const Configuration& current, const Configuration& last_feasible,
                                     const Eigen::VectorXd& nu_prev, int depth) {
  if (depth < 1) throw Error("local_configuration_search: depth must be >= 1");
  require_hard(cs, current, "local_configuration_search");
  require_hard(cs, last_feasible, "local_configuration_search (last feasible)");
  if (nu_prev.size() != 0 && nu_prev.size() != cs.size()) {
    throw DimensionError("local_configuration_search: nu_prev has " + std::to_string(nu_prev.size()) +
                         " entries for " + std::to_string(cs.size()) + " constraints");
  }

  LcsResult out;
  auto cert = feasibility_check(cs, nb, current);
  out.checks = 1;

  if (cert.feasible) {
    auto ica = ica_from(cs, nb, current, std::move(cert));
    out.checks += ica.iterations;
    Configuration trial = std::move(ica.config);
    Eigen::VectorXd nu = std::move(ica.nu);
    for (int round = 0; round < depth; ++round) {
      std::vector<Index> disregarded;
      for (Index i = 0; i < cs.size(); ++i) {
        if (!trial.enforced(i)) disregarded.push_back(i);
      }
      bool added = false;
      for (Index j : ranked(std::move(disregarded), nu, true)) {
        trial.set(j, true);
        auto t = feasibility_check(cs, nb, trial);
        ++out.checks;
        if (t.feasible) {
          nu = std::move(t.nu);
          added = true;
        } else {
          trial.set(j, false);
        }
      }
      // A constraint rejected this round is rejected against a subset of
      // every later configuration, so later rounds cannot add anything.
      if (!added) break;
    }
    out.config = std::move(trial);
    out.nu = std::move(nu);
    out.branch = LcsBranch::Feasible;
    return out;
  }

  Configuration trial = current;
  Eigen::VectorXd ranking = nu_prev;
  for (int round = 0; round < depth; ++round) {
    std::vector<Index> enforced_soft;
    for (Index i = cs.num_hard(); i < cs.size(); ++i) {
      if (trial.enforced(i)) enforced_soft.push_back(i);
    }
    for (Index j : ranked(std::move(enforced_soft), ranking, false)) {
      trial.set(j, false);
      auto t = feasibility_check(cs, nb, trial);
      ++out.checks;
      if (t.feasible) {
        out.config = std::move(trial);
        out.nu = std::move(t.nu);
        out.branch = LcsBranch::DropSucceeded;
        return out;
      }
    }
  }

  auto ica = ica_hard_only(cs, nb);
  out.checks += ica.iterations + 1;
  out.config = std::move(ica.config);
  out.nu = std::move(ica.nu);
  out.branch = LcsBranch::FallbackToIca;
  return out;
}

}  // namespace conesel
