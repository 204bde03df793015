#include "conesel_test/properties.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "conesel/baselines.hpp"
#include "conesel/controller.hpp"
#include "conesel/error.hpp"
#include "conesel/feasibility.hpp"
#include "conesel/lp.hpp"
#include "conesel/qp.hpp"
#include "conesel/scenario.hpp"
#include "conesel/selection.hpp"
#include "conesel_test/generators.hpp"
#include "conesel_test/oracle.hpp"

namespace conesel::testing {

namespace {

using Eigen::Index;

class Tally {
 public:
  explicit Tally(std::string name) : start_(std::chrono::steady_clock::now()) { r_.name = std::move(name); }

  void trial() { ++r_.trials; }

  void fail(const std::string& what) {
    if (r_.violations++ == 0) r_.first_failure = "trial " + std::to_string(r_.trials) + ": " + what;
  }

  void check(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }

  PropertyResult done() {
    r_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return r_;
  }

 private:
  PropertyResult r_;
  std::chrono::steady_clock::time_point start_;
};

std::string describe(const ConstraintSet& cs) {
  std::ostringstream out;
  write_constraint_set(out, cs);
  return out.str();
}

double scale_of(const ConstraintSet& cs) { return std::max(1.0, cs.bounds().cwiseAbs().maxCoeff()); }

// nu certifies `config`: basis' nu = reduced bounds, enforced entries >= 0.
bool certificate_ok(const NullspaceBasis& nb, const Configuration& config, const Eigen::VectorXd& nu,
                    double scale) {
  if (nu.size() != config.size()) return false;
  const double tol = 1e-7 * scale;
  if (nb.nullity() > 0 && (nb.basis.transpose() * nu - nb.reduced_bounds).cwiseAbs().maxCoeff() > tol) {
    return false;
  }
  for (Index i = 0; i < nu.size(); ++i) {
    if (config.enforced(i) && nu[i] < -tol) return false;
  }
  return true;
}

bool residuals_ok(const ConstraintSet& cs, const Configuration& config, const Eigen::VectorXd& u) {
  const Eigen::VectorXd r = cs.normals().transpose() * u - cs.bounds();
  for (Index i = 0; i < cs.size(); ++i) {
    if (config.enforced(i) && r[i] > kTolFeas * std::max(1.0, std::abs(cs.bounds()[i]))) return false;
  }
  return true;
}

}  // namespace

PropertyResult prop_feasibility_oracle(int n, std::uint64_t seed) {
  Tally t("feasibility verdicts match slack-LP oracle");
  Rng rng(seed);
  for (int k = 0; k < n; ++k) {
    t.trial();
    const auto inst = random_instance(rng);
    const auto& cs = inst.cs;
    const auto nb = nullspace_basis(cs);
    const bool truth = oracle_feasible(cs);
    if (inst.engineered_infeasible && truth) t.fail("engineered-infeasible instance judged feasible by oracle");
    if (farkas_feasible(nb) != truth) {
      t.fail("farkas_feasible = " + std::to_string(!truth) + " but oracle says " + std::to_string(truth) + "\n" +
             describe(cs));
    }
    const auto all = Configuration::all_enforced(cs.size());
    const auto fc_all = feasibility_check(cs, nb, all);
    if (fc_all.feasible != truth) t.fail("fc(all-ones) disagrees with oracle\n" + describe(cs));
    if (fc_all.feasible && !certificate_ok(nb, all, fc_all.nu, scale_of(cs))) t.fail("bad all-ones certificate");

    const auto p = random_config(rng, cs);
    const bool truth_p = oracle_feasible(cs, p);
    const auto fc_p = feasibility_check(cs, nb, p);
    if (fc_p.feasible != truth_p) {
      t.fail("fc(" + p.to_string() + ") = " + std::to_string(fc_p.feasible) + ", oracle " +
             std::to_string(truth_p) + "\n" + describe(cs));
    }
    if (fc_p.feasible && !certificate_ok(nb, p, fc_p.nu, scale_of(cs))) t.fail("bad certificate for random P");
  }
  return t.done();
}

PropertyResult prop_zero_maximizer(int n, std::uint64_t seed) {
  Tally t("conic LP optimum is zero at mu = 0");
  Rng rng(seed);
  int accepted = 0;
  for (int attempt = 0; accepted < n && attempt < 1000 * n; ++attempt) {
    const auto inst = random_instance(rng);
    const auto nb = nullspace_basis(inst.cs);
    if (nb.nullity() == 0 || !oracle_feasible(inst.cs)) continue;
    ++accepted;
    t.trial();
    const auto sol = solve_conic_lp(nb);
    if (sol.status != LpStatus::Optimal) {
      t.fail(std::string("conic LP status ") + to_string(sol.status) + "\n" + describe(inst.cs));
      continue;
    }
    // mu = 0 is feasible (basis * 0 >= 0) with value 0, so it is optimal
    // exactly when the reported optimum is zero.
    t.check(std::abs(*sol.objective_value) <= kTolFeas,
            "optimum " + std::to_string(*sol.objective_value) + " is not zero");
  }
  return t.done();
}

PropertyResult prop_ica_monotone(int n, std::uint64_t seed) {
  Tally t("ICA iterates feasible and monotone");
  Rng rng(seed);
  for (int k = 0; k < n; ++k) {
    t.trial();
    const auto inst = random_instance(rng);
    const auto& cs = inst.cs;
    const auto nb = nullspace_basis(cs);
    const auto p0 = random_config(rng, cs);
    const bool p0_feasible = oracle_feasible(cs, p0);
    const auto r = iterative_constraint_addition(cs, nb, p0);
    if (r.trace.empty()) {
      t.fail("empty trace");
      continue;
    }
    t.check(r.iterations <= cs.size(), "more iterations than constraints");
    t.check(r.config == r.trace.back(), "result differs from last iterate");
    t.check(r.restarted == !p0_feasible, "restart flag disagrees with oracle verdict on P0");
    t.check(r.trace.front() == (p0_feasible ? p0 : Configuration::hard_only(cs)), "wrong starting configuration");
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
      const auto& c = r.trace[i];
      t.check(c.respects_hard(cs), "iterate clears a hard bit");
      t.check(feasibility_check(cs, nb, c).feasible, "iterate " + std::to_string(i) + " fails fc");
      t.check(oracle_feasible(cs, c), "iterate " + std::to_string(i) + " infeasible per oracle\n" + describe(cs));
      if (i > 0) t.check(r.trace[i - 1].subset_of(c), "enforced set shrank");
    }
    t.check(feasibility_check(cs, nb, r.config).disregarded_pos.empty(), "stopped with promotable constraints");
    t.check(certificate_ok(nb, r.config, r.nu, scale_of(cs)), "returned nu does not certify the result");
  }
  return t.done();
}

PropertyResult prop_distance_bounds(int n, std::uint64_t seed) {
  Tally t("sampled boundary distance within simplicial bounds");
  Rng rng(seed);
  int accepted = 0;
  for (int attempt = 0; accepted < n && attempt < 1000 * n; ++attempt) {
    const int m = uniform_int(rng, 1, 3);
    const int c = m + 2;
    Eigen::MatrixXd a(m, c);
    for (Index j = 0; j < c; ++j) {
      for (Index i = 0; i < m; ++i) a(i, j) = uniform(rng, -2.0, 2.0);
    }
    Eigen::VectorXd u0(m);
    for (Index i = 0; i < m; ++i) u0[i] = uniform(rng, -1.0, 1.0);
    Eigen::VectorXd b = a.transpose() * u0;
    for (Index i = 0; i < c; ++i) b[i] += uniform(rng, 0.05, 2.0);
    const ConstraintSet cs(a, b, 0);
    const auto nb = nullspace_basis(cs);
    if (nb.nullity() != 2) continue;
    const double d = oracle_cone_boundary_distance(nb.basis, nb.reduced_bounds);
    if (d < 1e-6) continue;  // not pointed, or not strictly interior
    ++accepted;
    t.trial();
    const auto sb = simplicial_bounds(nb);
    if (!sb) {
      t.fail("no bounds for a strictly interior point of a pointed cone\n" + describe(cs));
      continue;
    }
    t.check(sb->dist_lower >= 0.0 && sb->dist_lower <= sb->dist_upper + 1e-12, "bounds out of order");
    t.check(d >= sb->dist_lower - 1e-6 && d <= sb->dist_upper + 1e-6,
            "distance " + std::to_string(d) + " outside [" + std::to_string(sb->dist_lower) + ", " +
                std::to_string(sb->dist_upper) + "]\n" + describe(cs));
  }
  return t.done();
}

PropertyResult prop_init_feasible(int n, std::uint64_t seed) {
  Tally t("init_config is feasible");
  Rng rng(seed);
  for (int k = 0; k < n; ++k) {
    t.trial();
    const auto cs = random_instance(rng).cs;
    const auto p = init_config(cs);
    bool bits_ok = p.size() == cs.size();
    for (Index i = 0; bits_ok && i < cs.size(); ++i) {
      bits_ok = p.enforced(i) == (cs.is_hard(i) || cs.bounds()[i] >= 0.0);
    }
    t.check(bits_ok, "wrong bits");
    t.check(feasibility_check(cs, p).feasible, "fc rejects init_config\n" + describe(cs));
    t.check(oracle_feasible(cs, p), "oracle rejects init_config\n" + describe(cs));
  }
  return t.done();
}

namespace {

// LpProblem -> standard form for the oracle. Columns: one per lower-bounded
// variable (shifted), two per free variable, one slack per inequality.
OracleLp oracle_solve(const LpProblem& lp) {
  const Index n = lp.num_vars();
  const Index n_eq = lp.eq_rhs.size();
  const Index n_in = lp.ineq_rhs.size();
  auto bounded = [&](Index j) { return lp.var_lower.size() && std::isfinite(lp.var_lower[j]); };
  Index cols = n_in;
  for (Index j = 0; j < n; ++j) cols += bounded(j) ? 1 : 2;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_eq + n_in, cols);
  Eigen::VectorXd b(n_eq + n_in);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(cols);
  b << lp.eq_rhs, lp.ineq_rhs;
  Index col = 0;
  double shift = 0.0;
  for (Index j = 0; j < n; ++j) {
    Eigen::VectorXd column(n_eq + n_in);
    column << lp.eq_lhs.col(j), lp.ineq_lhs.col(j);
    a.col(col) = column;
    c[col++] = lp.objective[j];
    if (bounded(j)) {
      b -= lp.var_lower[j] * column;
      shift += lp.objective[j] * lp.var_lower[j];
    } else {
      a.col(col) = -column;
      c[col++] = -lp.objective[j];
    }
  }
  for (Index i = 0; i < n_in; ++i) a(n_eq + i, col++) = 1.0;
  auto out = oracle_standard_lp(a, b, c);
  out.objective += shift;
  return out;
}

}  // namespace

PropertyResult prop_lp_trichotomy(int n, std::uint64_t seed) {
  Tally t("LP status matches an independent simplex");
  Rng rng(seed);
  for (int k = 0; k < n; ++k) {
    t.trial();
    const auto lp = random_lp(rng);
    const auto ours = solve_lp(lp);
    const auto ref = oracle_solve(lp);
    const bool same = (ours.status == LpStatus::Optimal && ref.status == OracleStatus::Optimal) ||
                      (ours.status == LpStatus::Infeasible && ref.status == OracleStatus::Infeasible) ||
                      (ours.status == LpStatus::Unbounded && ref.status == OracleStatus::Unbounded);
    if (!same) {
      t.fail(std::string("status ") + to_string(ours.status) + " vs oracle " +
             std::to_string(static_cast<int>(ref.status)));
      continue;
    }
    const double tol = 1e-7;
    if (ours.status == LpStatus::Optimal) {
      const auto& x = *ours.x;
      t.check(std::abs(*ours.objective_value - ref.objective) <= 1e-6 * (1.0 + std::abs(ref.objective)),
              "objective differs from oracle");
      if (lp.eq_rhs.size()) t.check((lp.eq_lhs * x - lp.eq_rhs).cwiseAbs().maxCoeff() <= tol, "equality residual");
      if (lp.ineq_rhs.size()) t.check((lp.ineq_lhs * x - lp.ineq_rhs).maxCoeff() <= tol, "inequality residual");
      for (Index j = 0; j < x.size(); ++j) t.check(x[j] >= lp.var_lower[j] - tol, "bound residual");
      t.check((ours.ineq_multipliers->array() >= -tol).all(), "negative multiplier");
    } else if (ours.status == LpStatus::Unbounded) {
      const auto& d = *ours.unbounded_ray;
      t.check(lp.objective.dot(d) < 0.0, "ray does not decrease the objective");
      if (lp.eq_rhs.size()) t.check((lp.eq_lhs * d).cwiseAbs().maxCoeff() <= tol, "ray leaves equalities");
      if (lp.ineq_rhs.size()) t.check((lp.ineq_lhs * d).maxCoeff() <= tol, "ray leaves inequalities");
      for (Index j = 0; j < d.size(); ++j) {
        if (std::isfinite(lp.var_lower[j])) t.check(d[j] >= -tol, "ray leaves bounds");
      }
    }
  }
  return t.done();
}

PropertyResult prop_qp_optimality(int n, std::uint64_t seed) {
  Tally t("QP projection feasible and locally optimal");
  Rng rng(seed);
  std::normal_distribution<double> normal;
  for (int k = 0; k < n; ++k) {
    t.trial();
    InstanceOptions o;
    o.max_m = 3;
    o.min_c = 1;
    o.max_c = 8;
    o.max_hard = 0;
    const bool infeasible = uniform(rng, 0.0, 1.0) < 0.2;
    o.infeasible_fraction = infeasible ? 1.0 : 0.0;
    o.min_c = infeasible ? 2 : 1;
    const ConstraintSet cs = infeasible ? random_instance(rng, o).cs : compatible_instance(rng, o);
    const Index m = cs.input_dim();
    Eigen::VectorXd u_ref(m);
    for (Index i = 0; i < m; ++i) u_ref[i] = uniform(rng, -3.0, 3.0);

    Eigen::VectorXd u;
    try {
      u = solve_min_norm_qp(u_ref, cs.normals(), cs.bounds());
    } catch (const InfeasibleError&) {
      t.check(!oracle_feasible(cs), "QP reported infeasible on a feasible set\n" + describe(cs));
      continue;
    }
    if (!oracle_feasible(cs)) {
      t.fail("QP returned a point for an infeasible set");
      continue;
    }
    const auto all = Configuration::all_enforced(cs.size());
    t.check(residuals_ok(cs, all, u), "QP point violates a constraint");
    const double cost = (u - u_ref).squaredNorm();
    for (int s = 0; s < 100; ++s) {
      Eigen::VectorXd dir(m);
      for (Index i = 0; i < m; ++i) dir[i] = normal(rng);
      const Eigen::VectorXd v = u + uniform(rng, 0.0, 1e-4) * dir.normalized();
      if (((cs.normals().transpose() * v - cs.bounds()).array() <= 0.0).all()) {
        t.check((v - u_ref).squaredNorm() >= cost - 1e-12, "a nearby feasible point is cheaper");
      }
    }
    if (m == 2) {
      const Eigen::Vector2d g = oracle_qp_grid(u_ref, cs.normals(), cs.bounds(), 1e-2, 8.0);
      if (!g.hasNaN()) t.check((g - u_ref).squaredNorm() >= cost - 1e-9, "a grid point is cheaper");
    }
  }
  return t.done();
}

PropertyResult prop_basis_invariance(int n, std::uint64_t seed) {
  Tally t("verdicts invariant under kernel-basis rotation");
  Rng rng(seed);
  for (int k = 0; k < n; ++k) {
    const auto cs = random_instance(rng).cs;
    const auto nb = nullspace_basis(cs);
    if (nb.nullity() == 0) continue;
    t.trial();
    const auto rotated = with_basis(cs, nb.basis * random_orthogonal(rng, nb.nullity()));
    const bool f = farkas_feasible(nb);
    t.check(f == farkas_feasible(rotated), "farkas verdict changed");
    const auto p = random_config(rng, cs);
    t.check(feasibility_check(cs, nb, p).feasible == feasibility_check(cs, rotated, p).feasible,
            "fc verdict changed");
    if (f) {
      const double a = polar_components(cs, nb).objective;
      const double b = polar_components(cs, rotated).objective;
      t.check(std::abs(a - b) <= 1e-7 * (1.0 + std::abs(a)), "polar optimum changed");
    }
  }
  return t.done();
}

PropertyResult prop_lcs_feasible(int n, std::uint64_t seed) {
  Tally t("LCS output feasible for any input");
  Rng rng(seed);
  for (int k = 0; k < n; ++k) {
    t.trial();
    const auto cs = random_instance(rng).cs;
    const auto nb = nullspace_basis(cs);
    const auto last = iterative_constraint_addition(cs, nb, random_config(rng, cs));
    const auto current = random_config(rng, cs);
    const int depth = uniform_int(rng, 1, static_cast<int>(cs.size()));
    const auto r = local_configuration_search(cs, nb, current, last.config, last.nu, depth);
    t.check(r.config.respects_hard(cs), "hard bit cleared");
    t.check(oracle_feasible(cs, r.config), "LCS output infeasible per oracle\n" + describe(cs));
    t.check(certificate_ok(nb, r.config, r.nu, scale_of(cs)), "returned nu does not certify the result");
    if (oracle_feasible(cs, current)) {
      t.check(r.branch == LcsBranch::Feasible, "feasible input took the infeasible branch");
      t.check(current.subset_of(r.config), "feasible branch dropped a constraint");
    }
  }
  return t.done();
}

PropertyResult prop_lcs_vs_ica(int n, std::uint64_t seed) {
  Tally t("LCS (D = c) from hard-only keeps at least as many as ICA");
  Rng rng(seed);
  for (int k = 0; k < n; ++k) {
    t.trial();
    const auto cs = random_instance(rng).cs;
    const auto nb = nullspace_basis(cs);
    const auto hard = Configuration::hard_only(cs);
    const auto ica = iterative_constraint_addition(cs, nb, hard);
    const auto cert = feasibility_check(cs, nb, hard);
    const auto r = local_configuration_search(cs, nb, hard, hard, cert.nu, static_cast<int>(cs.size()));
    t.check(r.config.count_enforced() >= ica.config.count_enforced(), "LCS kept fewer constraints than ICA");
  }
  return t.done();
}

PropertyResult prop_slack_agrees_with_fc(int n, std::uint64_t seed) {
  Tally t("slack-LP verdict agrees with fc");
  Rng rng(seed);
  for (int k = 0; k < n; ++k) {
    t.trial();
    const auto cs = random_instance(rng).cs;
    const auto p = random_config(rng, cs);
    const auto s = slack_feasible(cs, p);
    t.check(s.feasible == feasibility_check(cs, p).feasible, "verdicts differ\n" + describe(cs));
    t.check((s.slacks.array() >= 0.0).all(), "negative slack");
    t.check(s.feasible == (s.total_slack <= kTolFeas), "feasible flag inconsistent with total");
  }
  return t.done();
}

PropertyResult prop_baselines_feasible(int n, std::uint64_t seed) {
  Tally t("baselines return feasible configurations");
  Rng rng(seed);
  for (int k = 0; k < n; ++k) {
    t.trial();
    const auto cs = random_instance(rng).cs;
    const auto p1 = baseline1_select(cs);
    t.check(p1.respects_hard(cs), "B1 cleared a hard bit");
    t.check(feasibility_check(cs, p1).feasible, "B1 output fails fc\n" + describe(cs));
    const auto p2 = baseline2_select(cs, random_config(rng, cs), Eigen::VectorXd());
    t.check(p2.config.respects_hard(cs), "B2 cleared a hard bit");
    t.check(feasibility_check(cs, p2.config).feasible, "B2 output fails fc\n" + describe(cs));
  }
  return t.done();
}

PropertyResult prop_baseline2_streaks(int n, std::uint64_t seed) {
  Tally t("B2 feasible along 10-step streaks");
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 0.2);
  for (int k = 0; k < n; ++k) {
    t.trial();
    const auto base = random_instance(rng).cs;
    Eigen::VectorXd b = base.bounds();
    auto prev = Configuration::all_enforced(base.size());
    Eigen::VectorXd lm;
    for (int step = 0; step < 10; ++step) {
      for (Index i = base.num_hard(); i < b.size(); ++i) b[i] += normal(rng);
      const ConstraintSet cs(base.normals(), b, base.num_hard());
      auto r = baseline2_select(cs, prev, lm);
      t.check(r.config.respects_hard(cs), "hard bit cleared");
      t.check(feasibility_check(cs, r.config).feasible, "streak step infeasible");
      prev = std::move(r.config);
      lm = std::move(r.multipliers);
    }
  }
  return t.done();
}

PropertyResult prop_slack_permutation(int n, std::uint64_t seed) {
  Tally t("total slack invariant under soft reordering");
  Rng rng(seed);
  for (int k = 0; k < n; ++k) {
    t.trial();
    const auto cs = random_instance(rng).cs;
    std::vector<Index> order(static_cast<std::size_t>(cs.size()));
    std::iota(order.begin(), order.end(), Index{0});
    std::shuffle(order.begin() + cs.num_hard(), order.end(), rng);
    Eigen::MatrixXd a(cs.input_dim(), cs.size());
    Eigen::VectorXd b(cs.size());
    for (Index i = 0; i < cs.size(); ++i) {
      a.col(i) = cs.normals().col(order[static_cast<std::size_t>(i)]);
      b[i] = cs.bounds()[order[static_cast<std::size_t>(i)]];
    }
    const ConstraintSet shuffled(a, b, cs.num_hard());
    const auto all = Configuration::all_enforced(cs.size());
    const double s1 = slack_feasible(cs, all).total_slack;
    const double s2 = slack_feasible(shuffled, all).total_slack;
    t.check(std::abs(s1 - s2) <= 1e-7 * (1.0 + s1), "total slack changed");
  }
  return t.done();
}

namespace {

std::vector<Zone> random_zones(Rng& rng, int count) {
  std::vector<Zone> zones;
  for (int i = 0; i < count; ++i) {
    Zone z;
    z.center = Position(uniform(rng, -10.0, 10.0), uniform(rng, -10.0, 10.0));
    if (uniform(rng, 0.0, 1.0) < 0.5) {
      const double a = uniform(rng, 0.0, 6.283185307179586);
      z.velocity = 2.0 * Velocity(std::cos(a), std::sin(a));
    }
    zones.push_back(z);
  }
  return zones;
}

}  // namespace

PropertyResult prop_controller_residuals(int n, std::uint64_t seed) {
  Tally t("controller output satisfies enforced rows");
  Rng rng(seed);
  const ControlGains gains;
  for (int k = 0; k < n; ++k) {
    t.trial();
    const Position x(uniform(rng, -10.0, 10.0), uniform(rng, -10.0, 10.0));
    const Position goal(uniform(rng, -10.0, 10.0), uniform(rng, -10.0, 10.0));
    const auto zones = random_zones(rng, uniform_int(rng, 0, 12));
    const auto cs = build_constraints(x, uniform(rng, 0.0, 30.0), zones, goal, gains);
    const auto p = iterative_constraint_addition(cs, random_config(rng, cs)).config;
    const Input u_ref(uniform(rng, -3.0, 3.0), uniform(rng, -3.0, 3.0));
    const Input u = control_step(cs, p, u_ref);
    t.check(residuals_ok(cs, p, u), "enforced residual above tolerance");
  }
  return t.done();
}

PropertyResult prop_cbf_sign(int n, std::uint64_t seed) {
  Tally t("zone rows keep h(x+) >= (1 - gamma dt) h(x)");
  Rng rng(seed);
  const ControlGains gains;
  const double dt = 1e-4;
  for (int k = 0; k < n; ++k) {
    t.trial();
    auto zones = random_zones(rng, 1);
    const Zone& z = zones.front();
    Position x;
    do {
      x = Position(uniform(rng, -10.0, 10.0), uniform(rng, -10.0, 10.0));
    } while ((x - z.center).norm() <= z.radius);
    const auto cs = build_constraints(x, 0.0, zones, x, gains);
    // Enforce only the zone row; project a random reference onto it.
    std::vector<bool> bits(static_cast<std::size_t>(cs.size()), false);
    bits.back() = true;
    const Input u_ref(uniform(rng, -3.0, 3.0), uniform(rng, -3.0, 3.0));
    const Input u = control_step(cs, Configuration(bits), u_ref);
    auto h = [&](const Position& p, double time) {
      return (p - z.center_at(time)).squaredNorm() - z.radius * z.radius;
    };
    const double h0 = h(x, 0.0);
    const double h1 = h(x + dt * u, dt);
    t.check(h1 >= (1.0 - gains.gamma_cbf * dt) * h0 - 1e-9 * (1.0 + h0),
            "barrier decays faster than allowed (moving = " + std::to_string(!z.is_static()) + ")");
  }
  return t.done();
}

PropertyResult prop_scenario_invariants(int n, std::uint64_t seed) {
  Tally t("sampled scenarios satisfy their invariants");
  for (int k = 0; k < n; ++k) {
    t.trial();
    const auto sc = sample_scenario(25, 25, seed + static_cast<std::uint64_t>(k));
    const auto bad = scenario_violations(sc);
    if (!bad.empty()) t.fail("seed " + std::to_string(sc.seed) + ": " + bad.front());
    const auto again = sample_scenario(25, 25, seed + static_cast<std::uint64_t>(k));
    t.check(again.x0 == sc.x0 && again.goal == sc.goal && again.zones.size() == sc.zones.size(),
            "sampling is not deterministic");
  }
  return t.done();
}

std::vector<PropertyResult> run_all_properties(double scale, std::uint64_t seed) {
  auto n = [scale](int base) { return std::max(1, static_cast<int>(std::lround(base * scale))); };
  return {
      prop_feasibility_oracle(n(10000), seed + 1),
      prop_zero_maximizer(n(200), seed + 2),
      prop_ica_monotone(n(2000), seed + 3),
      prop_distance_bounds(n(200), seed + 4),
      prop_init_feasible(n(1000), seed + 5),
      prop_lp_trichotomy(n(10000), seed + 6),
      prop_qp_optimality(n(1000), seed + 7),
      prop_basis_invariance(n(500), seed + 8),
      prop_lcs_feasible(n(2000), seed + 9),
      prop_lcs_vs_ica(n(500), seed + 10),
      prop_slack_agrees_with_fc(n(1000), seed + 11),
      prop_baselines_feasible(n(500), seed + 12),
      prop_baseline2_streaks(n(500), seed + 13),
      prop_slack_permutation(n(500), seed + 14),
      prop_controller_residuals(n(1000), seed + 15),
      prop_cbf_sign(n(100), seed + 16),
      prop_scenario_invariants(n(100), seed + 17),
  };
}

}  // namespace conesel::testing
