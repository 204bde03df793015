#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace conesel::testing {

struct PropertyResult {
  std::string name;
  long trials = 0;
  long violations = 0;
  std::string first_failure;
  double seconds = 0.0;

  bool ok() const { return trials > 0 && violations == 0; }
};

// Randomized property suites. Each runs `n` trials from `seed` and counts
// violations; the first failure is kept for diagnostics.

/// farkas_feasible and fc (all-ones and a random hard-respecting P) against
/// the slack-LP oracle; certificates are checked by substitution.
PropertyResult prop_feasibility_oracle(int n, std::uint64_t seed);
/// The conic LP over the kernel basis is optimal at 0 on feasible sets.
PropertyResult prop_zero_maximizer(int n, std::uint64_t seed);
/// Every ICA iterate is feasible, enforced sets only grow, iterations <= c.
PropertyResult prop_ica_monotone(int n, std::uint64_t seed);
/// Sampled boundary distance of random nullity-2 cones lies within the
/// simplicial bounds.
PropertyResult prop_distance_bounds(int n, std::uint64_t seed);
/// init_config output is feasible.
PropertyResult prop_init_feasible(int n, std::uint64_t seed);

PropertyResult prop_lp_trichotomy(int n, std::uint64_t seed);
PropertyResult prop_qp_optimality(int n, std::uint64_t seed);
PropertyResult prop_basis_invariance(int n, std::uint64_t seed);
PropertyResult prop_lcs_feasible(int n, std::uint64_t seed);
PropertyResult prop_lcs_vs_ica(int n, std::uint64_t seed);
PropertyResult prop_slack_agrees_with_fc(int n, std::uint64_t seed);
PropertyResult prop_baselines_feasible(int n, std::uint64_t seed);
PropertyResult prop_baseline2_streaks(int n, std::uint64_t seed);
PropertyResult prop_slack_permutation(int n, std::uint64_t seed);
PropertyResult prop_controller_residuals(int n, std::uint64_t seed);
PropertyResult prop_cbf_sign(int n, std::uint64_t seed);
PropertyResult prop_scenario_invariants(int n, std::uint64_t seed);

/// Every suite above; `scale` multiplies the default trial counts.
std::vector<PropertyResult> run_all_properties(double scale, std::uint64_t seed);

}  // namespace conesel::testing
