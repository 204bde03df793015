#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "conesel/controller.hpp"

namespace conesel {

/// A navigation world: zones (static ones first), start, goal, horizon.
struct Scenario {
  std::uint64_t seed = 0;
  int n_static = 0;
  int n_dynamic = 0;
  std::vector<Zone> zones;
  Position x0 = Position::Zero();
  Position goal = Position::Zero();
  double horizon = 30.0;  // s
  double dt = 0.1;        // s
  ControlGains gains;
};

struct SamplingOptions {
  double half_width = 10.0;       // positions uniform in [-w, w]^2
  double zone_radius = 1.5;
  double min_separation = 7.0;    // |x0 - goal| lower bound
  double dynamic_speed = 2.0;
  double horizon = 30.0;
  double dt = 0.1;
  ControlGains gains;
  int max_attempts = 10000;
};

/// Rejection-samples a scenario whose invariants all hold (see
/// scenario_violations). Deterministic per seed. Throws
/// SamplingExhaustedError after `max_attempts` rejected draws.
Scenario sample_scenario(int n_static, int n_dynamic, std::uint64_t seed, const SamplingOptions& options = {});

/// Human-readable list of broken invariants; empty when the scenario is valid:
/// start and goal at least `min_separation` apart, both outside every static
/// zone, start outside every zone, moving zones at `dynamic_speed`, and the
/// full constraint set feasible at (x0, t = 0).
std::vector<std::string> scenario_violations(const Scenario& sc, const SamplingOptions& options = {});

/// Flat "key = value" record that replays an episode exactly.
void write_scenario(std::ostream& out, const Scenario& sc);
Scenario read_scenario(std::istream& in);

}  // namespace conesel
