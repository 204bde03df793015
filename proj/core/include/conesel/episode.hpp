#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "conesel/constraints.hpp"
#include "conesel/controller.hpp"
#include "conesel/scenario.hpp"

namespace conesel {

enum class SelectorKind { Ica, Lcs, Baseline1, Baseline2 };

struct SelectorSpec {
  SelectorKind kind = SelectorKind::Ica;
  int depth = 1;  // LCS only

  /// "ICA", "LCS<d>", "B1", "B2".
  std::string name() const;
  /// Inverse of name(); throws Error on anything else.
  static SelectorSpec parse(std::string_view text);
};

/// Stateful configuration selector. `select` is called with the constraint
/// set of the current step and the configuration in use so far and returns
/// the configuration to hand to the controller.
class Selector {
 public:
  virtual ~Selector() = default;
  virtual Configuration select(const ConstraintSet& cs, const Configuration& current) = 0;
};

std::unique_ptr<Selector> make_selector(const SelectorSpec& spec);

struct EpisodeOptions {
  /// Only call the selector when the configuration in use became infeasible.
  bool select_on_jump_only = false;
  bool keep_records = true;
};

struct StepRecord {
  double t = 0.0;
  int jump_count = 0;      // cumulative
  Configuration config;    // handed to the controller
  double dropped_soft_pct = 0.0;
  double selector_time = 0.0;  // s, zero when the selector was not called
  double qp_time = 0.0;        // s
  Position x;              // state at t
};

struct RunMetrics {
  std::vector<StepRecord> records;  // empty unless keep_records
  int steps = 0;
  int jumps = 0;
  int selector_calls = 0;
  double avg_drop_pct = 0.0;
  double max_drop_pct = 0.0;
  double avg_time = 0.0;   // s, over selector calls
  double max_time = 0.0;
  double avg_qp_time = 0.0;
  Position final_x = Position::Zero();
  bool reached_goal = false;
};

inline constexpr double kGoalTolerance = 0.1;  // m

/// Closed-loop rollout with forward Euler. Every configuration handed to the
/// controller is checked to keep all hard constraints and to be feasible;
/// a violation throws Error. HardInfeasibleError from the selector
/// propagates with the time and state attached.
RunMetrics run_episode(const Scenario& sc, const SelectorSpec& selector, const EpisodeOptions& options = {});

}  // namespace conesel
