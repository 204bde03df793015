#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "conesel/episode.hpp"

namespace conesel::bench {

struct BenchConfig {
  std::vector<int> zone_counts;        // each split evenly into static and moving
  int n_envs = 50;
  std::vector<SelectorSpec> selectors;
  std::uint64_t seed0 = 0;             // environment e uses seed0 + e
  double dt = 0.1;
  int jobs = 1;
  std::filesystem::path out_dir = "results";
  bool select_on_jump_only = false;
  bool timing = true;                  // false writes every time column as 0
};

/// Throws Error with a usage message on an invalid configuration.
void validate(const BenchConfig& cfg);

/// "ICA", "LCS" (uses `depth`), "LCS<d>", "B1", "B2"; comma separated.
std::vector<SelectorSpec> parse_selectors(const std::string& text, int depth);

/// "a:b:step" (inclusive) or a comma separated list.
std::vector<int> parse_zone_counts(const std::string& text);

/// Aggregate over the environments of one (zone count, selector) cell.
struct CellSummary {
  int zones = 0;
  std::string selector;
  double avg_drop_pct = 0.0;   // mean over every step of every environment
  double max_drop_pct = 0.0;
  double avg_time_s = 0.0;     // mean over every selector call
  double max_time_s = 0.0;
  double avg_qp_time_s = 0.0;
  int jumps = 0;
  int reached_goal = 0;
  std::vector<long> histogram; // 100 bins of per-step drop percentage
};

struct CellResults {
  std::vector<CellSummary> cells;  // zone-major, then selector order
};

/// Runs every (zone count, environment) pair on a pool of cfg.jobs threads,
/// each environment evaluated by every selector. Output order does not depend
/// on scheduling. `progress` (may be null) receives one line per environment.
CellResults run_cells(const BenchConfig& cfg, std::ostream* progress);

/// Writes sweep.csv and one file per figure panel
/// (fig2a_avg_drop.csv, fig2b_max_drop.csv, fig2c_avg_time.csv, fig2d_max_time.csv).
CellResults run_sweep(const BenchConfig& cfg, std::ostream* progress);

/// Writes table1.csv and fig3_hist.csv for the first zone count.
CellResults run_fixed(const BenchConfig& cfg, std::ostream* progress);

/// Per-step record of one episode as CSV.
void write_steps_csv(std::ostream& out, const RunMetrics& metrics, bool timing);

}  // namespace conesel::bench
