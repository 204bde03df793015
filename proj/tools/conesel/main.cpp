// conesel: benchmark runner, constraint-file checker and self test.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "conesel/error.hpp"
#include "conesel/feasibility.hpp"
#include "conesel/scenario.hpp"
#include "conesel/selection.hpp"
#include "conesel/text_io.hpp"
#include "conesel_bench/bench.hpp"
#include "conesel_test/properties.hpp"

namespace {

using namespace conesel;

struct Flags {
  std::optional<std::string> zones;  // unset means the subcommand default
  int envs = 50;
  std::optional<std::string> selectors;
  int depth = 5;
  std::uint64_t seed = 0;
  double dt = 0.1;
  int jobs = 1;
  std::string out = "results";
  bool jump_only = false;
  bool no_timing = false;
  bool quiet = false;
};

bench::BenchConfig make_config(const Flags& f, const std::string& default_zones, const std::string& default_selectors) {
  bench::BenchConfig cfg;
  cfg.zone_counts = bench::parse_zone_counts(f.zones.value_or(default_zones));
  cfg.n_envs = f.envs;
  cfg.selectors = bench::parse_selectors(f.selectors.value_or(default_selectors), f.depth);
  cfg.seed0 = f.seed;
  cfg.dt = f.dt;
  cfg.jobs = f.jobs;
  cfg.out_dir = f.out;
  cfg.select_on_jump_only = f.jump_only;
  cfg.timing = !f.no_timing;
  return cfg;
}

std::string vec(const Eigen::VectorXd& v) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_number(v[i]);
  return s + "]";
}

void print_cells(const bench::CellResults& res) {
  std::cout << std::left << std::setw(7) << "zones" << std::setw(8) << "sel" << std::right << std::setw(10)
            << "avg_drop" << std::setw(10) << "max_drop" << std::setw(12) << "avg_time" << std::setw(12)
            << "max_time" << std::setw(8) << "goal" << '\n';
  for (const auto& c : res.cells) {
    std::cout << std::left << std::setw(7) << c.zones << std::setw(8) << c.selector << std::right << std::fixed
              << std::setprecision(3) << std::setw(10) << c.avg_drop_pct << std::setw(10) << c.max_drop_pct
              << std::setprecision(6) << std::setw(12) << c.avg_time_s << std::setw(12) << c.max_time_s
              << std::setw(8) << c.reached_goal << '\n';
  }
  std::cout.unsetf(std::ios::floatfield);
}

int cmd_check(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw Error("cannot open '" + file + "'");
  const ConstraintSet cs = read_constraint_set(in);
  const auto nb = nullspace_basis(cs);
  std::cout << "constraints: m = " << cs.input_dim() << ", c = " << cs.size() << ", hard = " << cs.num_hard()
            << ", nullity = " << nb.nullity() << '\n';
  const bool feasible = farkas_feasible(nb);
  std::cout << "verdict: " << (feasible ? "feasible" : "infeasible") << '\n';
  const auto all = Configuration::all_enforced(cs.size());
  const auto cert = feasibility_check(cs, nb, all);
  if (cert.feasible) std::cout << "nu: " << vec(cert.nu) << (cert.cost_unbounded ? " (cost unbounded)" : "") << '\n';
  if (feasible) {
    const auto report = polar_components(cs, nb);
    std::cout << "polar nu*: " << vec(report.nu_star) << ", sum = " << format_number(report.objective)
              << ", min = " << format_number(report.nu_min_enforced) << '\n';
    if (report.dist_lower) {
      std::cout << "boundary distance bounds: [" << format_number(*report.dist_lower) << ", "
                << format_number(*report.dist_upper) << "]\n";
    } else {
      std::cout << "boundary distance bounds: not available\n";
    }
  }
  try {
    const auto ica = iterative_constraint_addition(cs, nb, all);
    std::cout << "ica: " << ica.config.to_string() << " (" << ica.config.count_enforced() << " of " << cs.size()
              << " enforced" << (ica.restarted ? ", restarted from hard-only" : "") << ")\n";
  } catch (const HardInfeasibleError& e) {
    std::cout << "ica: " << e.what() << '\n';
  }
  return 0;
}

int cmd_once(const Flags& f, const std::string& scenario_file) {
  auto cfg = make_config(f, "20", "ICA");
  if (cfg.selectors.empty()) throw Error("selector list is empty (--selectors)");
  Scenario sc;
  if (!scenario_file.empty()) {
    std::ifstream in(scenario_file);
    if (!in) throw Error("cannot open '" + scenario_file + "'");
    sc = read_scenario(in);
  } else {
    const int zones = cfg.zone_counts.at(0);
    SamplingOptions so;
    so.dt = cfg.dt;
    sc = sample_scenario(zones / 2, zones - zones / 2, cfg.seed0, so);
  }
  std::filesystem::create_directories(cfg.out_dir);
  {
    std::ofstream out(cfg.out_dir / "scenario.txt");
    write_scenario(out, sc);
  }
  EpisodeOptions eo;
  eo.select_on_jump_only = cfg.select_on_jump_only;
  for (const auto& spec : cfg.selectors) {
    const auto m = run_episode(sc, spec, eo);
    const auto path = cfg.out_dir / ("steps_" + spec.name() + ".csv");
    std::ofstream out(path, std::ios::binary);
    bench::write_steps_csv(out, m, cfg.timing);
    std::cout << spec.name() << ": avg drop " << format_number(m.avg_drop_pct) << " %, max drop "
              << format_number(m.max_drop_pct) << " %, jumps " << m.jumps << ", avg time "
              << format_number(cfg.timing ? m.avg_time : 0.0) << " s, final distance "
              << format_number((m.final_x - sc.goal).norm()) << " m -> " << path.string() << '\n';
  }
  return 0;
}

int cmd_selftest(double scale, std::uint64_t seed) {
  int failed = 0;
  for (const auto& r : testing::run_all_properties(scale, seed)) {
    std::cout << (r.ok() ? "PASS " : "FAIL ") << r.name << " (" << r.trials << " trials, " << r.violations
              << " violations, " << std::fixed << std::setprecision(2) << r.seconds << " s)\n";
    std::cout.unsetf(std::ios::floatfield);
    if (!r.ok()) {
      ++failed;
      std::cout << "  " << r.first_failure << '\n';
    }
  }
  std::cout << (failed ? "selftest FAILED" : "selftest passed") << '\n';
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constraint feasibility certificates and online constraint selection"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key = value file; command-line flags override it");

  Flags f;
  app.add_option("--zones", f.zones, "Zone counts: a:b:step or a comma list (split evenly static/moving)");
  app.add_option("--envs", f.envs, "Environments per zone count")->check(CLI::PositiveNumber);
  app.add_option("--selectors", f.selectors, "Comma list of ICA, LCS, LCS<d>, B1, B2");
  app.add_option("--depth", f.depth, "Search depth for a bare LCS selector")->check(CLI::PositiveNumber);
  app.add_option("--seed", f.seed, "Base seed; environment e uses seed + e");
  app.add_option("--dt", f.dt, "Integration step in seconds")->check(CLI::PositiveNumber);
  app.add_option("--jobs", f.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", f.out, "Output directory");
  app.add_flag("--select-on-jump-only", f.jump_only, "Call the selector only when the configuration becomes infeasible");
  app.add_flag("--no-timing", f.no_timing, "Write zeros in every time column (byte-reproducible output)");
  app.add_flag("--quiet", f.quiet, "No per-environment progress on stderr");

  auto* sweep = app.add_subcommand("sweep", "Drop percentage and selector time versus zone count");
  auto* fixed = app.add_subcommand("fixed", "Fixed zone count: summary table and drop histogram");
  auto* once = app.add_subcommand("once", "One episode per selector with per-step CSV");
  std::string scenario_file;
  once->add_option("--scenario", scenario_file, "Replay a saved scenario instead of sampling");
  auto* check = app.add_subcommand("check", "Analyze a constraint file");
  std::string check_file;
  check->add_option("file", check_file, "Constraint file")->required();
  auto* selftest = app.add_subcommand("selftest", "Run the randomized property suites");
  double scale = 1.0;
  selftest->add_option("--scale", scale, "Multiplier on the default trial counts")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    std::ostream* progress = f.quiet ? nullptr : &std::cerr;
    if (*sweep) {
      print_cells(bench::run_sweep(make_config(f, "2:100:2", "ICA,LCS,B1,B2"), progress));
    } else if (*fixed) {
      print_cells(bench::run_fixed(make_config(f, "100", "ICA,LCS1,LCS5,LCS10,B1,B2"), progress));
    } else if (*once) {
      return cmd_once(f, scenario_file);
    } else if (*check) {
      return cmd_check(check_file);
    } else if (*selftest) {
      return cmd_selftest(scale, f.seed);
    }
  } catch (const std::exception& e) {
    std::cerr << "conesel: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
