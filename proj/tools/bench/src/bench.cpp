#include "conesel_bench/bench.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "conesel/error.hpp"
#include "conesel/scenario.hpp"
#include "conesel/text_io.hpp"

namespace conesel::bench {

namespace fs = std::filesystem;

void validate(const BenchConfig& cfg) {
  if (cfg.zone_counts.empty()) throw Error("no zone counts given (--zones)");
  for (int z : cfg.zone_counts) {
    if (z < 0 || z % 2 != 0) throw Error("zone counts must be even and nonnegative, got " + std::to_string(z));
  }
  if (cfg.n_envs < 1) throw Error("--envs must be at least 1");
  if (cfg.selectors.empty()) throw Error("selector list is empty (--selectors)");
  if (!(cfg.dt > 0.0)) throw Error("--dt must be positive");
  if (cfg.jobs < 1) throw Error("--jobs must be at least 1");
}

std::vector<SelectorSpec> parse_selectors(const std::string& text, int depth) {
  std::vector<SelectorSpec> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    out.push_back(item == "LCS" ? SelectorSpec{SelectorKind::Lcs, depth} : SelectorSpec::parse(item));
  }
  return out;
}

std::vector<int> parse_zone_counts(const std::string& text) {
  std::vector<int> out;
  if (text.find(':') != std::string::npos) {
    std::stringstream in(text);
    std::string a, b, s;
    std::getline(in, a, ':');
    std::getline(in, b, ':');
    std::getline(in, s, ':');
    const auto lo = parse_integer(a);
    const auto hi = parse_integer(b);
    const auto step = s.empty() ? 1 : parse_integer(s);
    if (step <= 0 || hi < lo) throw Error("bad zone range '" + text + "'");
    for (auto z = lo; z <= hi; z += step) out.push_back(static_cast<int>(z));
    return out;
  }
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(static_cast<int>(parse_integer(item)));
  }
  return out;
}

namespace {

struct EnvResult {
  std::vector<RunMetrics> per_selector;
};

CellSummary summarize(int zones, const SelectorSpec& spec, const std::vector<const RunMetrics*>& runs) {
  CellSummary s;
  s.zones = zones;
  s.selector = spec.name();
  s.histogram.assign(100, 0);
  long steps = 0;
  long calls = 0;
  double drop_sum = 0.0;
  double time_sum = 0.0;
  double qp_sum = 0.0;
  for (const RunMetrics* m : runs) {
    steps += m->steps;
    calls += m->selector_calls;
    drop_sum += m->avg_drop_pct * m->steps;
    time_sum += m->avg_time * m->selector_calls;
    qp_sum += m->avg_qp_time * m->steps;
    s.max_drop_pct = std::max(s.max_drop_pct, m->max_drop_pct);
    s.max_time_s = std::max(s.max_time_s, m->max_time);
    s.jumps += m->jumps;
    s.reached_goal += m->reached_goal ? 1 : 0;
    for (const auto& r : m->records) {
      const int bin = std::clamp(static_cast<int>(r.dropped_soft_pct), 0, 99);
      ++s.histogram[static_cast<std::size_t>(bin)];
    }
  }
  if (steps > 0) {
    s.avg_drop_pct = drop_sum / static_cast<double>(steps);
    s.avg_qp_time_s = qp_sum / static_cast<double>(steps);
  }
  if (calls > 0) s.avg_time_s = time_sum / static_cast<double>(calls);
  return s;
}

std::ofstream open_csv(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

void close_csv(std::ofstream& out, const fs::path& path) {
  out.close();
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

std::string num(double v) { return format_number(v); }

}  // namespace

CellResults run_cells(const BenchConfig& cfg, std::ostream* progress) {
  validate(cfg);
  const std::size_t n_sel = cfg.selectors.size();
  const std::size_t n_tasks = cfg.zone_counts.size() * static_cast<std::size_t>(cfg.n_envs);
  std::vector<EnvResult> results(n_tasks);
  std::vector<std::string> errors(n_tasks);
  std::atomic<std::size_t> next{0};
  std::mutex io;

  EpisodeOptions eo;
  eo.select_on_jump_only = cfg.select_on_jump_only;

  auto worker = [&] {
    for (;;) {
      const std::size_t task = next.fetch_add(1);
      if (task >= n_tasks) return;
      const int zones = cfg.zone_counts[task / static_cast<std::size_t>(cfg.n_envs)];
      const auto env = static_cast<std::uint64_t>(task % static_cast<std::size_t>(cfg.n_envs));
      try {
        SamplingOptions so;
        so.dt = cfg.dt;
        const Scenario sc = sample_scenario(zones / 2, zones - zones / 2, cfg.seed0 + env, so);
        for (const auto& spec : cfg.selectors) results[task].per_selector.push_back(run_episode(sc, spec, eo));
      } catch (const std::exception& e) {
        errors[task] = "zones " + std::to_string(zones) + ", env " + std::to_string(env) + ": " + e.what();
      }
      if (progress) {
        std::lock_guard lock(io);
        *progress << "zones " << zones << " env " << env << (errors[task].empty() ? " done" : " FAILED") << '\n';
      }
    }
  };

  const int threads = std::min<int>(cfg.jobs, static_cast<int>(std::max<std::size_t>(1, n_tasks)));
  {
    std::vector<std::jthread> pool;
    for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw Error(e);
  }

  CellResults out;
  for (std::size_t zi = 0; zi < cfg.zone_counts.size(); ++zi) {
    for (std::size_t si = 0; si < n_sel; ++si) {
      std::vector<const RunMetrics*> runs;
      for (int e = 0; e < cfg.n_envs; ++e) {
        runs.push_back(&results[zi * static_cast<std::size_t>(cfg.n_envs) + static_cast<std::size_t>(e)].per_selector[si]);
      }
      auto cell = summarize(cfg.zone_counts[zi], cfg.selectors[si], runs);
      if (!cfg.timing) cell.avg_time_s = cell.max_time_s = cell.avg_qp_time_s = 0.0;
      out.cells.push_back(std::move(cell));
    }
  }
  return out;
}

namespace {

void write_panel(const BenchConfig& cfg, const CellResults& res, const std::string& file,
                 double CellSummary::*field) {
  const fs::path path = cfg.out_dir / file;
  auto out = open_csv(path);
  out << "zones";
  for (const auto& s : cfg.selectors) out << ',' << s.name();
  out << '\n';
  const std::size_t n_sel = cfg.selectors.size();
  for (std::size_t zi = 0; zi < cfg.zone_counts.size(); ++zi) {
    out << cfg.zone_counts[zi];
    for (std::size_t si = 0; si < n_sel; ++si) out << ',' << num(res.cells[zi * n_sel + si].*field);
    out << '\n';
  }
  close_csv(out, path);
}

void prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());
}

}  // namespace

CellResults run_sweep(const BenchConfig& cfg, std::ostream* progress) {
  validate(cfg);
  prepare_dir(cfg.out_dir);
  auto res = run_cells(cfg, progress);

  const fs::path path = cfg.out_dir / "sweep.csv";
  auto out = open_csv(path);
  out << "zones,selector,avg_drop_pct,max_drop_pct,avg_time_s,max_time_s,avg_qp_time_s\n";
  for (const auto& c : res.cells) {
    out << c.zones << ',' << c.selector << ',' << num(c.avg_drop_pct) << ',' << num(c.max_drop_pct) << ','
        << num(c.avg_time_s) << ',' << num(c.max_time_s) << ',' << num(c.avg_qp_time_s) << '\n';
  }
  close_csv(out, path);
  write_panel(cfg, res, "fig2a_avg_drop.csv", &CellSummary::avg_drop_pct);
  write_panel(cfg, res, "fig2b_max_drop.csv", &CellSummary::max_drop_pct);
  write_panel(cfg, res, "fig2c_avg_time.csv", &CellSummary::avg_time_s);
  write_panel(cfg, res, "fig2d_max_time.csv", &CellSummary::max_time_s);
  return res;
}

CellResults run_fixed(const BenchConfig& cfg, std::ostream* progress) {
  validate(cfg);
  prepare_dir(cfg.out_dir);
  BenchConfig one = cfg;
  one.zone_counts.resize(1);
  auto res = run_cells(one, progress);

  const fs::path table = cfg.out_dir / "table1.csv";
  auto out = open_csv(table);
  out << "selector,avg_time_s,max_time_s,avg_drop_pct,max_drop_pct,avg_qp_time_s\n";
  for (const auto& c : res.cells) {
    out << c.selector << ',' << num(c.avg_time_s) << ',' << num(c.max_time_s) << ',' << num(c.avg_drop_pct) << ','
        << num(c.max_drop_pct) << ',' << num(c.avg_qp_time_s) << '\n';
  }
  close_csv(out, table);

  // Bin i counts steps with drop in [i, i + 1); 100 % lands in the last bin.
  const fs::path hist = cfg.out_dir / "fig3_hist.csv";
  auto h = open_csv(hist);
  h << "bin_lo,bin_hi";
  for (const auto& c : res.cells) h << ',' << c.selector;
  h << '\n';
  for (int b = 0; b < 100; ++b) {
    h << b << ',' << b + 1;
    for (const auto& c : res.cells) h << ',' << c.histogram[static_cast<std::size_t>(b)];
    h << '\n';
  }
  close_csv(h, hist);
  return res;
}

void write_steps_csv(std::ostream& out, const RunMetrics& m, bool timing) {
  out << "t,jump_count,dropped_soft_pct,selector_time_s,qp_time_s,x,y,config\n";
  for (const auto& r : m.records) {
    out << num(r.t) << ',' << r.jump_count << ',' << num(r.dropped_soft_pct) << ','
        << num(timing ? r.selector_time : 0.0) << ',' << num(timing ? r.qp_time : 0.0) << ',' << num(r.x.x())
        << ',' << num(r.x.y()) << ',' << r.config.to_string() << '\n';
  }
}

}  // namespace conesel::bench
