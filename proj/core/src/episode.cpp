#include "conesel/episode.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>

#include "conesel/baselines.hpp"
#include "conesel/error.hpp"
#include "conesel/feasibility.hpp"
#include "conesel/selection.hpp"
#include "conesel/text_io.hpp"

namespace conesel {

std::string SelectorSpec::name() const {
  switch (kind) {
    case SelectorKind::Ica: return "ICA";
    case SelectorKind::Lcs: return "LCS" + std::to_string(depth);
    case SelectorKind::Baseline1: return "B1";
    case SelectorKind::Baseline2: return "B2";
  }
  return "?";
}

SelectorSpec SelectorSpec::parse(std::string_view text) {
  if (text == "ICA") return {SelectorKind::Ica, 1};
  if (text == "B1") return {SelectorKind::Baseline1, 1};
  if (text == "B2") return {SelectorKind::Baseline2, 1};
  if (text.starts_with("LCS")) {
    int d = 0;
    const char* b = text.data() + 3;
    const char* e = text.data() + text.size();
    auto [p, ec] = std::from_chars(b, e, d);
    if (ec == std::errc() && p == e && d >= 1) return {SelectorKind::Lcs, d};
  }
  throw Error("unknown selector '" + std::string(text) + "' (expected ICA, LCS<depth>, B1 or B2)");
}

namespace {

class IcaSelector final : public Selector {
 public:
  Configuration select(const ConstraintSet& cs, const Configuration& current) override {
    return iterative_constraint_addition(cs, current).config;
  }
};

class LcsSelector final : public Selector {
 public:
  explicit LcsSelector(int depth) : depth_(depth) {}

  Configuration select(const ConstraintSet& cs, const Configuration& current) override {
    if (last_feasible_.size() != cs.size()) last_feasible_ = current;
    auto r = local_configuration_search(cs, current, last_feasible_, nu_last_, depth_);
    last_feasible_ = r.config;
    nu_last_ = std::move(r.nu);
    return std::move(r.config);
  }

 private:
  int depth_;
  Configuration last_feasible_;
  Eigen::VectorXd nu_last_;
};

class B1Selector final : public Selector {
 public:
  Configuration select(const ConstraintSet& cs, const Configuration&) override { return baseline1_select(cs); }
};

class B2Selector final : public Selector {
 public:
  Configuration select(const ConstraintSet& cs, const Configuration& current) override {
    auto r = baseline2_select(cs, current, multipliers_);
    multipliers_ = std::move(r.multipliers);
    return std::move(r.config);
  }

 private:
  Eigen::VectorXd multipliers_;
};

std::string where(double t, const Position& x) {
  return " at t = " + format_number(t) + ", x = (" + format_number(x.x()) + ", " + format_number(x.y()) + ")";
}

}  // namespace

std::unique_ptr<Selector> make_selector(const SelectorSpec& spec) {
  switch (spec.kind) {
    case SelectorKind::Ica: return std::make_unique<IcaSelector>();
    case SelectorKind::Lcs:
      if (spec.depth < 1) throw Error("LCS depth must be at least 1");
      return std::make_unique<LcsSelector>(spec.depth);
    case SelectorKind::Baseline1: return std::make_unique<B1Selector>();
    case SelectorKind::Baseline2: return std::make_unique<B2Selector>();
  }
  throw Error("unknown selector kind");
}

RunMetrics run_episode(const Scenario& sc, const SelectorSpec& spec, const EpisodeOptions& options) {
  using clock = std::chrono::steady_clock;
  auto seconds = [](clock::duration d) { return std::chrono::duration<double>(d).count(); };

  auto selector = make_selector(spec);
  const int steps = static_cast<int>(std::lround(sc.horizon / sc.dt));
  const auto c = static_cast<Eigen::Index>(kNumHard + sc.zones.size());

  RunMetrics m;
  m.steps = steps;
  if (options.keep_records) m.records.reserve(static_cast<std::size_t>(steps));
  Position x = sc.x0;
  Configuration config = Configuration::all_enforced(c);
  double drop_sum = 0.0;
  double time_sum = 0.0;
  double qp_sum = 0.0;

  for (int s = 0; s < steps; ++s) {
    const double t = s * sc.dt;
    const ConstraintSet cs = build_constraints(x, t, sc.zones, sc.goal, sc.gains);
    const NullspaceBasis nb = nullspace_basis(cs);

    const bool still_feasible = feasibility_check(cs, nb, config).feasible;
    if (!still_feasible) ++m.jumps;

    double sel_time = 0.0;
    if (!still_feasible || !options.select_on_jump_only) {
      const auto t0 = clock::now();
      try {
        config = selector->select(cs, config);
      } catch (const HardInfeasibleError& e) {
        throw HardInfeasibleError(std::string(e.what()) + where(t, x));
      }
      sel_time = seconds(clock::now() - t0);
      ++m.selector_calls;
      time_sum += sel_time;
      m.max_time = std::max(m.max_time, sel_time);
    }

    if (!config.respects_hard(cs)) throw Error(spec.name() + " disregarded a hard constraint" + where(t, x));
    if (!feasibility_check(cs, nb, config).feasible) {
      throw Error(spec.name() + " returned an infeasible configuration" + where(t, x));
    }

    const Input u_ref = reference_input(x, sc.goal, sc.gains);
    const auto q0 = clock::now();
    const Input u = control_step(cs, config, u_ref);
    const double qp_time = seconds(clock::now() - q0);
    qp_sum += qp_time;

    const double drop = config.dropped_soft_pct(cs);
    drop_sum += drop;
    m.max_drop_pct = std::max(m.max_drop_pct, drop);
    if (options.keep_records) m.records.push_back({t, m.jumps, config, drop, sel_time, qp_time, x});

    x += sc.dt * u;
  }

  if (steps > 0) {
    m.avg_drop_pct = drop_sum / steps;
    m.avg_qp_time = qp_sum / steps;
  }
  if (m.selector_calls > 0) m.avg_time = time_sum / m.selector_calls;
  m.final_x = x;
  m.reached_goal = (x - sc.goal).norm() <= kGoalTolerance;
  return m;
}

}  // namespace conesel
