// Micro benchmarks of the feasibility check, the selectors and the QP on
// constraint sets taken from simulated navigation states.
#include <benchmark/benchmark.h>

#include "conesel/baselines.hpp"
#include "conesel/controller.hpp"
#include "conesel/episode.hpp"
#include "conesel/feasibility.hpp"
#include "conesel/qp.hpp"
#include "conesel/scenario.hpp"
#include "conesel/selection.hpp"

using namespace conesel;

namespace {

// Constraint set at the first step where the all-enforced configuration is
// infeasible, or at the start if the episode never conflicts.
ConstraintSet conflict_state(int zones) {
  const auto sc = sample_scenario(zones / 2, zones - zones / 2, 7);
  const auto m = run_episode(sc, SelectorSpec{SelectorKind::Ica, 1});
  for (const auto& r : m.records) {
    auto cs = build_constraints(r.x, r.t, sc.zones, sc.goal, sc.gains);
    if (!farkas_feasible(cs)) return cs;
  }
  return build_constraints(sc.x0, 0.0, sc.zones, sc.goal, sc.gains);
}

void zone_args(benchmark::internal::Benchmark* b) {
  for (int z : {10, 20, 50, 100}) b->Arg(z);
}

void BM_NullspaceBasis(benchmark::State& state) {
  const auto cs = conflict_state(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(nullspace_basis(cs));
}
BENCHMARK(BM_NullspaceBasis)->Apply(zone_args);

void BM_FeasibilityCheck(benchmark::State& state) {
  const auto cs = conflict_state(static_cast<int>(state.range(0)));
  const auto nb = nullspace_basis(cs);
  const auto p = init_config(cs);
  for (auto _ : state) benchmark::DoNotOptimize(feasibility_check(cs, nb, p));
}
BENCHMARK(BM_FeasibilityCheck)->Apply(zone_args);

void BM_Ica(benchmark::State& state) {
  const auto cs = conflict_state(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(iterative_constraint_addition(cs, Configuration::hard_only(cs)));
}
BENCHMARK(BM_Ica)->Apply(zone_args);

void BM_LcsInfeasibleBranch(benchmark::State& state) {
  const auto cs = conflict_state(static_cast<int>(state.range(0)));
  const auto all = Configuration::all_enforced(cs.size());
  const auto hard = Configuration::hard_only(cs);
  for (auto _ : state) benchmark::DoNotOptimize(local_configuration_search(cs, all, hard, Eigen::VectorXd(), 5));
}
BENCHMARK(BM_LcsInfeasibleBranch)->Apply(zone_args);

void BM_Baseline1(benchmark::State& state) {
  const auto cs = conflict_state(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(baseline1_select(cs));
}
BENCHMARK(BM_Baseline1)->Apply(zone_args);

void BM_Baseline2(benchmark::State& state) {
  const auto cs = conflict_state(static_cast<int>(state.range(0)));
  const auto all = Configuration::all_enforced(cs.size());
  for (auto _ : state) benchmark::DoNotOptimize(baseline2_select(cs, all, Eigen::VectorXd()));
}
BENCHMARK(BM_Baseline2)->Apply(zone_args);

void BM_MinNormQp(benchmark::State& state) {
  const auto cs = conflict_state(static_cast<int>(state.range(0)));
  const auto sys = mask(cs, iterative_constraint_addition(cs, Configuration::hard_only(cs)).config);
  const Eigen::Vector2d u_ref(1.0, -1.0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_min_norm_qp(u_ref, sys.normals, sys.bounds));
}
BENCHMARK(BM_MinNormQp)->Apply(zone_args);

void BM_Episode(benchmark::State& state) {
  const auto sc = sample_scenario(10, 10, 3);
  EpisodeOptions o;
  o.keep_records = false;
  const auto kind = static_cast<SelectorKind>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_episode(sc, SelectorSpec{kind, 5}, o));
}
BENCHMARK(BM_Episode)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
