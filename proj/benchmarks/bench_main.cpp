#include <benchmark/benchmark.h>

#include "hydromm/analysis.hpp"
#include "hydromm/drivetrain.hpp"
#include "hydromm/topologies.hpp"

using namespace hydromm;

static void BM_SolveRatioInertiaBound(benchmark::State& state) {
  const MotorModel motor = MotorModel::defaults();
  const TaskRequirement req{100.0, 9.4, 0.035, 1.0, {}};
  for (auto _ : state) benchmark::DoNotOptimize(solve_ratio(req, motor, 0.9));
}
BENCHMARK(BM_SolveRatioInertiaBound);

static void BM_SolveRatioSpeedBound(benchmark::State& state) {
  const MotorModel motor = MotorModel::defaults();
  const TaskRequirement req{100.0 / 3.0, 9.4, 0.035, 1.0, {}};
  for (auto _ : state) benchmark::DoNotOptimize(solve_ratio(req, motor, 0.9));
}
BENCHMARK(BM_SolveRatioSpeedBound);

static void BM_SizeTwoSpeed(benchmark::State& state) {
  const StudyParameters p;
  for (auto _ : state) benchmark::DoNotOptimize(eval_two_speed_1dof(p));
}
BENCHMARK(BM_SizeTwoSpeed);

static void BM_LambdaSweep(benchmark::State& state) {
  SweepSpec spec;
  spec.points = static_cast<int>(state.range(0));
  const StudyParameters p;
  for (auto _ : state) benchmark::DoNotOptimize(sweep(spec, p));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LambdaSweep)->Arg(61)->Arg(601);
BENCHMARK_MAIN();
