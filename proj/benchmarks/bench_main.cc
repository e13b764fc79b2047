#include <benchmark/benchmark.h>

#include <vector>

#include "adastream/controller.h"
#include "adastream/labeler.h"
#include "adastream/predictor.h"
#include "adastream/quality.h"
#include "adastream/random.h"
#include "adastream/simulator.h"
#include "adastream/synthetic.h"

using namespace adastream;

namespace {

FeatureVector sample_features() {
  return make_feature_vector(ContentFeatures{0.5, 0.2, 0.05, 0.3, 0.2}, 35.0, Bitrate(3e6));
}

void bench_forward(benchmark::State& st) {
  const PredictorModel model({static_cast<int>(st.range(0)), static_cast<int>(st.range(0))}, 1);
  const FeatureVector x = sample_features();
  for (auto _ : st) benchmark::DoNotOptimize(model.forward(x));
  st.counters["frames"] = benchmark::Counter(st.iterations(), benchmark::Counter::kIsRate);
}

void bench_select_efficient(benchmark::State& st) {
  const SyntheticQualityParams params;
  std::vector<QualityGrid> grids;
  Rng rng(3);
  for (int i = 0; i < 64; ++i) {
    grids.push_back(make_synthetic_grid(Bitrate(rng.uniform(2e6, 4e6)), rng.uniform(0.0, 120.0), params));
  }
  std::size_t i = 0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(select_efficient(grids[i++ % grids.size()]));
  }
}

// One frame of the two-chain Viterbi recursion, plus a decision every 2 s.
void bench_controller_step(benchmark::State& st) {
  ModeController ctl(default_transition_graph(), ModeLadder::standard().mode(3, 2));
  Rng rng(4);
  std::vector<ModeProbabilities> emissions(256);
  for (ModeProbabilities& p : emissions) {
    double sf = 0.0;
    double sr = 0.0;
    for (double& v : p.frame_rate) sf += (v = rng.uniform(0.01, 1.0));
    for (double& v : p.resolution) sr += (v = rng.uniform(0.01, 1.0));
    for (double& v : p.frame_rate) v /= sf;
    for (double& v : p.resolution) v /= sr;
  }
  std::size_t i = 0;
  for (auto _ : st) {
    const double dt = 1.0 / ctl.current_mode().frame_rate.hz;
    ctl.step(emissions[i++ % emissions.size()], dt);
    if (ctl.decision_due()) benchmark::DoNotOptimize(ctl.decide());
  }
  st.counters["frames"] = benchmark::Counter(st.iterations(), benchmark::Counter::kIsRate);
}

void bench_run_session(benchmark::State& st) {
  ScenarioSpec spec;
  spec.duration_s = static_cast<double>(st.range(0));
  spec.mean_velocity_degps = 30.0;
  spec.velocity_swing_degps = 20.0;
  const Scenario scenario = synthesize_scenario(spec);
  const PredictorModel model({32, 32}, 1);
  const SyntheticQualitySource quality(SyntheticQualityParams{});
  for (auto _ : st) {
    benchmark::DoNotOptimize(run_session(scenario, model, default_transition_graph(), quality));
  }
}

}  // namespace

BENCHMARK(bench_forward)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(bench_select_efficient);
BENCHMARK(bench_controller_step);
BENCHMARK(bench_run_session)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
