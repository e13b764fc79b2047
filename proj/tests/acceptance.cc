// Acceptance run: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "adastream/controller.h"
#include "adastream/evaluation.h"
#include "adastream/labeler.h"
#include "adastream/metrics.h"
#include "adastream/predictor.h"
#include "adastream/quality.h"
#include "adastream/random.h"
#include "adastream/simulator.h"
#include "adastream/synthetic.h"
#include "commands.h"
#include "oracles.h"

namespace adastream {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// 1. Efficient selection against a brute-force scan.
Outcome efficient_selection_oracle() {
  Rng rng(2024);
  std::vector<QualityGrid> grids;
  std::vector<double> margins;
  for (int i = 0; i < 200; ++i) {
    grids.push_back(testing::random_grid(rng, "g" + std::to_string(i)));
    margins.push_back(i % 4 == 0 ? kDefaultMarginJod : rng.uniform(0.0, 1.0));
  }
  int mismatches = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < grids.size(); ++i) {
    const LabeledClip l = select_efficient(grids[i], margins[i]);
    const testing::OracleSelection o = testing::brute_force_select(grids[i], margins[i]);
    if (!(l.efficient_mode == o.efficient) || l.q_efficient != o.q_efficient ||
        !(l.best_mode == o.best) || l.q_star != o.q_star) {
      ++mismatches;
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {mismatches == 0 && seconds < 1.0,
          "200 random grids, " + std::to_string(mismatches) + " mismatches, " +
              fmt("%.4f s", seconds)};
}

// 2. Relative error: closed-form cases and symmetry / scale invariance.
Outcome relative_error_exactness() {
  bool ok = relative_error(std::vector<double>{60, 90}, std::vector<double>{60, 90}) == 0.0;
  ok = ok && std::fabs(relative_error(std::vector<double>{60}, std::vector<double>{30}) - 100.0) <= 1e-9;
  const double two = relative_error(std::vector<double>{40, 90}, std::vector<double>{40, 60});
  const double two_expected = (std::exp(std::log(1.5) / 2.0) - 1.0) * 100.0;
  ok = ok && std::fabs(two - two_expected) <= 1e-9 && std::fabs(two - 22.47) < 5e-3;

  Rng rng(7);
  int failures = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 1 + rng.below(16);
    std::vector<double> p(n);
    std::vector<double> t(n);
    std::vector<double> pc(n);
    std::vector<double> tc(n);
    const double c = rng.uniform(0.01, 100.0);
    for (std::size_t k = 0; k < n; ++k) {
      p[k] = rng.uniform(1.0, 2000.0);
      t[k] = rng.uniform(1.0, 2000.0);
      pc[k] = p[k] * c;
      tc[k] = t[k] * c;
    }
    const double e = relative_error(p, t);
    if (e != relative_error(t, p)) ++failures;
    if (std::fabs(relative_error(pc, tc) - e) > 1e-9 * (1.0 + e)) ++failures;
    if (std::fabs(testing::oracle_relative_error(p, t) - e) > 1e-9 * (1.0 + e)) ++failures;
  }
  return {ok && failures == 0,
          "hand cases 0% / 100% / " + fmt("%.6f%%", two) + ", " + std::to_string(failures) +
              " property failures over 1000 pairs"};
}

// 3. Savings grow with the margin and are positive at 0.25 JOD.
Outcome savings_monotonicity() {
  const SyntheticDataset ds =
      generate_synthetic_dataset(100, 31, SyntheticQualityParams{}, standard_bitrates_bps());
  std::vector<double> margins;
  for (int i = 0; i <= 20; ++i) margins.push_back(i / 20.0);

  bool monotone = true;
  std::map<double, int> positive;
  for (const QualityGrid& g : ds.grids) {
    double prev = -1.0;
    for (double m : margins) {
      const double s = savings_pct(select_efficient(g, m));
      if (s < prev) monotone = false;
      prev = s;
      if (m == 0.25 && s > 0.0) ++positive[g.bitrate().bps()];
    }
  }
  const SavingsCurve curve = savings_curve(ds.grids, margins);
  for (const auto& [bps, values] : curve.per_bitrate) {
    for (std::size_t i = 1; i < values.size(); ++i) monotone = monotone && values[i] >= values[i - 1];
  }
  bool share_ok = true;
  std::string shares;
  for (double bps : standard_bitrates_bps()) {
    share_ok = share_ok && positive[bps] >= 80;
    shares += fmt("%.0f Mbps ", bps / 1e6) + std::to_string(positive[bps]) + "/100, ";
  }
  const double mean_at_025 = curve.overall[5];
  std::string detail = "monotone=" + std::string(monotone ? "yes" : "no") + ", positive at 0.25: " +
                       shares + fmt("mean %.1f%%; ", mean_at_025);

  bool real_ok = true;
  if (const char* path = std::getenv("ADASTREAM_DATASET_CSV"); path && *path) {
    const std::vector<QualityGrid> real = load_grids(path);
    const std::vector<double> m{kDefaultMarginJod};
    const double mean = savings_curve(real, m).overall[0];
    real_ok = std::fabs(mean - 53.0) <= 5.0;
    detail += fmt("real dataset mean %.1f%% (target 53 +/- 5)", mean);
  } else {
    detail += "real-dataset 53% check SKIPPED (set ADASTREAM_DATASET_CSV to a grid CSV)";
  }
  return {monotone && share_ok && real_ok, detail};
}

// 4. Interior resolution optimum at low bandwidth and high motion; corner
// optimum at high bandwidth and low motion.
Outcome surface_shape() {
  int interior = 0;
  int interior_total = 0;
  int corner = 0;
  int corner_total = 0;
  for (int d = 0; d <= 5; ++d) {
    SyntheticQualityParams p;
    p.content_detail = 0.5 + 0.1 * d;
    for (int v = 40; v <= 120; v += 5) {
      ++interior_total;
      if (select_max_quality(make_synthetic_grid(Bitrate(2e6), v, p)).mode.resolution.height < 1080) {
        ++interior;
      }
    }
    for (int v = 0; v <= 10; ++v) {
      ++corner_total;
      if (select_max_quality(make_synthetic_grid(Bitrate(4e6), v, p)).mode.resolution.height == 1080) {
        ++corner;
      }
    }
  }
  return {interior == interior_total && corner == corner_total,
          "2 Mbps, v>=40, detail>=0.5: argmax r<1080 in " + std::to_string(interior) + "/" +
              std::to_string(interior_total) + "; 4 Mbps, v<=10: argmax r=1080 in " +
              std::to_string(corner) + "/" + std::to_string(corner_total)};
}

// 5. Controller transition limits and decision cadence.
Outcome controller_constraints() {
  const testing::ControllerSweep s = testing::sweep_controller(10000, 55);
  const bool ok = s.frame_rate_violations == 0 && s.resolution_violations == 0 &&
                  s.cadence_violations == 0 && s.streams == 10000;
  return {ok, std::to_string(s.streams) + " streams, " + std::to_string(s.decisions) +
                  " decisions (" + std::to_string(s.changes) + " changes): " +
                  std::to_string(s.frame_rate_violations) + " frame-rate, " +
                  std::to_string(s.resolution_violations) + " resolution, " +
                  std::to_string(s.cadence_violations) + " cadence violations"};
}

// 6. Bit conservation, jittered bitrate error and I-frame alignment.
Outcome simulator_conservation() {
  SyntheticQualityParams params;
  const SyntheticQualitySource quality(params);
  const testing::LabelOraclePredictor oracle(params);
  bool exact = true;
  bool aligned = true;
  double worst_jitter = 0.0;
  int resolution_changes = 0;
  Rng rng(66);
  for (int i = 0; i < 12; ++i) {
    ScenarioSpec spec;
    spec.duration_s = 20.0;
    spec.seed = rng.next_u64();
    spec.mean_velocity_degps = rng.uniform(5.0, 60.0);
    spec.velocity_swing_degps = rng.uniform(0.0, spec.mean_velocity_degps);
    spec.swing_period_s = rng.uniform(4.0, 12.0);
    spec.bitrate_schedule = {BitrateSegment{0.0, Bitrate(rng.uniform(2e6, 4e6))},
                             BitrateSegment{rng.uniform(3.0, 15.0), Bitrate(rng.uniform(2e6, 4e6))}};
    const Scenario s = synthesize_scenario(spec);
    const SessionTrace det = run_session(s, oracle, default_transition_graph(), quality);
    const testing::TraceAudit a = testing::audit_trace(det, s);
    // Budgets are whole bits, so the achieved rate must equal the rounded
    // per-GOP targets exactly (a fractional target cannot give zero error).
    std::int64_t budgeted = 0;
    for (const WindowRecord& w : det.windows) budgeted += std::llround(w.bitrate_bps * 2.0);
    const double expected = static_cast<double>(budgeted) / (2.0 * static_cast<double>(det.windows.size()));
    exact = exact && a.gop_totals_exact && det.summary.achieved_bitrate == expected;
    aligned = aligned && a.ok();
    resolution_changes += det.summary.switch_count_r;

    SessionOptions jitter;
    jitter.jitter = true;
    jitter.seed = spec.seed;
    const SessionTrace noisy = run_session(s, oracle, default_transition_graph(), quality, jitter);
    worst_jitter = std::max(worst_jitter, noisy.summary.bitrate_error_pct);
    aligned = aligned && testing::audit_trace(noisy, s).resolution_changes_on_iframes;
  }
  return {exact && aligned && worst_jitter <= 1.0,
          "12 sessions: GOP totals exact=" + std::string(exact ? "yes" : "no") +
              ", I-frame/GOP alignment=" + (aligned ? "yes" : "no") + " (" +
              std::to_string(resolution_changes) + " resolution changes), worst jittered error " +
              fmt("%.3f%% (reference 0.63%%)", worst_jitter)};
}

// 7. Analytic gradients against central differences.
Outcome gradient_check() {
  Rng rng(77);
  double worst = 0.0;
  std::size_t checked = 0;
  for (int i = 0; i < 50; ++i) {
    const testing::GradientCase c = testing::random_gradient_case(rng);
    const testing::GradientCheck g = testing::check_gradient(c.model, c.batch, 1e-5);
    worst = std::max(worst, g.worst_relative);
    checked += g.checked;
  }
  return {worst <= 1e-4 && checked > 0,
          "50 random models, " + std::to_string(checked) + " parameters, worst relative error " +
              fmt("%.2e", worst)};
}

// 8. A trained predictor beats the majority-class baseline on held-out clips.
Outcome training_value() {
  const int clips = 500;
  const SyntheticDataset ds =
      generate_synthetic_dataset(clips, 8, SyntheticQualityParams{}, standard_bitrates_bps());
  // Hold out whole clips: the last 100 of an i.i.d. draw.
  const std::size_t per_clip = standard_bitrates_bps().size();
  const std::size_t cut = static_cast<std::size_t>(clips - 100) * per_clip;
  const std::vector<TrainingExample> train_set(ds.examples.begin(), ds.examples.begin() + cut);
  const std::vector<TrainingExample> test_set(ds.examples.begin() + cut, ds.examples.end());

  const PredictorModel model = adastream::train(train_set, TrainConfig{});
  const EvaluationReport r =
      evaluate_predictor(test_set, model, ModeLadder::standard(), majority_mode(train_set));
  const bool ok = r.error_f_pct < r.majority_error_f_pct && r.error_r_pct < r.majority_error_r_pct;
  return {ok, fmt("held-out fps error %.1f%%", r.error_f_pct) +
                  fmt(" vs majority %.1f%%", r.majority_error_f_pct) +
                  fmt(", resolution %.1f%%", r.error_r_pct) +
                  fmt(" vs majority %.1f%%", r.majority_error_r_pct) +
                  " (reference 22% / 17% on rendered data)"};
}

// 9. Policy ordering on high-velocity scenarios at 3 Mbps.
Outcome baseline_ordering() {
  const SyntheticQualitySource quality(SyntheticQualityParams{});
  std::vector<Scenario> scenarios;
  for (double v : {40.0, 60.0, 80.0}) scenarios.push_back(testing::constant_scenario(20.0, v, 3e6));
  ScenarioSpec sweep;
  sweep.duration_s = 20.0;
  sweep.mean_velocity_degps = 65.0;
  sweep.velocity_swing_degps = 25.0;
  sweep.swing_period_s = 8.0;
  scenarios.push_back(synthesize_scenario(sweep));

  bool ok = true;
  double min_gap_full_res = 1e9;
  double min_gap_vs_fixed = 1e9;
  for (const Scenario& s : scenarios) {
    const BaselineComparison c = compare_baselines(s, quality);
    const double full = c.full_adaptive.mean_quality_jod;
    const double res = c.resolution_adaptive.mean_quality_jod;
    const double fixed = c.fixed.mean_quality_jod;
    ok = ok && full >= res && res >= fixed - 0.25 && full >= fixed - 0.25;
    min_gap_full_res = std::min(min_gap_full_res, full - res);
    min_gap_vs_fixed = std::min(min_gap_vs_fixed, std::min(full, res) - fixed);
  }

  // High-detail content: efficient selection may trade up to the margin, so
  // only full >= res - margin is guaranteed there.
  Scenario detailed = testing::constant_scenario(20.0, 60.0, 3e6, 0.9);
  SyntheticQualityParams p;
  p.content_detail = 0.9;
  const BaselineComparison hd = compare_baselines(detailed, SyntheticQualitySource(p));
  const double hd_gap = hd.full_adaptive.mean_quality_jod - hd.resolution_adaptive.mean_quality_jod;
  ok = ok && hd_gap >= -kDefaultMarginJod;

  return {ok, "4 scenarios at detail 0.5: min(full - res) " + fmt("%+.3f JOD", min_gap_full_res) +
                  ", min(adaptive - fixed) " + fmt("%+.3f JOD", min_gap_vs_fixed) +
                  "; detail 0.9 full - res " + fmt("%+.3f JOD (bound -0.25)", hd_gap)};
}

// 10. Byte-identical CLI outputs across two runs.
Outcome cli_determinism() {
  std::vector<std::filesystem::path> dirs{testing::temp_dir("acceptance_a"),
                                          testing::temp_dir("acceptance_b")};
  for (const auto& dir : dirs) {
    const std::string d = dir.string();
    if (cli::run(std::vector<std::string>{"gen-synthetic", "--clips", "100", "--seed", "10", "--out", d}) != 0 ||
        cli::run(std::vector<std::string>{"train", "--data", d + "/training.csv", "--seed", "10",
                                          "--epochs", "20", "--out", d}) != 0 ||
        cli::run(std::vector<std::string>{"simulate", "--scenario", d + "/scenario.json", "--model",
                                          d + "/model.txt", "--jitter", "--seed", "10", "--out", d}) != 0) {
      return {false, "a subcommand failed"};
    }
  }
  int identical = 0;
  const std::vector<std::string> files{"grids.csv", "labels.csv",    "training.csv", "holdout.csv",
                                       "scenario.json", "model.txt", "train_log.csv", "trace.csv",
                                       "windows.csv",   "summary.json"};
  for (const std::string& f : files) {
    const std::string a = testing::read_file(dirs[0] / f);
    if (!a.empty() && a == testing::read_file(dirs[1] / f)) ++identical;
  }
  return {identical == static_cast<int>(files.size()),
          "gen-synthetic, train, simulate: " + std::to_string(identical) + "/" +
              std::to_string(files.size()) + " files byte-identical"};
}

}  // namespace
}  // namespace adastream

int main() {
  using namespace adastream;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"efficient-selection oracle equivalence", efficient_selection_oracle},
      {"relative-error exactness", relative_error_exactness},
      {"savings monotonicity", savings_monotonicity},
      {"quality-surface optimum shape", surface_shape},
      {"controller hard constraints", controller_constraints},
      {"simulator conservation", simulator_conservation},
      {"gradient correctness", gradient_check},
      {"end-to-end training value", training_value},
      {"baseline comparison ordering", baseline_ordering},
      {"determinism", cli_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
