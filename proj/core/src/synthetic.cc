#include "adastream/synthetic.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>

#include "adastream/errors.h"
#include "adastream/parallel.h"
#include "adastream/random.h"

namespace adastream {

LumaPatch synthesize_patch(double content_detail, double mean_luma, std::uint64_t seed) {
  if (!(content_detail >= 0.0 && content_detail <= 1.0)) {
    throw ArgumentError("content_detail must lie in [0, 1]");
  }
  Rng rng(seed);
  const double fx = 1.0 + static_cast<double>(rng.below(3));
  const double fy = static_cast<double>(rng.below(3));
  const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double noise_amplitude = 0.35 * content_detail;
  std::vector<double> values(static_cast<std::size_t>(kPatchSize) * kPatchSize);
  for (int y = 0; y < kPatchSize; ++y) {
    for (int x = 0; x < kPatchSize; ++x) {
      const double wave =
          0.15 * std::sin(2.0 * std::numbers::pi * (fx * x + fy * y) / kPatchSize + phase);
      const double noise = noise_amplitude * rng.uniform(-1.0, 1.0);
      values[static_cast<std::size_t>(y) * kPatchSize + x] =
          std::clamp(mean_luma + wave + noise, 0.0, 1.0);
    }
  }
  return LumaPatch(std::move(values));
}

std::vector<SyntheticClip> sample_clips(int n, std::uint64_t seed) {
  if (n < 0) throw ArgumentError("clip count must be non-negative");
  struct Draw {
    double velocity, detail, luma;
    std::uint64_t patch_seed;
  };
  Rng rng(seed);
  std::vector<Draw> draws(static_cast<std::size_t>(n));
  for (Draw& d : draws) {
    d.velocity = std::exp(rng.uniform(0.0, std::log(101.0))) - 1.0;
    d.detail = rng.uniform();
    d.luma = rng.uniform(0.3, 0.7);
    d.patch_seed = rng.next_u64();
  }
  return parallel_map<SyntheticClip>(draws.size(), [&](std::size_t i) {
    const Draw& d = draws[i];
    char id[32];
    std::snprintf(id, sizeof id, "clip%05zu", i);
    return SyntheticClip{id, d.velocity, d.detail,
                         extract_features(synthesize_patch(d.detail, d.luma, d.patch_seed))};
  });
}

SyntheticDataset generate_synthetic_dataset(int n, std::uint64_t seed,
                                            const SyntheticQualityParams& params,
                                            const std::vector<double>& bitrates_bps,
                                            double margin, const ModeLadder& ladder) {
  if (bitrates_bps.empty()) throw ArgumentError("need at least one bitrate");
  SyntheticDataset ds;
  ds.clips = sample_clips(n, seed);
  const std::size_t per_clip = bitrates_bps.size();
  const std::size_t total = ds.clips.size() * per_clip;

  struct Row {
    std::optional<QualityGrid> grid;
    std::optional<LabeledClip> label;
    TrainingExample example;
  };
  std::vector<Row> rows = parallel_map<Row>(total, [&](std::size_t k) {
    const SyntheticClip& clip = ds.clips[k / per_clip];
    const Bitrate bitrate(bitrates_bps[k % per_clip]);
    SyntheticQualityParams p = params;
    p.content_detail = clip.content_detail;
    Row row;
    row.grid = make_synthetic_grid(bitrate, clip.velocity_degps, p, clip.clip_id, ladder);
    row.label = select_efficient(*row.grid, margin);
    row.example = TrainingExample{make_feature_vector(clip.content, clip.velocity_degps, bitrate),
                                  row.label->efficient_mode.frame_rate,
                                  row.label->efficient_mode.resolution};
    return row;
  });
  ds.grids.reserve(total);
  ds.labels.reserve(total);
  ds.examples.reserve(total);
  for (Row& r : rows) {
    ds.grids.push_back(std::move(*r.grid));
    ds.labels.push_back(std::move(*r.label));
    ds.examples.push_back(r.example);
  }
  return ds;
}

Scenario synthesize_scenario(const ScenarioSpec& spec) {
  if (!(spec.tick_hz >= kMinReferenceTickHz)) {
    throw ArgumentError("scenario tick must be at least 120 Hz");
  }
  Rng rng(spec.seed);
  const double luma = rng.uniform(0.3, 0.7);
  const ContentFeatures content =
      extract_features(synthesize_patch(spec.content_detail, luma, rng.next_u64()));

  Scenario s;
  s.duration_s = spec.duration_s;
  s.fov_horizontal_deg = spec.fov_horizontal_deg;
  s.content_detail = spec.content_detail;
  s.bitrate_schedule = spec.bitrate_schedule;
  const auto ticks = static_cast<std::size_t>(std::llround(spec.duration_s * spec.tick_hz));
  s.frames.reserve(ticks);
  const double deg_per_ndc = spec.fov_horizontal_deg / 2.0;
  for (std::size_t i = 0; i < ticks; ++i) {
    const double t = static_cast<double>(i) / spec.tick_hz;
    double v = spec.mean_velocity_degps;
    if (spec.velocity_swing_degps != 0.0) {
      v += spec.velocity_swing_degps * std::sin(2.0 * std::numbers::pi * t / spec.swing_period_s);
    }
    v = std::max(v, 0.0);
    s.frames.push_back(ScenarioFrame{t, v / deg_per_ndc / spec.tick_hz, content});
  }
  s.validate();
  return s;
}

}  // namespace adastream
