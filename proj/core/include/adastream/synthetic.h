#ifndef ADASTREAM_SYNTHETIC_H_
#define ADASTREAM_SYNTHETIC_H_

#include <cstdint>
#include <string>
#include <vector>

#include "adastream/labeler.h"
#include "adastream/ladder.h"
#include "adastream/predictor.h"
#include "adastream/quality.h"
#include "adastream/scenario.h"

namespace adastream {

// A 128×128 procedural texture: a smooth low-frequency wave around
// mean_luma plus white noise whose amplitude grows with content_detail.
LumaPatch synthesize_patch(double content_detail, double mean_luma, std::uint64_t seed);

struct SyntheticClip {
  std::string clip_id;
  double velocity_degps = 0.0;
  double content_detail = 0.0;
  ContentFeatures content;
};

// Velocities are log-uniform over [0, 100] deg/s so slow motion dominates;
// detail is uniform over [0, 1].
std::vector<SyntheticClip> sample_clips(int n, std::uint64_t seed);

struct SyntheticDataset {
  std::vector<SyntheticClip> clips;
  std::vector<QualityGrid> grids;          // clip-major, one per bitrate
  std::vector<LabeledClip> labels;         // aligned with grids
  std::vector<TrainingExample> examples;   // aligned with grids
};

// One grid, label and training row per (clip, bitrate). Deterministic in
// seed regardless of ADASTREAM_THREADS.
SyntheticDataset generate_synthetic_dataset(int n, std::uint64_t seed,
                                            const SyntheticQualityParams& params,
                                            const std::vector<double>& bitrates_bps,
                                            double margin = kDefaultMarginJod,
                                            const ModeLadder& ladder = ModeLadder::standard());

struct ScenarioSpec {
  double duration_s = 10.0;
  double tick_hz = kMinReferenceTickHz;
  double fov_horizontal_deg = 90.0;
  double content_detail = 0.5;
  double mean_velocity_degps = 20.0;
  // Peak deviation of a slow sinusoidal sweep around the mean velocity.
  double velocity_swing_degps = 0.0;
  double swing_period_s = 4.0;
  std::vector<BitrateSegment> bitrate_schedule{BitrateSegment{0.0, Bitrate(3e6)}};
  std::uint64_t seed = 1;
};

Scenario synthesize_scenario(const ScenarioSpec& spec);

}  // namespace adastream

#endif  // ADASTREAM_SYNTHETIC_H_
