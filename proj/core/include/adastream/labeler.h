#ifndef ADASTREAM_LABELER_H_
#define ADASTREAM_LABELER_H_

#include <functional>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "adastream/ladder.h"
#include "adastream/quality.h"

namespace adastream {

// A drop of 0.25 JOD from the best achievable quality is barely perceptible.
inline constexpr double kDefaultMarginJod = 0.25;

struct ModeQuality {
  VideoMode mode;
  double jod = 0.0;
};

struct LabeledClip {
  std::string clip_id;
  Bitrate bitrate{1.0};
  double velocity = 0.0;
  VideoMode best_mode;       // argmax quality
  VideoMode efficient_mode;  // cheapest mode within the margin of best
  double q_star = 0.0;
  double q_efficient = 0.0;
  double margin = kDefaultMarginJod;
};

// Restricts the candidate modes; an empty filter admits every mode.
using ModeFilter = std::function<bool(const VideoMode&)>;

// Highest-quality mode. Ties go to the lower objective cost, then the lower
// frame rate.
ModeQuality select_max_quality(const QualityGrid& grid, const ModeFilter& allowed = {});

// Among modes whose quality is within margin of the best, the one with the
// smallest f·r². Ties go to higher quality, then lower frame rate.
// Throws ArgumentError for a negative margin.
LabeledClip select_efficient(const QualityGrid& grid, double margin = kDefaultMarginJod,
                             const ModeFilter& allowed = {});

// 100·(1 − pixels/s of the efficient mode ÷ pixels/s of the best mode).
double savings_pct(const LabeledClip& label);

struct SavingsCurve {
  std::vector<double> margins;
  // Mean savings per margin, keyed by bitrate in bits per second.
  std::map<double, std::vector<double>> per_bitrate;
  std::map<double, std::size_t> grids_per_bitrate;
  // Mean over every grid regardless of bitrate.
  std::vector<double> overall;
};

// Throws ArgumentError for an empty grid list or negative / unsorted margins.
SavingsCurve savings_curve(std::span<const QualityGrid> grids, std::span<const double> margins);

void write_savings_curve_csv(std::ostream& out, const SavingsCurve& curve);

struct DistributionBucket {
  VideoMode mode;
  int velocity_band = 0;  // 0 slow, 1 medium, 2 fast
  double bitrate_bps = 0.0;
  std::size_t count = 0;
};

struct SelectionDistribution {
  // Velocity tercile cut points of the labelled population.
  double lower_cut = 0.0;
  double upper_cut = 0.0;
  std::vector<DistributionBucket> buckets;  // sorted by bitrate, band, f, r
};

// Histogram of efficient modes by (mode, velocity tercile, bitrate).
SelectionDistribution selection_distribution(std::span<const LabeledClip> labels);

void write_distribution_csv(std::ostream& out, const SelectionDistribution& dist);

// clip_id,bitrate_bps,velocity_degps,best_f,best_r,eff_f,eff_r,q_star,q_eff,savings_pct
void write_labels_csv(std::ostream& out, std::span<const LabeledClip> labels);

}  // namespace adastream

#endif  // ADASTREAM_LABELER_H_
