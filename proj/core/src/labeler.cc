#include "adastream/labeler.h"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "adastream/csv.h"
#include "adastream/errors.h"

namespace adastream {

ModeQuality select_max_quality(const QualityGrid& grid, const ModeFilter& allowed) {
  const ModeLadder& ladder = grid.ladder();
  bool found = false;
  ModeQuality best{};
  for (int fi = 0; fi < kNumFrameRates; ++fi) {
    for (int ri = 0; ri < kNumResolutions; ++ri) {
      const VideoMode mode = ladder.mode(fi, ri);
      if (allowed && !allowed(mode)) continue;
      const double q = grid.at(fi, ri);
      bool better = !found;
      if (found) {
        if (q != best.jod) {
          better = q > best.jod;
        } else if (objective_cost(mode) != objective_cost(best.mode)) {
          better = objective_cost(mode) < objective_cost(best.mode);
        } else {
          better = mode.frame_rate < best.mode.frame_rate;
        }
      }
      if (better) {
        best = ModeQuality{mode, q};
        found = true;
      }
    }
  }
  if (!found) throw ArgumentError("mode filter excludes every mode on the ladder");
  return best;
}

LabeledClip select_efficient(const QualityGrid& grid, double margin, const ModeFilter& allowed) {
  if (!(margin >= 0.0)) throw ArgumentError("margin must be non-negative");
  const ModeQuality best = select_max_quality(grid, allowed);
  const ModeLadder& ladder = grid.ladder();

  ModeQuality pick = best;
  for (int fi = 0; fi < kNumFrameRates; ++fi) {
    for (int ri = 0; ri < kNumResolutions; ++ri) {
      const VideoMode mode = ladder.mode(fi, ri);
      if (allowed && !allowed(mode)) continue;
      const double q = grid.at(fi, ri);
      if (best.jod - q > margin) continue;
      const auto key = std::make_tuple(objective_cost(mode), -q, mode.frame_rate.hz);
      const auto incumbent =
          std::make_tuple(objective_cost(pick.mode), -pick.jod, pick.mode.frame_rate.hz);
      if (key < incumbent) pick = ModeQuality{mode, q};
    }
  }

  LabeledClip label;
  label.clip_id = grid.clip_id();
  label.bitrate = grid.bitrate();
  label.velocity = grid.velocity();
  label.best_mode = best.mode;
  label.efficient_mode = pick.mode;
  label.q_star = best.jod;
  label.q_efficient = pick.jod;
  label.margin = margin;
  if (label.q_star - label.q_efficient > margin ||
      objective_cost(label.efficient_mode) > objective_cost(label.best_mode)) {
    throw Error("internal: efficient selection violates its constraint");
  }
  return label;
}

double savings_pct(const LabeledClip& label) {
  const double eff = static_cast<double>(pixels_per_second(label.efficient_mode));
  const double best = static_cast<double>(pixels_per_second(label.best_mode));
  return 100.0 * (1.0 - eff / best);
}

SavingsCurve savings_curve(std::span<const QualityGrid> grids, std::span<const double> margins) {
  if (grids.empty()) throw ArgumentError("savings curve needs at least one grid");
  for (std::size_t i = 0; i < margins.size(); ++i) {
    if (!(margins[i] >= 0.0)) throw ArgumentError("margins must be non-negative");
    if (i > 0 && margins[i] < margins[i - 1]) {
      throw ArgumentError("margins must be sorted ascending");
    }
  }

  SavingsCurve curve;
  curve.margins.assign(margins.begin(), margins.end());
  curve.overall.assign(margins.size(), 0.0);
  std::map<double, std::vector<double>> sums;
  for (const QualityGrid& grid : grids) {
    const double bps = grid.bitrate().bps();
    auto& row = sums[bps];
    row.resize(margins.size(), 0.0);
    ++curve.grids_per_bitrate[bps];
    for (std::size_t m = 0; m < margins.size(); ++m) {
      const double s = savings_pct(select_efficient(grid, margins[m]));
      row[m] += s;
      curve.overall[m] += s;
    }
  }
  for (auto& [bps, row] : sums) {
    const double n = static_cast<double>(curve.grids_per_bitrate[bps]);
    for (double& v : row) v /= n;
    curve.per_bitrate[bps] = row;
  }
  for (double& v : curve.overall) v /= static_cast<double>(grids.size());
  return curve;
}

void write_savings_curve_csv(std::ostream& out, const SavingsCurve& curve) {
  out << "bitrate_bps,margin_jod,mean_savings_pct,grids\n";
  for (const auto& [bps, row] : curve.per_bitrate) {
    for (std::size_t m = 0; m < curve.margins.size(); ++m) {
      out << format_double(bps) << ',' << format_double(curve.margins[m]) << ','
          << format_double(row[m]) << ',' << curve.grids_per_bitrate.at(bps) << '\n';
    }
  }
  std::size_t total = 0;
  for (const auto& [bps, n] : curve.grids_per_bitrate) total += n;
  for (std::size_t m = 0; m < curve.margins.size(); ++m) {
    out << "all," << format_double(curve.margins[m]) << ',' << format_double(curve.overall[m])
        << ',' << total << '\n';
  }
}

namespace {

// Linear-interpolated quantile of sorted values.
double quantile(const std::vector<double>& sorted, double p) {
  if (sorted.size() == 1) return sorted.front();
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double t = pos - static_cast<double>(lo);
  return sorted[lo] + t * (sorted[hi] - sorted[lo]);
}

}  // namespace

SelectionDistribution selection_distribution(std::span<const LabeledClip> labels) {
  if (labels.empty()) throw ArgumentError("selection distribution needs at least one label");
  std::vector<double> velocities;
  velocities.reserve(labels.size());
  for (const LabeledClip& l : labels) velocities.push_back(l.velocity);
  std::sort(velocities.begin(), velocities.end());

  SelectionDistribution dist;
  dist.lower_cut = quantile(velocities, 1.0 / 3.0);
  dist.upper_cut = quantile(velocities, 2.0 / 3.0);

  using Key = std::tuple<double, int, int, int>;  // bitrate, band, f, r
  std::map<Key, std::size_t> counts;
  for (const LabeledClip& l : labels) {
    int band = 0;
    if (l.velocity > dist.upper_cut) {
      band = 2;
    } else if (l.velocity > dist.lower_cut) {
      band = 1;
    }
    ++counts[Key{l.bitrate.bps(), band, l.efficient_mode.frame_rate.hz,
                 l.efficient_mode.resolution.height}];
  }
  for (const auto& [key, n] : counts) {
    const auto& [bps, band, hz, lines] = key;
    dist.buckets.push_back(
        DistributionBucket{VideoMode{FrameRate{hz}, Resolution{lines}}, band, bps, n});
  }
  return dist;
}

void write_distribution_csv(std::ostream& out, const SelectionDistribution& dist) {
  out << "bitrate_bps,velocity_band,frame_rate_hz,resolution_lines,count\n";
  for (const DistributionBucket& b : dist.buckets) {
    out << format_double(b.bitrate_bps) << ',' << b.velocity_band << ','
        << b.mode.frame_rate.hz << ',' << b.mode.resolution.height << ',' << b.count << '\n';
  }
}

void write_labels_csv(std::ostream& out, std::span<const LabeledClip> labels) {
  out << "clip_id,bitrate_bps,velocity_degps,best_f,best_r,eff_f,eff_r,q_star,q_eff,"
         "savings_pct\n";
  for (const LabeledClip& l : labels) {
    out << csv_escape(l.clip_id) << ',' << format_double(l.bitrate.bps()) << ','
        << format_double(l.velocity) << ',' << l.best_mode.frame_rate.hz << ','
        << l.best_mode.resolution.height << ',' << l.efficient_mode.frame_rate.hz << ','
        << l.efficient_mode.resolution.height << ',' << format_double(l.q_star) << ','
        << format_double(l.q_efficient) << ',' << format_double(savings_pct(l)) << '\n';
  }
}

}  // namespace adastream
