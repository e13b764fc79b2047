#include "adastream/quality.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <utility>

#include "adastream/csv.h"
#include "adastream/errors.h"
#include "adastream/motion.h"

namespace adastream {

namespace {

void check_jod(double jod, const std::string& where) {
  if (!std::isfinite(jod) || jod < 0.0 || jod > kMaxJod) {
    throw RangeError(where + ": JOD " + format_double(jod) + " outside [0, 10]");
  }
}

}  // namespace

QualityGrid::QualityGrid(std::string clip_id, double velocity_degps, Bitrate bitrate,
                         const Table& jod, const ModeLadder& ladder)
    : clip_id_(std::move(clip_id)),
      velocity_(velocity_degps),
      bitrate_(bitrate),
      jod_(jod),
      ladder_(ladder) {
  if (!std::isfinite(velocity_) || velocity_ < 0.0) {
    throw RangeError("clip '" + clip_id_ + "': velocity must be non-negative");
  }
  for (int fi = 0; fi < kNumFrameRates; ++fi) {
    for (int ri = 0; ri < kNumResolutions; ++ri) {
      check_jod(jod_[fi][ri], "clip '" + clip_id_ + "' " + ladder_.mode(fi, ri).to_string());
    }
  }
}

double QualityGrid::at(const VideoMode& mode) const {
  return jod_[ladder_.frame_rate_index(mode.frame_rate)]
             [ladder_.resolution_index(mode.resolution)];
}

void SyntheticQualityParams::validate() const {
  if (!(alpha_t >= 0.0 && alpha_s >= 0.0 && alpha_c >= 0.0)) {
    throw ArgumentError("synthetic quality weights must be non-negative");
  }
  if (!(bpp_ref > 0.0)) throw ArgumentError("bpp_ref must be positive");
  if (!(spatial_exponent > 0.0)) throw ArgumentError("spatial_exponent must be positive");
  if (!(content_detail >= 0.0 && content_detail <= 1.0)) {
    throw ArgumentError("content_detail must lie in [0, 1]");
  }
}

double synthetic_quality(const VideoMode& mode, Bitrate bitrate, double velocity_degps,
                         const SyntheticQualityParams& params) {
  if (!(velocity_degps >= 0.0)) throw ArgumentError("velocity must be non-negative");
  params.validate();

  const double f = mode.frame_rate.hz;
  const double r = mode.resolution.height;
  const double w = mode.resolution.width();
  const double effective_velocity = std::min(velocity_degps, kMaxTrackableVelocity);

  const double temporal_loss = params.alpha_t * effective_velocity *
                               (1.0 / f - 1.0 / SyntheticQualityParams::kReferenceRateHz);
  const double spatial_loss = params.alpha_s * params.content_detail *
                              (1.0 - std::pow(r / 1080.0, params.spatial_exponent));
  const double bpp = bitrate.bps() / (f * w * r);
  const double coding_loss = params.alpha_c * std::max(0.0, std::log2(params.bpp_ref / bpp)) *
                             (0.5 + 0.5 * params.content_detail);

  return std::clamp(kMaxJod - temporal_loss - spatial_loss - coding_loss, 0.0, kMaxJod);
}

QualityGrid make_synthetic_grid(Bitrate bitrate, double velocity_degps,
                                const SyntheticQualityParams& params, std::string clip_id,
                                const ModeLadder& ladder) {
  QualityGrid::Table table{};
  for (int fi = 0; fi < kNumFrameRates; ++fi) {
    for (int ri = 0; ri < kNumResolutions; ++ri) {
      table[fi][ri] = synthetic_quality(ladder.mode(fi, ri), bitrate, velocity_degps, params);
    }
  }
  return QualityGrid(std::move(clip_id), velocity_degps, bitrate, table, ladder);
}

SyntheticQualitySource::SyntheticQualitySource(SyntheticQualityParams params)
    : params_(params) {
  params_.validate();
}

double SyntheticQualitySource::quality(const VideoMode& mode, Bitrate bitrate,
                                       double velocity_degps) const {
  return synthetic_quality(mode, bitrate, velocity_degps, params_);
}

std::vector<QualityGrid> read_grids(std::istream& in, const ModeLadder& ladder) {
  CsvReader reader(in);
  const std::size_t c_clip = reader.column("clip_id");
  const std::size_t c_vel = reader.column("velocity_degps");
  const std::size_t c_bps = reader.column("bitrate_bps");
  const std::size_t c_f = reader.column("frame_rate_hz");
  const std::size_t c_r = reader.column("resolution_lines");
  const std::size_t c_jod = reader.column("jod");

  struct Group {
    std::string clip_id;
    double bitrate;
    double velocity;
    std::size_t first_line;
    std::array<std::array<std::optional<double>, kNumResolutions>, kNumFrameRates> cells{};
  };
  std::vector<Group> groups;
  std::map<std::pair<std::string, double>, std::size_t> index;

  std::vector<std::string> row;
  while (reader.next(row)) {
    const std::size_t line = reader.line();
    const double velocity = parse_double(row[c_vel], line, "velocity_degps");
    const double bps = parse_double(row[c_bps], line, "bitrate_bps");
    const long long hz = parse_int(row[c_f], line, "frame_rate_hz");
    const long long lines = parse_int(row[c_r], line, "resolution_lines");
    const double jod = parse_double(row[c_jod], line, "jod");

    if (bps <= 0.0) throw RangeError("line " + std::to_string(line) + ": bitrate must be positive");
    if (velocity < 0.0) {
      throw RangeError("line " + std::to_string(line) + ": velocity must be non-negative");
    }
    if (jod < 0.0 || jod > kMaxJod) {
      throw RangeError("line " + std::to_string(line) + ": JOD " + format_double(jod) +
                       " outside [0, 10]");
    }
    const auto fi = ladder.find_frame_rate(FrameRate{static_cast<int>(hz)});
    const auto ri = ladder.find_resolution(Resolution{static_cast<int>(lines)});
    if (!fi || !ri) {
      throw ParseError("mode " + std::to_string(hz) + " Hz x " + std::to_string(lines) +
                           " lines is not on the ladder",
                       line);
    }

    auto key = std::make_pair(row[c_clip], bps);
    auto [it, inserted] = index.emplace(key, groups.size());
    if (inserted) groups.push_back(Group{row[c_clip], bps, velocity, line, {}});
    Group& g = groups[it->second];
    if (g.velocity != velocity) {
      throw ParseError("clip '" + g.clip_id + "' has inconsistent velocity within a group", line);
    }
    auto& cell = g.cells[*fi][*ri];
    if (cell) {
      throw ParseError("duplicate cell for clip '" + g.clip_id + "' at " +
                           ladder.mode(*fi, *ri).to_string(),
                       line);
    }
    cell = jod;
  }

  std::vector<QualityGrid> grids;
  grids.reserve(groups.size());
  for (const Group& g : groups) {
    QualityGrid::Table table{};
    for (int fi = 0; fi < kNumFrameRates; ++fi) {
      for (int ri = 0; ri < kNumResolutions; ++ri) {
        if (!g.cells[fi][ri]) {
          throw IncompleteGridError("incomplete grid: clip '" + g.clip_id + "' at " +
                                    format_double(g.bitrate) + " bps is missing (f=" +
                                    std::to_string(ladder.frame_rate(fi).hz) +
                                    ", r=" + std::to_string(ladder.resolution(ri).height) + ")");
        }
        table[fi][ri] = *g.cells[fi][ri];
      }
    }
    grids.emplace_back(g.clip_id, g.velocity, Bitrate(g.bitrate), table, ladder);
  }
  return grids;
}

std::vector<QualityGrid> load_grids(const std::filesystem::path& path, const ModeLadder& ladder) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open quality grid file " + path.string());
  return read_grids(in, ladder);
}

void write_grids(std::ostream& out, std::span<const QualityGrid> grids) {
  out << "clip_id,velocity_degps,bitrate_bps,frame_rate_hz,resolution_lines,jod\n";
  for (const QualityGrid& g : grids) {
    const std::string prefix = csv_escape(g.clip_id()) + "," + format_double(g.velocity()) +
                               "," + format_double(g.bitrate().bps()) + ",";
    for (int fi = 0; fi < kNumFrameRates; ++fi) {
      for (int ri = 0; ri < kNumResolutions; ++ri) {
        out << prefix << g.ladder().frame_rate(fi).hz << ','
            << g.ladder().resolution(ri).height << ',' << format_double(g.at(fi, ri)) << '\n';
      }
    }
  }
}

}  // namespace adastream
