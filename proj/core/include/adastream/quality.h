#ifndef ADASTREAM_QUALITY_H_
#define ADASTREAM_QUALITY_H_

#include <array>
#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "adastream/ladder.h"

namespace adastream {

inline constexpr double kMaxJod = 10.0;

// JOD quality for every (frame rate, resolution) cell of one clip encoded at
// one bitrate. Immutable once constructed.
class QualityGrid {
 public:
  // Indexed [frame rate rung][resolution rung].
  using Table = std::array<std::array<double, kNumResolutions>, kNumFrameRates>;

  // Throws RangeError for JOD outside [0, 10] or negative velocity.
  QualityGrid(std::string clip_id, double velocity_degps, Bitrate bitrate, const Table& jod,
              const ModeLadder& ladder = ModeLadder::standard());

  const std::string& clip_id() const { return clip_id_; }
  double velocity() const { return velocity_; }
  Bitrate bitrate() const { return bitrate_; }
  const ModeLadder& ladder() const { return ladder_; }
  const Table& table() const { return jod_; }

  double at(int frame_rate_index, int resolution_index) const {
    return jod_[frame_rate_index][resolution_index];
  }
  double at(const VideoMode& mode) const;

  bool operator==(const QualityGrid&) const = default;

 private:
  std::string clip_id_;
  double velocity_;
  Bitrate bitrate_;
  Table jod_;
  ModeLadder ladder_;
};

// Parameters of the self-contained parametric quality surface. This surface
// is not a perceptual model; it exists so the pipeline runs without the
// rendered dataset.
struct SyntheticQualityParams {
  static constexpr double kReferenceRateHz = 166.0;

  double alpha_t = 1.0;           // JOD per (deg/s) per second of frame time
  double alpha_s = 2.0;           // JOD, spatial loss at zero resolution
  double alpha_c = 1.5;           // JOD per octave of bits-per-pixel shortfall
  double bpp_ref = 0.05;          // bits per pixel at which coding loss vanishes
  double spatial_exponent = 0.8;
  double content_detail = 0.5;    // [0, 1]

  void validate() const;
};

// Q = clamp(10 - L_t - L_s - L_c, 0, 10) with
//   L_t = alpha_t · min(v, 80) · (1/f - 1/166)
//   L_s = alpha_s · detail · (1 - (r/1080)^spatial_exponent)
//   L_c = alpha_c · max(0, log2(bpp_ref / bpp)) · (0.5 + 0.5·detail)
// where bpp = bitrate / (f · width · height).
double synthetic_quality(const VideoMode& mode, Bitrate bitrate, double velocity_degps,
                         const SyntheticQualityParams& params);

QualityGrid make_synthetic_grid(Bitrate bitrate, double velocity_degps,
                                const SyntheticQualityParams& params,
                                std::string clip_id = "synthetic",
                                const ModeLadder& ladder = ModeLadder::standard());

// Something that can score a mode under given encoding conditions.
class QualitySource {
 public:
  virtual ~QualitySource() = default;
  virtual double quality(const VideoMode& mode, Bitrate bitrate, double velocity_degps) const = 0;
};

class SyntheticQualitySource final : public QualitySource {
 public:
  explicit SyntheticQualitySource(SyntheticQualityParams params);
  double quality(const VideoMode& mode, Bitrate bitrate, double velocity_degps) const override;
  const SyntheticQualityParams& params() const { return params_; }

 private:
  SyntheticQualityParams params_;
};

// Quality-grid CSV, header
//   clip_id,velocity_degps,bitrate_bps,frame_rate_hz,resolution_lines,jod
// with 50 rows per (clip_id, bitrate_bps) group. Groups are returned in order
// of first appearance. Any error aborts the whole load.
std::vector<QualityGrid> read_grids(std::istream& in,
                                    const ModeLadder& ladder = ModeLadder::standard());
std::vector<QualityGrid> load_grids(const std::filesystem::path& path,
                                    const ModeLadder& ladder = ModeLadder::standard());
void write_grids(std::ostream& out, std::span<const QualityGrid> grids);

}  // namespace adastream

#endif  // ADASTREAM_QUALITY_H_
