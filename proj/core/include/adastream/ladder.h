#ifndef ADASTREAM_LADDER_H_
#define ADASTREAM_LADDER_H_

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace adastream {

inline constexpr int kNumFrameRates = 10;
inline constexpr int kNumResolutions = 5;
inline constexpr int kNumModes = kNumFrameRates * kNumResolutions;

struct FrameRate {
  int hz = 0;
  auto operator<=>(const FrameRate&) const = default;
};

// Vertical resolution in lines; the width follows from a 16:9 aspect ratio.
struct Resolution {
  int height = 0;
  int width() const;
  auto operator<=>(const Resolution&) const = default;
};

// 16·height/9 rounded to the nearest even integer (480 lines -> 854).
int width_for_height(int height);

class Bitrate {
 public:
  // Throws ArgumentError unless bits_per_second is finite and positive.
  explicit Bitrate(double bits_per_second);

  double bps() const { return bps_; }
  auto operator<=>(const Bitrate&) const = default;

 private:
  double bps_;
};

struct VideoMode {
  FrameRate frame_rate;
  Resolution resolution;

  bool operator==(const VideoMode&) const = default;
  std::string to_string() const;
};

// f·r² with r the number of lines. Exact.
std::int64_t objective_cost(const VideoMode& mode);

// hz × width × height. Exact.
std::int64_t pixels_per_second(const VideoMode& mode);

// The discrete (frame rate, resolution) ladder. Rungs are strictly
// increasing; the cardinalities are fixed because the predictor heads and
// quality grids are sized to them.
class ModeLadder {
 public:
  using FrameRates = std::array<int, kNumFrameRates>;
  using Heights = std::array<int, kNumResolutions>;

  ModeLadder(const FrameRates& frame_rates_hz, const Heights& heights);

  static const ModeLadder& standard();

  const FrameRates& frame_rates_hz() const { return frame_rates_; }
  const Heights& heights() const { return heights_; }

  FrameRate frame_rate(int index) const;
  Resolution resolution(int index) const;
  VideoMode mode(int frame_rate_index, int resolution_index) const;

  std::optional<int> find_frame_rate(FrameRate f) const;
  std::optional<int> find_resolution(Resolution r) const;
  // Throw ArgumentError for values off the ladder.
  int frame_rate_index(FrameRate f) const;
  int resolution_index(Resolution r) const;

  bool contains(const VideoMode& mode) const;

  // All 50 modes, frame-rate major.
  std::vector<VideoMode> modes() const;

  bool operator==(const ModeLadder&) const = default;

 private:
  FrameRates frame_rates_;
  Heights heights_;
};

// {2, 3, 4} Mbps.
std::vector<double> standard_bitrates_bps();

}  // namespace adastream

#endif  // ADASTREAM_LADDER_H_
