#include "adastream/ladder.h"

#include <cmath>

#include "adastream/errors.h"

namespace adastream {

int width_for_height(int height) {
  // round(8h/9) * 2, in integers.
  return 2 * ((16 * height + 9) / 18);
}

int Resolution::width() const { return width_for_height(height); }

Bitrate::Bitrate(double bits_per_second) : bps_(bits_per_second) {
  if (!std::isfinite(bits_per_second) || bits_per_second <= 0.0) {
    throw ArgumentError("bitrate must be positive, got " +
                        std::to_string(bits_per_second));
  }
}

std::string VideoMode::to_string() const {
  return std::to_string(frame_rate.hz) + "Hz@" +
         std::to_string(resolution.height) + "p";
}

std::int64_t objective_cost(const VideoMode& mode) {
  const std::int64_t f = mode.frame_rate.hz;
  const std::int64_t r = mode.resolution.height;
  return f * r * r;
}

std::int64_t pixels_per_second(const VideoMode& mode) {
  const std::int64_t f = mode.frame_rate.hz;
  const std::int64_t h = mode.resolution.height;
  const std::int64_t w = mode.resolution.width();
  return f * w * h;
}

namespace {

template <std::size_t N>
void check_increasing(const std::array<int, N>& values, const char* what) {
  for (std::size_t i = 0; i < N; ++i) {
    if (values[i] <= 0) {
      throw ConfigError(std::string(what) + " rungs must be positive");
    }
    if (i > 0 && values[i] <= values[i - 1]) {
      throw ConfigError(std::string(what) + " rungs must be strictly increasing");
    }
  }
}

}  // namespace

ModeLadder::ModeLadder(const FrameRates& frame_rates_hz, const Heights& heights)
    : frame_rates_(frame_rates_hz), heights_(heights) {
  check_increasing(frame_rates_, "frame rate");
  check_increasing(heights_, "resolution");
}

const ModeLadder& ModeLadder::standard() {
  static const ModeLadder ladder({30, 40, 50, 60, 70, 80, 90, 100, 110, 120},
                                 {360, 480, 720, 864, 1080});
  return ladder;
}

FrameRate ModeLadder::frame_rate(int index) const {
  if (index < 0 || index >= kNumFrameRates) {
    throw ArgumentError("frame rate index out of range: " + std::to_string(index));
  }
  return FrameRate{frame_rates_[index]};
}

Resolution ModeLadder::resolution(int index) const {
  if (index < 0 || index >= kNumResolutions) {
    throw ArgumentError("resolution index out of range: " + std::to_string(index));
  }
  return Resolution{heights_[index]};
}

VideoMode ModeLadder::mode(int frame_rate_index, int resolution_index) const {
  return VideoMode{frame_rate(frame_rate_index), resolution(resolution_index)};
}

std::optional<int> ModeLadder::find_frame_rate(FrameRate f) const {
  for (int i = 0; i < kNumFrameRates; ++i) {
    if (frame_rates_[i] == f.hz) return i;
  }
  return std::nullopt;
}

std::optional<int> ModeLadder::find_resolution(Resolution r) const {
  for (int i = 0; i < kNumResolutions; ++i) {
    if (heights_[i] == r.height) return i;
  }
  return std::nullopt;
}

int ModeLadder::frame_rate_index(FrameRate f) const {
  if (auto i = find_frame_rate(f)) return *i;
  throw ArgumentError("frame rate " + std::to_string(f.hz) + " Hz is not on the ladder");
}

int ModeLadder::resolution_index(Resolution r) const {
  if (auto i = find_resolution(r)) return *i;
  throw ArgumentError("resolution " + std::to_string(r.height) +
                      " lines is not on the ladder");
}

bool ModeLadder::contains(const VideoMode& mode) const {
  return find_frame_rate(mode.frame_rate) && find_resolution(mode.resolution);
}

std::vector<VideoMode> ModeLadder::modes() const {
  std::vector<VideoMode> out;
  out.reserve(kNumModes);
  for (int fi = 0; fi < kNumFrameRates; ++fi) {
    for (int ri = 0; ri < kNumResolutions; ++ri) {
      out.push_back(mode(fi, ri));
    }
  }
  return out;
}

std::vector<double> standard_bitrates_bps() { return {2e6, 3e6, 4e6}; }

}  // namespace adastream
