#ifndef ADASTREAM_SCENARIO_H_
#define ADASTREAM_SCENARIO_H_

#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "adastream/ladder.h"
#include "adastream/predictor.h"

namespace adastream {

// Scenarios must be sampled at least this often.
inline constexpr double kMinReferenceTickHz = 120.0;

struct BitrateSegment {
  double start_s = 0.0;
  Bitrate bitrate{1.0};
};

// One reference tick of recorded playback.
struct ScenarioFrame {
  double timestamp = 0.0;
  double mean_ndc_magnitude = 0.0;  // NDC units per reference tick
  ContentFeatures content;
};

// A scripted camera path: content, motion and the bandwidth available over
// time.
struct Scenario {
  double duration_s = 0.0;
  double fov_horizontal_deg = 90.0;
  // Detail level handed to the synthetic quality surface.
  double content_detail = 0.5;
  std::vector<BitrateSegment> bitrate_schedule;
  std::vector<ScenarioFrame> frames;

  // Throws ArgumentError for a non-positive duration, non-increasing
  // timestamps or a reference tick coarser than 120 Hz, and ConfigError for
  // a schedule that does not start at 0 or goes backwards.
  void validate() const;

  Bitrate bitrate_at(double t) const;
  // Index of the latest frame with timestamp <= t (the first frame before it).
  std::size_t frame_index_at(double t) const;
  // Seconds covered by reference frame i.
  double tick_interval(std::size_t i) const;
  // Velocity in deg/s carried by reference frame i.
  double velocity_at_frame(std::size_t i) const;
};

// JSON scenario file:
// {
//   "duration_s": 10, "fov_horizontal_deg": 90, "content_detail": 0.5,
//   "bitrate_schedule": [{"start_s": 0, "bits_per_second": 3e6}],
//   "features": {...},              // optional default content features
//   "frames": [{"t": 0.0, "mean_ndc_magnitude": 0.001,
//               "features": {...} | "patch_b64": "<128*128 gray bytes>"}]
// }
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);
void write_scenario(std::ostream& out, const Scenario& scenario);

std::vector<unsigned char> decode_base64(std::string_view text);
std::string encode_base64(const std::vector<unsigned char>& bytes);

}  // namespace adastream

#endif  // ADASTREAM_SCENARIO_H_
