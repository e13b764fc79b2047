#include "adastream/scenario.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include "adastream/errors.h"
#include "adastream/motion.h"
#include "json.hpp"

namespace adastream {

using nlohmann::json;

void Scenario::validate() const {
  if (!(duration_s > 0.0) || !std::isfinite(duration_s)) {
    throw ArgumentError("scenario duration must be positive");
  }
  if (!(fov_horizontal_deg > 0.0 && fov_horizontal_deg < 180.0)) {
    throw ArgumentError("scenario field of view must lie in (0, 180) degrees");
  }
  if (!(content_detail >= 0.0 && content_detail <= 1.0)) {
    throw ArgumentError("scenario content_detail must lie in [0, 1]");
  }
  if (bitrate_schedule.empty() || bitrate_schedule.front().start_s != 0.0) {
    throw ConfigError("bitrate schedule must start at t = 0");
  }
  for (std::size_t i = 1; i < bitrate_schedule.size(); ++i) {
    if (bitrate_schedule[i].start_s < bitrate_schedule[i - 1].start_s) {
      throw ConfigError("bitrate schedule times must be nondecreasing");
    }
  }
  if (frames.size() < 2) throw ArgumentError("scenario needs at least two frames");
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (i > 0 && !(frames[i].timestamp > frames[i - 1].timestamp)) {
      throw ArgumentError("scenario timestamps must be strictly increasing");
    }
    if (!(frames[i].mean_ndc_magnitude >= 0.0)) {
      throw ArgumentError("scenario motion magnitude must be non-negative");
    }
  }
  const double span = frames.back().timestamp - frames.front().timestamp;
  const double mean_tick = span / static_cast<double>(frames.size() - 1);
  // 0.1% slack for timestamps written with limited precision.
  if (mean_tick > (1.0 / kMinReferenceTickHz) * 1.001) {
    throw ArgumentError("scenario reference tick must be at least 120 Hz");
  }
}

Bitrate Scenario::bitrate_at(double t) const {
  const BitrateSegment* current = &bitrate_schedule.front();
  for (const BitrateSegment& s : bitrate_schedule) {
    if (s.start_s <= t + 1e-12) current = &s;
  }
  return current->bitrate;
}

std::size_t Scenario::frame_index_at(double t) const {
  auto it = std::upper_bound(frames.begin(), frames.end(), t + 1e-12,
                             [](double v, const ScenarioFrame& f) { return v < f.timestamp; });
  if (it == frames.begin()) return 0;
  return static_cast<std::size_t>(it - frames.begin()) - 1;
}

double Scenario::tick_interval(std::size_t i) const {
  if (i == 0) return frames[1].timestamp - frames[0].timestamp;
  return frames[i].timestamp - frames[i - 1].timestamp;
}

double Scenario::velocity_at_frame(std::size_t i) const {
  return ndc_to_deg_per_sec(
      MotionSample{frames[i].mean_ndc_magnitude, tick_interval(i), fov_horizontal_deg});
}

// ---------------------------------------------------------------------------
// base64

namespace {

constexpr std::string_view kAlphabet =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

int decode_char(char c) {
  if (c >= 'A' && c <= 'Z') return c - 'A';
  if (c >= 'a' && c <= 'z') return c - 'a' + 26;
  if (c >= '0' && c <= '9') return c - '0' + 52;
  if (c == '+') return 62;
  if (c == '/') return 63;
  return -1;
}

}  // namespace

std::vector<unsigned char> decode_base64(std::string_view text) {
  std::vector<unsigned char> out;
  out.reserve(text.size() * 3 / 4);
  unsigned buffer = 0;
  int bits = 0;
  for (char c : text) {
    if (c == '=' ) break;
    if (c == '\n' || c == '\r' || c == ' ') continue;
    const int v = decode_char(c);
    if (v < 0) throw DataError("invalid base64 character");
    buffer = (buffer << 6) | static_cast<unsigned>(v);
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out.push_back(static_cast<unsigned char>((buffer >> bits) & 0xFF));
    }
  }
  return out;
}

std::string encode_base64(const std::vector<unsigned char>& bytes) {
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 2 < bytes.size(); i += 3) {
    const unsigned v = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
    out.push_back(kAlphabet[(v >> 18) & 63]);
    out.push_back(kAlphabet[(v >> 12) & 63]);
    out.push_back(kAlphabet[(v >> 6) & 63]);
    out.push_back(kAlphabet[v & 63]);
  }
  if (i < bytes.size()) {
    unsigned v = bytes[i] << 16;
    if (i + 1 < bytes.size()) v |= bytes[i + 1] << 8;
    out.push_back(kAlphabet[(v >> 18) & 63]);
    out.push_back(kAlphabet[(v >> 12) & 63]);
    out.push_back(i + 1 < bytes.size() ? kAlphabet[(v >> 6) & 63] : '=');
    out.push_back('=');
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

ContentFeatures features_from_json(const json& j) {
  ContentFeatures c;
  c.mean_luma = j.at("mean_luma").get<double>();
  c.rms_contrast = j.at("rms_contrast").get<double>();
  c.gradient_energy = j.at("gradient_energy").get<double>();
  c.high_freq_ratio = j.at("high_freq_ratio").get<double>();
  c.edge_density = j.at("edge_density").get<double>();
  FeatureVector probe;
  probe.content = c;
  probe.validate();
  return c;
}

json features_to_json(const ContentFeatures& c) {
  return json{{"mean_luma", c.mean_luma},
              {"rms_contrast", c.rms_contrast},
              {"gradient_energy", c.gradient_energy},
              {"high_freq_ratio", c.high_freq_ratio},
              {"edge_density", c.edge_density}};
}

ContentFeatures features_from_patch(const std::string& b64) {
  const std::vector<unsigned char> bytes = decode_base64(b64);
  if (bytes.size() != static_cast<std::size_t>(kPatchSize) * kPatchSize) {
    throw DataError("patch_b64 must decode to 128x128 grayscale bytes");
  }
  std::vector<double> values(bytes.size());
  std::transform(bytes.begin(), bytes.end(), values.begin(),
                 [](unsigned char b) { return b / 255.0; });
  return extract_features(LumaPatch(std::move(values)));
}

}  // namespace

Scenario parse_scenario(std::string_view json_text) {
  Scenario s;
  try {
    const json j = json::parse(json_text);
    s.duration_s = j.at("duration_s").get<double>();
    s.fov_horizontal_deg = j.value("fov_horizontal_deg", 90.0);
    s.content_detail = j.value("content_detail", 0.5);
    for (const json& seg : j.at("bitrate_schedule")) {
      s.bitrate_schedule.push_back(
          BitrateSegment{seg.at("start_s").get<double>(), Bitrate(seg.at("bits_per_second").get<double>())});
    }
    std::optional<ContentFeatures> defaults;
    if (j.contains("features")) defaults = features_from_json(j.at("features"));
    for (const json& fj : j.at("frames")) {
      ScenarioFrame f;
      f.timestamp = fj.at("t").get<double>();
      f.mean_ndc_magnitude = fj.at("mean_ndc_magnitude").get<double>();
      if (fj.contains("features")) {
        f.content = features_from_json(fj.at("features"));
      } else if (fj.contains("patch_b64")) {
        f.content = features_from_patch(fj.at("patch_b64").get<std::string>());
      } else if (defaults) {
        f.content = *defaults;
      } else {
        throw DataError("frame at t=" + std::to_string(f.timestamp) +
                        " has neither features nor patch_b64");
      }
      s.frames.push_back(f);
    }
    s.validate();
  } catch (const json::exception& e) {
    throw DataError(std::string("scenario: ") + e.what());
  } catch (const ArgumentError& e) {
    throw DataError(std::string("scenario: ") + e.what());
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

void write_scenario(std::ostream& out, const Scenario& scenario) {
  json j;
  j["duration_s"] = scenario.duration_s;
  j["fov_horizontal_deg"] = scenario.fov_horizontal_deg;
  j["content_detail"] = scenario.content_detail;
  j["bitrate_schedule"] = json::array();
  for (const BitrateSegment& seg : scenario.bitrate_schedule) {
    j["bitrate_schedule"].push_back({{"start_s", seg.start_s}, {"bits_per_second", seg.bitrate.bps()}});
  }
  // Hoist content shared by every frame into the scenario-level default.
  const bool uniform_content =
      std::all_of(scenario.frames.begin(), scenario.frames.end(), [&](const ScenarioFrame& f) {
        return f.content == scenario.frames.front().content;
      });
  if (uniform_content && !scenario.frames.empty()) {
    j["features"] = features_to_json(scenario.frames.front().content);
  }
  j["frames"] = json::array();
  for (const ScenarioFrame& f : scenario.frames) {
    json fj{{"t", f.timestamp}, {"mean_ndc_magnitude", f.mean_ndc_magnitude}};
    if (!uniform_content) fj["features"] = features_to_json(f.content);
    j["frames"].push_back(std::move(fj));
  }
  out << j.dump(1) << '\n';
}

}  // namespace adastream
