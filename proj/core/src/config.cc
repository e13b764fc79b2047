#include "adastream/config.h"

#include <fstream>
#include <sstream>

#include "adastream/errors.h"
#include "json.hpp"

namespace adastream {

using nlohmann::json;

namespace {

template <std::size_t N>
std::array<int, N> int_array(const json& j, const char* key) {
  if (!j.is_array() || j.size() != N) {
    throw ConfigError(std::string(key) + " must list exactly " + std::to_string(N) + " values");
  }
  std::array<int, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = j[i].get<int>();
  return out;
}

std::vector<std::vector<double>> matrix(const json& j) {
  std::vector<std::vector<double>> m;
  for (const json& row : j) m.push_back(row.get<std::vector<double>>());
  return m;
}

}  // namespace

RunConfig parse_config(std::string_view json_text) {
  RunConfig cfg;
  try {
    const json j = json::parse(json_text);
    if (!j.is_object()) throw ConfigError("config must be a JSON object");

    if (j.contains("frame_rates") || j.contains("resolutions")) {
      const auto rates = j.contains("frame_rates")
                             ? int_array<kNumFrameRates>(j.at("frame_rates"), "frame_rates")
                             : cfg.ladder.frame_rates_hz();
      const auto heights = j.contains("resolutions")
                               ? int_array<kNumResolutions>(j.at("resolutions"), "resolutions")
                               : cfg.ladder.heights();
      cfg.ladder = ModeLadder(rates, heights);
      cfg.graph = default_transition_graph(cfg.ladder);
    }
    if (j.contains("bitrates")) {
      cfg.bitrates_bps = j.at("bitrates").get<std::vector<double>>();
      if (cfg.bitrates_bps.empty()) throw ConfigError("bitrates must not be empty");
      for (double b : cfg.bitrates_bps) static_cast<void>(Bitrate(b));
    }
    if (j.contains("viterbi")) {
      const json& v = j.at("viterbi");
      if (v.contains("frame_rate_weights")) cfg.graph.frame_rate = matrix(v.at("frame_rate_weights"));
      if (v.contains("resolution_weights")) cfg.graph.resolution = matrix(v.at("resolution_weights"));
      cfg.graph.decision_period_s = v.value("decision_period_s", cfg.graph.decision_period_s);
    }
    cfg.graph.validate(cfg.ladder);

    if (j.contains("synthetic_quality")) {
      const json& s = j.at("synthetic_quality");
      cfg.synthetic.alpha_t = s.value("alpha_t", cfg.synthetic.alpha_t);
      cfg.synthetic.alpha_s = s.value("alpha_s", cfg.synthetic.alpha_s);
      cfg.synthetic.alpha_c = s.value("alpha_c", cfg.synthetic.alpha_c);
      cfg.synthetic.bpp_ref = s.value("bpp_ref", cfg.synthetic.bpp_ref);
      cfg.synthetic.spatial_exponent = s.value("spatial_exponent", cfg.synthetic.spatial_exponent);
      cfg.synthetic.content_detail = s.value("content_detail", cfg.synthetic.content_detail);
    }
    cfg.synthetic.validate();

    if (j.contains("simulator")) {
      const json& s = j.at("simulator");
      cfg.session.iframe_ratio = s.value("iframe_ratio", cfg.session.iframe_ratio);
      cfg.session.jitter = s.value("jitter", cfg.session.jitter);
      cfg.session.jitter_fraction = s.value("jitter_fraction", cfg.session.jitter_fraction);
      cfg.session.initial_mode.frame_rate.hz =
          s.value("initial_frame_rate", cfg.session.initial_mode.frame_rate.hz);
      cfg.session.initial_mode.resolution.height =
          s.value("initial_resolution", cfg.session.initial_mode.resolution.height);
    }
    if (!cfg.ladder.contains(cfg.session.initial_mode)) {
      throw ConfigError("initial mode " + cfg.session.initial_mode.to_string() +
                        " is not on the ladder");
    }

    if (j.contains("training")) {
      const json& t = j.at("training");
      cfg.training.learning_rate = t.value("learning_rate", cfg.training.learning_rate);
      cfg.training.epochs = t.value("epochs", cfg.training.epochs);
      cfg.training.batch_size = t.value("batch_size", cfg.training.batch_size);
      if (t.contains("hidden_sizes")) {
        cfg.training.hidden_sizes = t.at("hidden_sizes").get<std::vector<int>>();
      }
    }
    cfg.margin_jod = j.value("margin_jod", cfg.margin_jod);
    if (!(cfg.margin_jod >= 0.0)) throw ConfigError("margin_jod must be non-negative");
    cfg.seed = j.value("seed", cfg.seed);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const ArgumentError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace adastream
