#ifndef ADASTREAM_CONFIG_H_
#define ADASTREAM_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include "adastream/controller.h"
#include "adastream/labeler.h"
#include "adastream/ladder.h"
#include "adastream/predictor.h"
#include "adastream/quality.h"
#include "adastream/simulator.h"

namespace adastream {

// Everything a run can override. Defaults reproduce the built-in ladder,
// transition graph and synthetic surface.
struct RunConfig {
  ModeLadder ladder = ModeLadder::standard();
  std::vector<double> bitrates_bps = standard_bitrates_bps();
  TransitionGraph graph = default_transition_graph();
  SyntheticQualityParams synthetic;
  SessionOptions session;
  TrainConfig training;
  double margin_jod = kDefaultMarginJod;
  std::uint64_t seed = 1;
};

// JSON keys (all optional):
//   resolutions, frame_rates, bitrates
//   viterbi.frame_rate_weights, viterbi.resolution_weights, viterbi.decision_period_s
//   synthetic_quality.{alpha_t, alpha_s, alpha_c, bpp_ref, spatial_exponent}
//   simulator.{iframe_ratio, jitter, jitter_fraction, initial_frame_rate, initial_resolution}
//   training.{learning_rate, epochs, batch_size, hidden_sizes}
//   margin_jod, seed
// Throws ConfigError on malformed or invalid content.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace adastream

#endif  // ADASTREAM_CONFIG_H_
