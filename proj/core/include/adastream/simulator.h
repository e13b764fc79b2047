#ifndef ADASTREAM_SIMULATOR_H_
#define ADASTREAM_SIMULATOR_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "adastream/controller.h"
#include "adastream/labeler.h"
#include "adastream/ladder.h"
#include "adastream/predictor.h"
#include "adastream/quality.h"
#include "adastream/scenario.h"

namespace adastream {

inline constexpr double kDefaultIFrameRatio = 4.0;

struct EncoderState {
  VideoMode current_mode;
  double gop_length = kDefaultDecisionPeriodSeconds;
  double gop_position = 0.0;
  Bitrate target_bitrate{1.0};
  bool pending_iframe = true;
};

// CBR budget for one GOP: the I-frame gets iframe_ratio times a P-frame's
// share and the P-frames split the rest evenly. The total equals
// round(target × gop_length) exactly; the rounding residue lands on the last
// P-frame. Throws ArgumentError for frames_in_gop < 1.
std::vector<std::int64_t> allocate_bits(const EncoderState& encoder, int frames_in_gop,
                                        double iframe_ratio = kDefaultIFrameRatio);

struct FrameRecord {
  double timestamp = 0.0;
  VideoMode mode;
  std::int64_t frame_bits = 0;
  bool is_iframe = false;
  int gop_index = 0;
};

struct WindowRecord {
  double start_s = 0.0;
  VideoMode mode;
  double bitrate_bps = 0.0;
  double velocity_degps = 0.0;
  double mean_quality_jod = 0.0;
  std::int64_t pixels_per_second = 0;
};

struct SessionSummary {
  double target_bitrate = 0.0;    // time-weighted mean of GOP targets
  double achieved_bitrate = 0.0;
  double bitrate_error_pct = 0.0;
  std::int64_t total_pixels = 0;
  int switch_count_f = 0;
  int switch_count_r = 0;
  double mean_quality_jod = 0.0;
  double mean_pixels_per_second = 0.0;
};

struct SessionTrace {
  std::vector<FrameRecord> frames;
  std::vector<WindowRecord> windows;
  SessionSummary summary;
};

struct SessionOptions {
  VideoMode initial_mode{FrameRate{60}, Resolution{720}};
  double iframe_ratio = kDefaultIFrameRatio;
  // Per-frame size noise, uniform in ±jitter_fraction, drawn from seed.
  bool jitter = false;
  double jitter_fraction = 0.1;
  std::uint64_t seed = 0;
};

// Closed-loop session: every encoded frame samples the scenario, updates
// the velocity estimate, runs the predictor and steps the controller. One
// GOP spans one decision period, so mode changes (and the I-frame a
// resolution change requires) land on GOP boundaries. Only whole GOPs are
// simulated; the schedule is re-read at each GOP start.
//
// Throws ArgumentError when the scenario is shorter than one GOP.
SessionTrace run_session(const Scenario& scenario, const ModePredictor& predictor,
                         const TransitionGraph& graph, const QualitySource& quality,
                         const SessionOptions& options = {},
                         const ModeLadder& ladder = ModeLadder::standard());

// Mean smoothed velocity per window of period seconds, estimated on the
// scenario's reference ticks.
std::vector<double> window_velocities(const Scenario& scenario, double period_s);

struct PolicyReport {
  std::string name;
  std::vector<WindowRecord> windows;
  double mean_quality_jod = 0.0;
  double mean_pixels_per_second = 0.0;
  int switch_count_f = 0;
  int switch_count_r = 0;
};

struct BaselineComparison {
  PolicyReport fixed;                // 720p60 below 5 Mbps, 1080p60 otherwise
  PolicyReport resolution_adaptive;  // efficient selection restricted to 60 Hz
  PolicyReport full_adaptive;        // efficient selection over the full ladder
};

// Streaming-service default for a bitrate.
VideoMode fixed_baseline_mode(Bitrate bitrate);

BaselineComparison compare_baselines(const Scenario& scenario, const QualitySource& quality,
                                     double margin = kDefaultMarginJod,
                                     double period_s = kDefaultDecisionPeriodSeconds,
                                     const ModeLadder& ladder = ModeLadder::standard());

// timestamp_s,frame_rate_hz,resolution_lines,frame_bits,is_iframe,gop_index
void write_trace_csv(std::ostream& out, const SessionTrace& trace);
// start_s,frame_rate_hz,resolution_lines,bitrate_bps,velocity_degps,mean_quality_jod,pixels_per_second
void write_windows_csv(std::ostream& out, const std::vector<WindowRecord>& windows);
std::string summary_json(const SessionSummary& summary);
std::string comparison_json(const BaselineComparison& comparison);

}  // namespace adastream

#endif  // ADASTREAM_SIMULATOR_H_
