#include "adastream/simulator.h"

#include <algorithm>
#include <cmath>

#include "adastream/csv.h"
#include "adastream/errors.h"
#include "adastream/motion.h"
#include "adastream/random.h"
#include "json.hpp"

namespace adastream {

using nlohmann::json;

std::vector<std::int64_t> allocate_bits(const EncoderState& encoder, int frames_in_gop,
                                        double iframe_ratio) {
  if (frames_in_gop < 1) throw ArgumentError("a GOP needs at least one frame");
  if (!(iframe_ratio > 0.0)) throw ArgumentError("I-frame ratio must be positive");
  const auto total =
      static_cast<std::int64_t>(std::llround(encoder.target_bitrate.bps() * encoder.gop_length));
  if (total < frames_in_gop) throw ArgumentError("GOP budget is smaller than one bit per frame");
  if (frames_in_gop == 1) return {total};

  const double shares = iframe_ratio + static_cast<double>(frames_in_gop - 1);
  const auto iframe = static_cast<std::int64_t>(
      std::llround(iframe_ratio * static_cast<double>(total) / shares));
  const std::int64_t p_frames = frames_in_gop - 1;
  const std::int64_t p_bits = (total - iframe) / p_frames;

  std::vector<std::int64_t> bits(static_cast<std::size_t>(frames_in_gop), p_bits);
  bits.front() = iframe;
  bits.back() += (total - iframe) - p_bits * p_frames;
  return bits;
}

std::vector<double> window_velocities(const Scenario& scenario, double period_s) {
  const auto n_windows = static_cast<std::size_t>(std::floor(scenario.duration_s / period_s + 1e-9));
  std::vector<double> sums(n_windows, 0.0);
  std::vector<std::size_t> counts(n_windows, 0);
  VelocityEstimator estimator;
  double last = 0.0;
  for (std::size_t i = 0; i < scenario.frames.size(); ++i) {
    const double t = scenario.frames[i].timestamp;
    last = estimator.update(scenario.velocity_at_frame(i), t);
    const auto w = static_cast<std::size_t>(std::floor(t / period_s + 1e-9));
    if (t < 0.0 || w >= n_windows) continue;
    sums[w] += last;
    ++counts[w];
  }
  std::vector<double> out(n_windows, last);
  for (std::size_t w = 0; w < n_windows; ++w) {
    if (counts[w] > 0) {
      out[w] = sums[w] / static_cast<double>(counts[w]);
    } else if (w > 0) {
      out[w] = out[w - 1];
    }
  }
  return out;
}

namespace {

int frames_per_gop(const VideoMode& mode, double period_s) {
  const double exact = mode.frame_rate.hz * period_s;
  const auto n = static_cast<int>(std::llround(exact));
  if (std::abs(exact - n) > 1e-6 || n < 1) {
    throw ConfigError("a " + std::to_string(period_s) + " s GOP does not hold a whole number of " +
                      std::to_string(mode.frame_rate.hz) + " Hz frames");
  }
  return n;
}

std::size_t whole_gops(const Scenario& scenario, double period_s) {
  const double n = std::floor(scenario.duration_s / period_s + 1e-9);
  if (n < 1.0) {
    throw ArgumentError("scenario (" + std::to_string(scenario.duration_s) +
                        " s) is shorter than one GOP");
  }
  return static_cast<std::size_t>(n);
}

QualityGrid grid_from_source(const QualitySource& quality, Bitrate bitrate, double velocity,
                             const ModeLadder& ladder) {
  QualityGrid::Table table{};
  for (int fi = 0; fi < kNumFrameRates; ++fi) {
    for (int ri = 0; ri < kNumResolutions; ++ri) {
      table[fi][ri] = std::clamp(quality.quality(ladder.mode(fi, ri), bitrate, velocity), 0.0, kMaxJod);
    }
  }
  return QualityGrid("window", velocity, bitrate, table, ladder);
}

void finish_policy(PolicyReport& report) {
  double q = 0.0;
  double pps = 0.0;
  for (std::size_t i = 0; i < report.windows.size(); ++i) {
    q += report.windows[i].mean_quality_jod;
    pps += static_cast<double>(report.windows[i].pixels_per_second);
    if (i > 0) {
      const VideoMode& a = report.windows[i - 1].mode;
      const VideoMode& b = report.windows[i].mode;
      if (a.frame_rate != b.frame_rate) ++report.switch_count_f;
      if (a.resolution != b.resolution) ++report.switch_count_r;
    }
  }
  const auto n = static_cast<double>(report.windows.size());
  report.mean_quality_jod = q / n;
  report.mean_pixels_per_second = pps / n;
}

}  // namespace

SessionTrace run_session(const Scenario& scenario, const ModePredictor& predictor,
                         const TransitionGraph& graph, const QualitySource& quality,
                         const SessionOptions& options, const ModeLadder& ladder) {
  scenario.validate();
  graph.validate(ladder);
  const double period = graph.decision_period_s;
  const std::size_t n_gops = whole_gops(scenario, period);
  const std::vector<double> velocities = window_velocities(scenario, period);

  ModeController controller(graph, options.initial_mode, ladder);
  VelocityEstimator estimator;
  Rng jitter_rng(options.seed);

  SessionTrace trace;
  EncoderState encoder{options.initial_mode, period, 0.0, scenario.bitrate_at(0.0), true};
  std::int64_t total_bits = 0;
  double target_sum = 0.0;
  double quality_sum = 0.0;
  double pps_sum = 0.0;

  for (std::size_t g = 0; g < n_gops; ++g) {
    const double gop_start = static_cast<double>(g) * period;
    encoder.target_bitrate = scenario.bitrate_at(gop_start);
    encoder.gop_position = 0.0;
    // Every GOP opens with an I-frame; resolution changes only happen here.
    encoder.pending_iframe = true;
    const VideoMode mode = encoder.current_mode;
    const int n_frames = frames_per_gop(mode, period);
    const std::vector<std::int64_t> budget = allocate_bits(encoder, n_frames, options.iframe_ratio);
    const double dt = 1.0 / mode.frame_rate.hz;

    for (int i = 0; i < n_frames; ++i) {
      const double t = gop_start + i * dt;
      const std::size_t idx = scenario.frame_index_at(t);
      const double smoothed = estimator.update(scenario.velocity_at_frame(idx), t);
      const FeatureVector features =
          make_feature_vector(scenario.frames[idx].content, smoothed, encoder.target_bitrate);
      controller.step(predictor.predict(features), dt);

      std::int64_t bits = budget[static_cast<std::size_t>(i)];
      if (options.jitter) {
        const double noise = jitter_rng.uniform(-options.jitter_fraction, options.jitter_fraction);
        bits = std::max<std::int64_t>(1, std::llround(static_cast<double>(bits) * (1.0 + noise)));
      }
      const bool is_iframe = encoder.pending_iframe;
      encoder.pending_iframe = false;
      trace.frames.push_back(FrameRecord{t, mode, bits, is_iframe, static_cast<int>(g)});
      encoder.gop_position = (i + 1) * dt < period ? (i + 1) * dt : 0.0;
      total_bits += bits;
      trace.summary.total_pixels +=
          static_cast<std::int64_t>(mode.resolution.width()) * mode.resolution.height;
    }

    WindowRecord window;
    window.start_s = gop_start;
    window.mode = mode;
    window.bitrate_bps = encoder.target_bitrate.bps();
    window.velocity_degps = velocities[g];
    window.mean_quality_jod = quality.quality(mode, encoder.target_bitrate, velocities[g]);
    window.pixels_per_second = pixels_per_second(mode);
    trace.windows.push_back(window);
    target_sum += encoder.target_bitrate.bps();
    quality_sum += window.mean_quality_jod;
    pps_sum += static_cast<double>(window.pixels_per_second);

    if (g + 1 < n_gops) {
      const VideoMode next = controller.decide();
      if (next.frame_rate != mode.frame_rate) ++trace.summary.switch_count_f;
      if (next.resolution != mode.resolution) {
        ++trace.summary.switch_count_r;
        encoder.pending_iframe = true;
      }
      encoder.current_mode = next;
    }
  }

  const double n = static_cast<double>(n_gops);
  SessionSummary& s = trace.summary;
  s.target_bitrate = target_sum / n;
  s.achieved_bitrate = static_cast<double>(total_bits) / (n * period);
  s.bitrate_error_pct = 100.0 * std::abs(s.achieved_bitrate - s.target_bitrate) / s.target_bitrate;
  s.mean_quality_jod = quality_sum / n;
  s.mean_pixels_per_second = pps_sum / n;
  return trace;
}

VideoMode fixed_baseline_mode(Bitrate bitrate) {
  if (bitrate.bps() < 5e6) return VideoMode{FrameRate{60}, Resolution{720}};
  return VideoMode{FrameRate{60}, Resolution{1080}};
}

BaselineComparison compare_baselines(const Scenario& scenario, const QualitySource& quality,
                                     double margin, double period_s, const ModeLadder& ladder) {
  scenario.validate();
  if (!(margin >= 0.0)) throw ArgumentError("margin must be non-negative");
  if (!(period_s > 0.0)) throw ArgumentError("period must be positive");
  const std::size_t n = whole_gops(scenario, period_s);
  const std::vector<double> velocities = window_velocities(scenario, period_s);

  BaselineComparison out;
  out.fixed.name = "fixed";
  out.resolution_adaptive.name = "resolution_adaptive";
  out.full_adaptive.name = "full_adaptive";
  const ModeFilter sixty_hz = [](const VideoMode& m) { return m.frame_rate.hz == 60; };

  for (std::size_t g = 0; g < n; ++g) {
    const double start = static_cast<double>(g) * period_s;
    const Bitrate bitrate = scenario.bitrate_at(start);
    const double v = velocities[g];
    const QualityGrid grid = grid_from_source(quality, bitrate, v, ladder);

    auto record = [&](PolicyReport& report, const VideoMode& mode) {
      report.windows.push_back(WindowRecord{start, mode, bitrate.bps(), v,
                                            quality.quality(mode, bitrate, v),
                                            pixels_per_second(mode)});
    };
    record(out.fixed, fixed_baseline_mode(bitrate));
    record(out.resolution_adaptive, select_efficient(grid, margin, sixty_hz).efficient_mode);
    record(out.full_adaptive, select_efficient(grid, margin).efficient_mode);
  }
  finish_policy(out.fixed);
  finish_policy(out.resolution_adaptive);
  finish_policy(out.full_adaptive);
  return out;
}

void write_trace_csv(std::ostream& out, const SessionTrace& trace) {
  out << "timestamp_s,frame_rate_hz,resolution_lines,frame_bits,is_iframe,gop_index\n";
  for (const FrameRecord& f : trace.frames) {
    out << format_double(f.timestamp) << ',' << f.mode.frame_rate.hz << ','
        << f.mode.resolution.height << ',' << f.frame_bits << ',' << (f.is_iframe ? 1 : 0) << ','
        << f.gop_index << '\n';
  }
}

void write_windows_csv(std::ostream& out, const std::vector<WindowRecord>& windows) {
  out << "start_s,frame_rate_hz,resolution_lines,bitrate_bps,velocity_degps,mean_quality_jod,"
         "pixels_per_second\n";
  for (const WindowRecord& w : windows) {
    out << format_double(w.start_s) << ',' << w.mode.frame_rate.hz << ','
        << w.mode.resolution.height << ',' << format_double(w.bitrate_bps) << ','
        << format_double(w.velocity_degps) << ',' << format_double(w.mean_quality_jod) << ','
        << w.pixels_per_second << '\n';
  }
}

std::string summary_json(const SessionSummary& s) {
  const json j{{"target_bitrate_bps", s.target_bitrate},
               {"achieved_bitrate_bps", s.achieved_bitrate},
               {"bitrate_error_pct", s.bitrate_error_pct},
               {"total_pixels", s.total_pixels},
               {"switch_count_f", s.switch_count_f},
               {"switch_count_r", s.switch_count_r},
               {"mean_quality_jod", s.mean_quality_jod},
               {"mean_pixels_per_second", s.mean_pixels_per_second}};
  return j.dump(2);
}

std::string comparison_json(const BaselineComparison& c) {
  json j = json::object();
  for (const PolicyReport* p : {&c.fixed, &c.resolution_adaptive, &c.full_adaptive}) {
    json windows = json::array();
    for (const WindowRecord& w : p->windows) {
      windows.push_back({{"start_s", w.start_s},
                         {"frame_rate_hz", w.mode.frame_rate.hz},
                         {"resolution_lines", w.mode.resolution.height},
                         {"bitrate_bps", w.bitrate_bps},
                         {"velocity_degps", w.velocity_degps},
                         {"quality_jod", w.mean_quality_jod},
                         {"pixels_per_second", w.pixels_per_second}});
    }
    j[p->name] = {{"mean_quality_jod", p->mean_quality_jod},
                  {"mean_pixels_per_second", p->mean_pixels_per_second},
                  {"switch_count_f", p->switch_count_f},
                  {"switch_count_r", p->switch_count_r},
                  {"windows", std::move(windows)}};
  }
  return j.dump(2);
}

}  // namespace adastream
