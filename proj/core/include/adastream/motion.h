#ifndef ADASTREAM_MOTION_H_
#define ADASTREAM_MOTION_H_

#include <deque>

namespace adastream {

// Smooth pursuit eye movement cannot track faster than this (deg/s).
inline constexpr double kMaxTrackableVelocity = 80.0;
inline constexpr double kVelocityWindowSeconds = 0.5;

struct MotionSample {
  double mean_ndc_magnitude = 0.0;  // NDC units per frame
  double frame_interval = 0.0;      // seconds
  double fov_horizontal = 90.0;     // degrees

  void validate() const;
};

// NDC spans two units across the horizontal field of view, so one NDC unit
// is fov/2 degrees under a small-angle linearization.
double ndc_to_deg_per_sec(const MotionSample& sample);

// ln(1 + min(v, 80)) / ln(81): 0 -> 0, 80 and above -> 1.
double normalize_velocity(double velocity_degps);

// Unweighted moving average over the last 500 ms of velocity samples.
class VelocityEstimator {
 public:
  explicit VelocityEstimator(double window_seconds = kVelocityWindowSeconds);

  // Evicts samples older than the window relative to timestamp, appends the
  // new sample and returns the window mean. Throws ArgumentError when
  // timestamps go backwards or velocity is negative.
  double update(double velocity_degps, double timestamp);

  double estimate() const { return estimate_; }
  std::size_t sample_count() const { return window_.size(); }

 private:
  struct Entry {
    double timestamp;
    double velocity;
  };

  double window_seconds_;
  std::deque<Entry> window_;
  double estimate_ = 0.0;
};

}  // namespace adastream

#endif  // ADASTREAM_MOTION_H_
