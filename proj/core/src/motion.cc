#include "adastream/motion.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "adastream/errors.h"

namespace adastream {

void MotionSample::validate() const {
  if (!(mean_ndc_magnitude >= 0.0) || !std::isfinite(mean_ndc_magnitude)) {
    throw ArgumentError("mean NDC magnitude must be finite and non-negative");
  }
  if (!(frame_interval > 0.0) || !std::isfinite(frame_interval)) {
    throw ArgumentError("frame interval must be positive");
  }
  if (!(fov_horizontal > 0.0 && fov_horizontal < 180.0)) {
    throw ArgumentError("horizontal field of view must lie in (0, 180) degrees");
  }
}

double ndc_to_deg_per_sec(const MotionSample& sample) {
  sample.validate();
  return sample.mean_ndc_magnitude * (sample.fov_horizontal / 2.0) / sample.frame_interval;
}

double normalize_velocity(double velocity_degps) {
  if (!(velocity_degps >= 0.0)) {
    throw ArgumentError("velocity must be non-negative");
  }
  const double capped = std::min(velocity_degps, kMaxTrackableVelocity);
  return std::log1p(capped) / std::log1p(kMaxTrackableVelocity);
}

VelocityEstimator::VelocityEstimator(double window_seconds) : window_seconds_(window_seconds) {
  if (!(window_seconds > 0.0)) throw ArgumentError("window must be positive");
}

double VelocityEstimator::update(double velocity_degps, double timestamp) {
  if (!(velocity_degps >= 0.0) || !std::isfinite(velocity_degps)) {
    throw ArgumentError("velocity must be finite and non-negative");
  }
  if (!window_.empty() && timestamp < window_.back().timestamp) {
    throw ArgumentError("timestamp " + std::to_string(timestamp) +
                        " precedes previous sample at " +
                        std::to_string(window_.back().timestamp));
  }
  while (!window_.empty() && timestamp - window_.front().timestamp > window_seconds_) {
    window_.pop_front();
  }
  window_.push_back({timestamp, velocity_degps});

  // Summed front to back so the result depends only on window contents.
  double sum = 0.0;
  for (const Entry& e : window_) sum += e.velocity;
  estimate_ = sum / static_cast<double>(window_.size());
  return estimate_;
}

}  // namespace adastream
