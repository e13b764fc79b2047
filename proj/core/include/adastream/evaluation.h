#ifndef ADASTREAM_EVALUATION_H_
#define ADASTREAM_EVALUATION_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adastream/ladder.h"
#include "adastream/metrics.h"
#include "adastream/predictor.h"

namespace adastream {

struct VelocityBandReport {
  std::string name;
  std::size_t count = 0;
  double error_f_pct = 0.0;  // NaN when the band is empty
  double error_r_pct = 0.0;
};

struct EvaluationReport {
  std::size_t count = 0;
  double error_f_pct = 0.0;
  double error_r_pct = 0.0;
  VideoMode majority_mode;
  double majority_error_f_pct = 0.0;
  double majority_error_r_pct = 0.0;
  ConfusionMatrix confusion_f;
  ConfusionMatrix confusion_r;
  std::vector<VelocityBandReport> bands;  // slow < 10, medium < 40, fast >= 40 deg/s
};

// Argmax class of each head, as ladder values.
VideoMode predict_mode(const ModePredictor& predictor, const FeatureVector& features,
                       const ModeLadder& ladder = ModeLadder::standard());

// Relative errors for both heads, confusion matrices and a per-velocity
// breakdown. The majority-class baseline uses majority when given, otherwise
// the most frequent targets of the evaluated set itself.
EvaluationReport evaluate_predictor(std::span<const TrainingExample> examples,
                                    const ModePredictor& predictor,
                                    const ModeLadder& ladder = ModeLadder::standard(),
                                    std::optional<VideoMode> majority = std::nullopt);

// Most frequent frame rate and resolution targets, taken independently.
VideoMode majority_mode(std::span<const TrainingExample> examples);

std::string evaluation_json(const EvaluationReport& report);

}  // namespace adastream

#endif  // ADASTREAM_EVALUATION_H_
