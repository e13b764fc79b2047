#include "adastream/evaluation.h"

#include <cmath>
#include <limits>

#include "adastream/errors.h"
#include "adastream/motion.h"
#include "json.hpp"

namespace adastream {

using nlohmann::json;

VideoMode predict_mode(const ModePredictor& predictor, const FeatureVector& features,
                       const ModeLadder& ladder) {
  const ModeProbabilities p = predictor.predict(features);
  return ladder.mode(argmax(p.frame_rate), argmax(p.resolution));
}

VideoMode majority_mode(std::span<const TrainingExample> examples) {
  std::vector<int> f;
  std::vector<int> r;
  for (const TrainingExample& e : examples) {
    f.push_back(e.target_f.hz);
    r.push_back(e.target_r.height);
  }
  return VideoMode{FrameRate{majority_class(f)}, Resolution{majority_class(r)}};
}

EvaluationReport evaluate_predictor(std::span<const TrainingExample> examples,
                                    const ModePredictor& predictor, const ModeLadder& ladder,
                                    std::optional<VideoMode> majority) {
  if (examples.empty()) throw ArgumentError("evaluation set is empty");
  EvaluationReport report;
  report.count = examples.size();
  report.majority_mode = majority ? *majority : majority_mode(examples);

  std::vector<double> pred_f, pred_r, true_f, true_r, major_f, major_r;
  std::vector<int> pred_fi, pred_ri, true_fi, true_ri;
  const double slow_cut = normalize_velocity(10.0);
  const double fast_cut = normalize_velocity(40.0);
  std::array<std::vector<std::size_t>, 3> band_rows;

  for (std::size_t i = 0; i < examples.size(); ++i) {
    const TrainingExample& e = examples[i];
    const VideoMode m = predict_mode(predictor, e.features, ladder);
    pred_f.push_back(m.frame_rate.hz);
    pred_r.push_back(m.resolution.height);
    true_f.push_back(e.target_f.hz);
    true_r.push_back(e.target_r.height);
    major_f.push_back(report.majority_mode.frame_rate.hz);
    major_r.push_back(report.majority_mode.resolution.height);
    pred_fi.push_back(m.frame_rate.hz);
    pred_ri.push_back(m.resolution.height);
    true_fi.push_back(e.target_f.hz);
    true_ri.push_back(e.target_r.height);
    const double v = e.features.norm_velocity;
    band_rows[v < slow_cut ? 0 : (v < fast_cut ? 1 : 2)].push_back(i);
  }
  report.error_f_pct = relative_error(pred_f, true_f);
  report.error_r_pct = relative_error(pred_r, true_r);
  report.majority_error_f_pct = relative_error(major_f, true_f);
  report.majority_error_r_pct = relative_error(major_r, true_r);

  const auto& rates = ladder.frame_rates_hz();
  const auto& heights = ladder.heights();
  report.confusion_f = confusion_matrix(pred_fi, true_fi, rates);
  report.confusion_r = confusion_matrix(pred_ri, true_ri, heights);

  const char* names[3] = {"slow", "medium", "fast"};
  for (int b = 0; b < 3; ++b) {
    VelocityBandReport band;
    band.name = names[b];
    band.count = band_rows[b].size();
    band.error_f_pct = std::numeric_limits<double>::quiet_NaN();
    band.error_r_pct = std::numeric_limits<double>::quiet_NaN();
    if (band.count > 0) {
      std::vector<double> pf, tf, pr, tr;
      for (std::size_t i : band_rows[b]) {
        pf.push_back(pred_f[i]);
        tf.push_back(true_f[i]);
        pr.push_back(pred_r[i]);
        tr.push_back(true_r[i]);
      }
      band.error_f_pct = relative_error(pf, tf);
      band.error_r_pct = relative_error(pr, tr);
    }
    report.bands.push_back(band);
  }
  return report;
}

std::string evaluation_json(const EvaluationReport& r) {
  json bands = json::array();
  for (const VelocityBandReport& b : r.bands) {
    json jb{{"band", b.name}, {"count", b.count}};
    jb["fps_error_pct"] = std::isnan(b.error_f_pct) ? json(nullptr) : json(b.error_f_pct);
    jb["resolution_error_pct"] = std::isnan(b.error_r_pct) ? json(nullptr) : json(b.error_r_pct);
    bands.push_back(std::move(jb));
  }
  const json j{{"count", r.count},
               {"fps_error_pct", r.error_f_pct},
               {"resolution_error_pct", r.error_r_pct},
               {"majority_baseline",
                {{"frame_rate_hz", r.majority_mode.frame_rate.hz},
                 {"resolution_lines", r.majority_mode.resolution.height},
                 {"fps_error_pct", r.majority_error_f_pct},
                 {"resolution_error_pct", r.majority_error_r_pct}}},
               {"velocity_bands", std::move(bands)}};
  return j.dump(2);
}

}  // namespace adastream
