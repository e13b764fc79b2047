#ifndef ADASTREAM_PREDICTOR_H_
#define ADASTREAM_PREDICTOR_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include "adastream/ladder.h"

namespace adastream {

inline constexpr int kPatchSize = 128;
inline constexpr int kNumFeatures = 7;
inline constexpr int kFeatureSchemaVersion = 1;
// Bitrates are normalized against this ceiling before entering the model.
inline constexpr double kBandwidthCeilingBps = 6e6;
// Gradient magnitude above which a pixel counts as an edge.
inline constexpr double kEdgeThreshold = 0.1;

// A square luma patch with values in [0, 1], row major.
class LumaPatch {
 public:
  // Throws ArgumentError unless values holds exactly size×size samples in [0, 1].
  LumaPatch(std::vector<double> values, int size = kPatchSize);

  int size() const { return size_; }
  double at(int x, int y) const { return values_[static_cast<std::size_t>(y) * size_ + x]; }
  std::span<const double> values() const { return values_; }

 private:
  std::vector<double> values_;
  int size_;
};

struct ContentFeatures {
  double mean_luma = 0.0;
  double rms_contrast = 0.0;
  double gradient_energy = 0.0;  // mean |∇| over the patch
  double high_freq_ratio = 0.0;  // 8×8 DCT energy above half-Nyquist ÷ AC energy
  double edge_density = 0.0;     // fraction of pixels with |∇| > kEdgeThreshold

  bool operator==(const ContentFeatures&) const = default;
};

struct FeatureVector {
  ContentFeatures content;
  double norm_velocity = 0.0;
  double norm_bandwidth = 0.0;

  std::array<double, kNumFeatures> as_array() const;
  static FeatureVector from_array(const std::array<double, kNumFeatures>& values);
  // Throws ArgumentError when a field is non-finite or out of range.
  void validate() const;

  bool operator==(const FeatureVector&) const = default;
};

// Deterministic hand-crafted patch descriptor. Requires a 128×128 patch.
ContentFeatures extract_features(const LumaPatch& patch);

// min(bitrate / 6 Mbps, 1).
double normalize_bandwidth(Bitrate bitrate);

// Combines content with velocity (deg/s, logged and capped) and bandwidth.
FeatureVector make_feature_vector(const ContentFeatures& content, double velocity_degps,
                                  Bitrate bitrate);

struct ModeProbabilities {
  std::array<double, kNumFrameRates> frame_rate{};
  std::array<double, kNumResolutions> resolution{};

  static ModeProbabilities uniform();
};

// Anything that maps features to class probabilities over the ladder rungs.
class ModePredictor {
 public:
  virtual ~ModePredictor() = default;
  virtual ModeProbabilities predict(const FeatureVector& features) const = 0;
};

// MLP 7 → hidden... → 15 with ReLU hidden layers and two softmax heads: the
// first 10 outputs score frame-rate rungs, the last 5 resolution rungs.
//
// Parameters are stored flat. Layer l occupies a weight block of
// out×in (row major) followed by out biases.
class PredictorModel final : public ModePredictor {
 public:
  // He-uniform weights, zero biases, identity input normalization.
  PredictorModel(std::vector<int> hidden_sizes, std::uint64_t seed);

  static PredictorModel zeros(std::vector<int> hidden_sizes);

  ModeProbabilities forward(const FeatureVector& features) const;
  ModeProbabilities predict(const FeatureVector& features) const override {
    return forward(features);
  }

  // Throws ModelCorruptError when any parameter is non-finite.
  void check_finite() const;

  const std::vector<int>& layer_sizes() const { return sizes_; }
  std::uint64_t seed() const { return seed_; }
  std::span<const double> parameters() const { return params_; }
  std::span<double> mutable_parameters() { return params_; }
  std::size_t parameter_count() const { return params_.size(); }

  // Inputs are mapped to (x - offset) * scale before the first layer.
  const std::array<double, kNumFeatures>& input_offset() const { return input_offset_; }
  const std::array<double, kNumFeatures>& input_scale() const { return input_scale_; }
  void set_input_normalization(const std::array<double, kNumFeatures>& offset,
                               const std::array<double, kNumFeatures>& scale);

  // Text format: a header {layer sizes, seed, feature schema} followed by
  // the normalization and parameters as hexadecimal floats (exact).
  void save(std::ostream& out) const;
  void save(const std::filesystem::path& path) const;
  static PredictorModel load(std::istream& in);
  static PredictorModel load(const std::filesystem::path& path);

  bool operator==(const PredictorModel& other) const {
    return sizes_ == other.sizes_ && seed_ == other.seed_ && params_ == other.params_ &&
           input_offset_ == other.input_offset_ && input_scale_ == other.input_scale_;
  }

 private:
  PredictorModel() = default;
  std::size_t layer_offset(std::size_t layer) const;

  std::vector<int> sizes_;
  std::uint64_t seed_ = 0;
  std::vector<double> params_;
  std::array<double, kNumFeatures> input_offset_{};
  std::array<double, kNumFeatures> input_scale_{};
};

struct TrainingExample {
  FeatureVector features;
  FrameRate target_f;
  Resolution target_r;
};

// Example with targets resolved to rung indices.
struct EncodedExample {
  std::array<double, kNumFeatures> x{};
  int frame_rate_class = 0;
  int resolution_class = 0;
};

std::vector<EncodedExample> encode_examples(std::span<const TrainingExample> examples,
                                            const ModeLadder& ladder = ModeLadder::standard());

struct LossGradient {
  double loss = 0.0;          // mean over the batch of both heads' cross-entropy
  std::vector<double> gradient;  // d loss / d parameters
};

LossGradient cross_entropy_gradient(const PredictorModel& model,
                                    std::span<const EncodedExample> batch);
double cross_entropy_loss(const PredictorModel& model, std::span<const EncodedExample> batch);

struct TrainConfig {
  double learning_rate = 3e-3;
  int epochs = 80;
  int batch_size = 32;
  std::uint64_t seed = 1;
  std::vector<int> hidden_sizes{64, 64};
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  // Fit the input normalization to the training set before optimizing.
  bool standardize_inputs = true;
};

struct TrainReport {
  std::vector<double> epoch_loss;  // mean training loss seen during each epoch
};

// Minimizes both heads' cross-entropy with Adam. A fixed seed gives
// bit-identical weights. Throws ArgumentError for an empty set and
// DivergenceError when the loss becomes non-finite.
PredictorModel train(std::span<const TrainingExample> examples, const TrainConfig& config,
                     const ModeLadder& ladder = ModeLadder::standard(),
                     TrainReport* report = nullptr);

// features...,target_f,target_r
void write_training_csv(std::ostream& out, std::span<const TrainingExample> examples);
std::vector<TrainingExample> read_training_csv(std::istream& in,
                                               const ModeLadder& ladder = ModeLadder::standard());

int argmax(std::span<const double> values);

}  // namespace adastream

#endif  // ADASTREAM_PREDICTOR_H_
