#include "adastream/predictor.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>

#include "adastream/csv.h"
#include "adastream/errors.h"
#include "adastream/motion.h"
#include "adastream/random.h"

namespace adastream {

// ---------------------------------------------------------------------------
// Features

LumaPatch::LumaPatch(std::vector<double> values, int size) : values_(std::move(values)), size_(size) {
  if (size_ <= 0 || values_.size() != static_cast<std::size_t>(size_) * size_) {
    throw ArgumentError("patch must hold size x size samples");
  }
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) throw ArgumentError("patch values must lie in [0, 1]");
  }
}

std::array<double, kNumFeatures> FeatureVector::as_array() const {
  return {content.mean_luma,       content.rms_contrast, content.gradient_energy,
          content.high_freq_ratio, content.edge_density, norm_velocity,
          norm_bandwidth};
}

FeatureVector FeatureVector::from_array(const std::array<double, kNumFeatures>& v) {
  FeatureVector f;
  f.content = ContentFeatures{v[0], v[1], v[2], v[3], v[4]};
  f.norm_velocity = v[5];
  f.norm_bandwidth = v[6];
  return f;
}

void FeatureVector::validate() const {
  for (double v : as_array()) {
    if (!std::isfinite(v)) throw ArgumentError("feature vector has a non-finite field");
  }
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(content.mean_luma) || !in_unit(content.high_freq_ratio) ||
      !in_unit(content.edge_density) || !in_unit(norm_velocity) || !in_unit(norm_bandwidth)) {
    throw ArgumentError("feature vector field outside [0, 1]");
  }
  if (content.rms_contrast < 0.0 || content.gradient_energy < 0.0) {
    throw ArgumentError("feature vector field must be non-negative");
  }
}

namespace {

constexpr int kBlock = 8;

// Orthonormal DCT-II basis for 8 samples.
const std::array<std::array<double, kBlock>, kBlock>& dct_basis() {
  static const auto basis = [] {
    std::array<std::array<double, kBlock>, kBlock> b{};
    for (int u = 0; u < kBlock; ++u) {
      const double scale = u == 0 ? std::sqrt(1.0 / kBlock) : std::sqrt(2.0 / kBlock);
      for (int x = 0; x < kBlock; ++x) {
        b[u][x] = scale * std::cos(std::numbers::pi * (2 * x + 1) * u / (2.0 * kBlock));
      }
    }
    return b;
  }();
  return basis;
}

}  // namespace

ContentFeatures extract_features(const LumaPatch& patch) {
  if (patch.size() != kPatchSize) {
    throw ArgumentError("feature extraction needs a 128x128 patch, got " +
                        std::to_string(patch.size()));
  }
  const int n = patch.size();
  const auto values = patch.values();
  ContentFeatures out;

  const double count = static_cast<double>(values.size());
  out.mean_luma = std::accumulate(values.begin(), values.end(), 0.0) / count;
  double var = 0.0;
  for (double v : values) var += (v - out.mean_luma) * (v - out.mean_luma);
  out.rms_contrast = std::sqrt(var / count);

  // Forward differences on the (n-1)×(n-1) interior.
  double grad_sum = 0.0;
  std::size_t edges = 0;
  for (int y = 0; y + 1 < n; ++y) {
    for (int x = 0; x + 1 < n; ++x) {
      const double gx = patch.at(x + 1, y) - patch.at(x, y);
      const double gy = patch.at(x, y + 1) - patch.at(x, y);
      const double g = std::hypot(gx, gy);
      grad_sum += g;
      if (g > kEdgeThreshold) ++edges;
    }
  }
  const double interior = static_cast<double>(n - 1) * (n - 1);
  out.gradient_energy = grad_sum / interior;
  out.edge_density = static_cast<double>(edges) / interior;

  const auto& basis = dct_basis();
  double ac_energy = 0.0;
  double high_energy = 0.0;
  std::array<std::array<double, kBlock>, kBlock> rows{};
  for (int by = 0; by + kBlock <= n; by += kBlock) {
    for (int bx = 0; bx + kBlock <= n; bx += kBlock) {
      // Separable transform: rows first, then columns.
      for (int y = 0; y < kBlock; ++y) {
        for (int u = 0; u < kBlock; ++u) {
          double s = 0.0;
          for (int x = 0; x < kBlock; ++x) s += basis[u][x] * patch.at(bx + x, by + y);
          rows[y][u] = s;
        }
      }
      for (int v = 0; v < kBlock; ++v) {
        for (int u = 0; u < kBlock; ++u) {
          double c = 0.0;
          for (int y = 0; y < kBlock; ++y) c += basis[v][y] * rows[y][u];
          if (u == 0 && v == 0) continue;
          const double e = c * c;
          ac_energy += e;
          if (std::max(u, v) >= kBlock / 2) high_energy += e;
        }
      }
    }
  }
  out.high_freq_ratio = ac_energy > 1e-18 ? high_energy / ac_energy : 0.0;
  return out;
}

double normalize_bandwidth(Bitrate bitrate) {
  return std::min(bitrate.bps() / kBandwidthCeilingBps, 1.0);
}

FeatureVector make_feature_vector(const ContentFeatures& content, double velocity_degps,
                                  Bitrate bitrate) {
  FeatureVector f;
  f.content = content;
  f.norm_velocity = normalize_velocity(velocity_degps);
  f.norm_bandwidth = normalize_bandwidth(bitrate);
  return f;
}

ModeProbabilities ModeProbabilities::uniform() {
  ModeProbabilities p;
  p.frame_rate.fill(1.0 / kNumFrameRates);
  p.resolution.fill(1.0 / kNumResolutions);
  return p;
}

int argmax(std::span<const double> values) {
  return static_cast<int>(std::max_element(values.begin(), values.end()) - values.begin());
}

// ---------------------------------------------------------------------------
// Model

namespace {

constexpr int kOutputs = kNumFrameRates + kNumResolutions;

std::vector<int> layer_sizes_for(const std::vector<int>& hidden) {
  std::vector<int> sizes{kNumFeatures};
  for (int h : hidden) {
    if (h <= 0) throw ArgumentError("hidden layer sizes must be positive");
    sizes.push_back(h);
  }
  sizes.push_back(kOutputs);
  return sizes;
}

std::size_t count_parameters(const std::vector<int>& sizes) {
  std::size_t n = 0;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    n += static_cast<std::size_t>(sizes[l + 1]) * (sizes[l] + 1);
  }
  return n;
}

// Stable softmax of logits[begin, end) written into out.
void softmax(const double* logits, int n, double* out) {
  const double m = *std::max_element(logits, logits + n);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    out[i] = std::exp(logits[i] - m);
    sum += out[i];
  }
  for (int i = 0; i < n; ++i) out[i] /= sum;
}

// Activations of every layer for one input; acts[0] is the normalized input,
// acts.back() the raw logits.
struct ForwardPass {
  std::vector<std::vector<double>> acts;
};

}  // namespace

PredictorModel::PredictorModel(std::vector<int> hidden_sizes, std::uint64_t seed)
    : sizes_(layer_sizes_for(hidden_sizes)), seed_(seed) {
  params_.assign(count_parameters(sizes_), 0.0);
  input_offset_.fill(0.0);
  input_scale_.fill(1.0);
  Rng rng(seed);
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    const int in = sizes_[l];
    const int out = sizes_[l + 1];
    const double limit = std::sqrt(6.0 / in);
    double* w = params_.data() + layer_offset(l);
    for (int i = 0; i < out * in; ++i) w[i] = rng.uniform(-limit, limit);
  }
}

PredictorModel PredictorModel::zeros(std::vector<int> hidden_sizes) {
  PredictorModel m;
  m.sizes_ = layer_sizes_for(hidden_sizes);
  m.params_.assign(count_parameters(m.sizes_), 0.0);
  m.input_offset_.fill(0.0);
  m.input_scale_.fill(1.0);
  return m;
}

std::size_t PredictorModel::layer_offset(std::size_t layer) const {
  std::size_t off = 0;
  for (std::size_t l = 0; l < layer; ++l) {
    off += static_cast<std::size_t>(sizes_[l + 1]) * (sizes_[l] + 1);
  }
  return off;
}

void PredictorModel::set_input_normalization(const std::array<double, kNumFeatures>& offset,
                                             const std::array<double, kNumFeatures>& scale) {
  for (int i = 0; i < kNumFeatures; ++i) {
    if (!std::isfinite(offset[i]) || !std::isfinite(scale[i]) || scale[i] == 0.0) {
      throw ArgumentError("input normalization must be finite with nonzero scale");
    }
  }
  input_offset_ = offset;
  input_scale_ = scale;
}

void PredictorModel::check_finite() const {
  for (double p : params_) {
    if (!std::isfinite(p)) throw ModelCorruptError("model has non-finite parameters");
  }
  for (int i = 0; i < kNumFeatures; ++i) {
    if (!std::isfinite(input_offset_[i]) || !std::isfinite(input_scale_[i])) {
      throw ModelCorruptError("model has non-finite input normalization");
    }
  }
}

namespace {

ForwardPass run_forward(const PredictorModel& model, const std::array<double, kNumFeatures>& x) {
  const auto& sizes = model.layer_sizes();
  const auto params = model.parameters();
  ForwardPass pass;
  pass.acts.resize(sizes.size());
  pass.acts[0].resize(kNumFeatures);
  for (int i = 0; i < kNumFeatures; ++i) {
    pass.acts[0][i] = (x[i] - model.input_offset()[i]) * model.input_scale()[i];
  }
  std::size_t off = 0;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    const int in = sizes[l];
    const int out = sizes[l + 1];
    const double* w = params.data() + off;
    const double* b = w + static_cast<std::size_t>(out) * in;
    const bool hidden = l + 2 < sizes.size();
    auto& next = pass.acts[l + 1];
    next.resize(out);
    const auto& prev = pass.acts[l];
    for (int o = 0; o < out; ++o) {
      double s = b[o];
      const double* row = w + static_cast<std::size_t>(o) * in;
      for (int i = 0; i < in; ++i) s += row[i] * prev[i];
      next[o] = hidden ? std::max(0.0, s) : s;
    }
    off += static_cast<std::size_t>(out) * (in + 1);
  }
  return pass;
}

}  // namespace

ModeProbabilities PredictorModel::forward(const FeatureVector& features) const {
  check_finite();
  const ForwardPass pass = run_forward(*this, features.as_array());
  const auto& logits = pass.acts.back();
  ModeProbabilities p;
  softmax(logits.data(), kNumFrameRates, p.frame_rate.data());
  softmax(logits.data() + kNumFrameRates, kNumResolutions, p.resolution.data());
  return p;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

constexpr const char* kModelMagic = "adastream-predictor";
constexpr int kModelFormatVersion = 1;

std::string hex_double(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::hex);
  if (ec != std::errc()) throw Error("failed to format parameter");
  return std::string(buf.data(), ptr);
}

double parse_hex_double(const std::string& token) {
  double v = 0.0;
  std::string_view text = token;
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v,
                                   std::chars_format::hex);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ModelCorruptError("bad parameter token '" + token + "'");
  }
  return negative ? -v : v;
}

std::string expect_key(std::istream& in, const char* key) {
  std::string word;
  if (!(in >> word) || word != key) {
    throw ModelCorruptError(std::string("model file: expected '") + key + "'");
  }
  return word;
}

}  // namespace

void PredictorModel::save(std::ostream& out) const {
  out << kModelMagic << ' ' << kModelFormatVersion << '\n';
  out << "feature_schema " << kFeatureSchemaVersion << '\n';
  out << "seed " << seed_ << '\n';
  out << "layers " << sizes_.size();
  for (int s : sizes_) out << ' ' << s;
  out << '\n';
  out << "input_offset";
  for (double v : input_offset_) out << ' ' << hex_double(v);
  out << '\n';
  out << "input_scale";
  for (double v : input_scale_) out << ' ' << hex_double(v);
  out << '\n';
  out << "parameters " << params_.size() << '\n';
  for (double p : params_) out << hex_double(p) << '\n';
}

void PredictorModel::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write model file " + path.string());
  save(out);
  if (!out) throw IoError("failed writing model file " + path.string());
}

PredictorModel PredictorModel::load(std::istream& in) {
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != kModelMagic) {
    throw ModelCorruptError("not a predictor model file");
  }
  if (version != kModelFormatVersion) {
    throw ModelCorruptError("unsupported model format version " + std::to_string(version));
  }
  int schema = 0;
  expect_key(in, "feature_schema");
  if (!(in >> schema) || schema != kFeatureSchemaVersion) {
    throw ModelCorruptError("model was trained on feature schema " + std::to_string(schema));
  }
  PredictorModel m;
  expect_key(in, "seed");
  if (!(in >> m.seed_)) throw ModelCorruptError("model file: bad seed");
  expect_key(in, "layers");
  std::size_t n_layers = 0;
  if (!(in >> n_layers) || n_layers < 2 || n_layers > 64) {
    throw ModelCorruptError("model file: bad layer count");
  }
  m.sizes_.resize(n_layers);
  for (int& s : m.sizes_) {
    if (!(in >> s) || s <= 0) throw ModelCorruptError("model file: bad layer size");
  }
  if (m.sizes_.front() != kNumFeatures || m.sizes_.back() != kOutputs) {
    throw ModelCorruptError("model file: layer sizes do not match the feature/class contract");
  }
  std::string token;
  expect_key(in, "input_offset");
  for (double& v : m.input_offset_) {
    if (!(in >> token)) throw ModelCorruptError("model file: truncated input_offset");
    v = parse_hex_double(token);
  }
  expect_key(in, "input_scale");
  for (double& v : m.input_scale_) {
    if (!(in >> token)) throw ModelCorruptError("model file: truncated input_scale");
    v = parse_hex_double(token);
  }
  expect_key(in, "parameters");
  std::size_t count = 0;
  if (!(in >> count) || count != count_parameters(m.sizes_)) {
    throw ModelCorruptError("model file: parameter count does not match layer sizes");
  }
  m.params_.resize(count);
  for (double& p : m.params_) {
    if (!(in >> token)) throw ModelCorruptError("model file: truncated parameters");
    p = parse_hex_double(token);
  }
  m.check_finite();
  return m;
}

PredictorModel PredictorModel::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open model file " + path.string());
  return load(in);
}

// ---------------------------------------------------------------------------
// Training

std::vector<EncodedExample> encode_examples(std::span<const TrainingExample> examples,
                                            const ModeLadder& ladder) {
  std::vector<EncodedExample> out;
  out.reserve(examples.size());
  for (const TrainingExample& e : examples) {
    e.features.validate();
    out.push_back(EncodedExample{e.features.as_array(), ladder.frame_rate_index(e.target_f),
                                 ladder.resolution_index(e.target_r)});
  }
  return out;
}

namespace {

// Adds d(loss_i)/d(params) for one example into grad; returns loss_i.
double accumulate_example(const PredictorModel& model, const EncodedExample& ex,
                          std::vector<double>& grad, double weight) {
  const auto& sizes = model.layer_sizes();
  const auto params = model.parameters();
  const ForwardPass pass = run_forward(model, ex.x);
  const auto& logits = pass.acts.back();

  std::array<double, kOutputs> probs{};
  softmax(logits.data(), kNumFrameRates, probs.data());
  softmax(logits.data() + kNumFrameRates, kNumResolutions, probs.data() + kNumFrameRates);
  const int tf = ex.frame_rate_class;
  const int tr = kNumFrameRates + ex.resolution_class;
  const double loss = -std::log(std::max(probs[tf], 1e-300)) -
                      std::log(std::max(probs[tr], 1e-300));

  // dL/dlogits for two independent softmax cross-entropies.
  std::vector<double> delta(probs.begin(), probs.end());
  delta[tf] -= 1.0;
  delta[tr] -= 1.0;

  std::vector<std::size_t> offsets(sizes.size() - 1);
  std::size_t off = 0;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    offsets[l] = off;
    off += static_cast<std::size_t>(sizes[l + 1]) * (sizes[l] + 1);
  }

  for (std::size_t l = sizes.size() - 1; l-- > 0;) {
    const int in = sizes[l];
    const int out = sizes[l + 1];
    const double* w = params.data() + offsets[l];
    double* gw = grad.data() + offsets[l];
    double* gb = gw + static_cast<std::size_t>(out) * in;
    const auto& prev = pass.acts[l];
    for (int o = 0; o < out; ++o) {
      const double d = delta[o] * weight;
      if (d == 0.0) continue;
      double* grow = gw + static_cast<std::size_t>(o) * in;
      for (int i = 0; i < in; ++i) grow[i] += d * prev[i];
      gb[o] += d;
    }
    if (l == 0) break;
    std::vector<double> next(in, 0.0);
    for (int o = 0; o < out; ++o) {
      const double d = delta[o];
      if (d == 0.0) continue;
      const double* row = w + static_cast<std::size_t>(o) * in;
      for (int i = 0; i < in; ++i) next[i] += row[i] * d;
    }
    // ReLU derivative: prev holds post-activation values of a hidden layer.
    for (int i = 0; i < in; ++i) {
      if (prev[i] <= 0.0) next[i] = 0.0;
    }
    delta = std::move(next);
  }
  return loss;
}

}  // namespace

LossGradient cross_entropy_gradient(const PredictorModel& model,
                                    std::span<const EncodedExample> batch) {
  if (batch.empty()) throw ArgumentError("gradient needs a nonempty batch");
  LossGradient out;
  out.gradient.assign(model.parameter_count(), 0.0);
  const double weight = 1.0 / static_cast<double>(batch.size());
  for (const EncodedExample& ex : batch) {
    out.loss += accumulate_example(model, ex, out.gradient, weight) * weight;
  }
  return out;
}

double cross_entropy_loss(const PredictorModel& model, std::span<const EncodedExample> batch) {
  if (batch.empty()) throw ArgumentError("loss needs a nonempty batch");
  double total = 0.0;
  for (const EncodedExample& ex : batch) {
    const ForwardPass pass = run_forward(model, ex.x);
    std::array<double, kOutputs> probs{};
    softmax(pass.acts.back().data(), kNumFrameRates, probs.data());
    softmax(pass.acts.back().data() + kNumFrameRates, kNumResolutions,
            probs.data() + kNumFrameRates);
    total += -std::log(std::max(probs[ex.frame_rate_class], 1e-300)) -
             std::log(std::max(probs[kNumFrameRates + ex.resolution_class], 1e-300));
  }
  return total / static_cast<double>(batch.size());
}

PredictorModel train(std::span<const TrainingExample> examples, const TrainConfig& config,
                     const ModeLadder& ladder, TrainReport* report) {
  if (examples.empty()) throw ArgumentError("training set is empty");
  if (!(config.learning_rate > 0.0) || config.epochs < 0 || config.batch_size <= 0) {
    throw ArgumentError("invalid training configuration");
  }
  const std::vector<EncodedExample> data = encode_examples(examples, ladder);
  PredictorModel model(config.hidden_sizes, config.seed);

  if (config.standardize_inputs) {
    std::array<double, kNumFeatures> mean{};
    std::array<double, kNumFeatures> scale{};
    for (const auto& ex : data) {
      for (int i = 0; i < kNumFeatures; ++i) mean[i] += ex.x[i];
    }
    for (double& m : mean) m /= static_cast<double>(data.size());
    for (const auto& ex : data) {
      for (int i = 0; i < kNumFeatures; ++i) scale[i] += (ex.x[i] - mean[i]) * (ex.x[i] - mean[i]);
    }
    for (double& s : scale) {
      const double sd = std::sqrt(s / static_cast<double>(data.size()));
      s = sd > 1e-9 ? 1.0 / sd : 1.0;
    }
    model.set_input_normalization(mean, scale);
  }

  const std::size_t n_params = model.parameter_count();
  std::vector<double> m1(n_params, 0.0);
  std::vector<double> m2(n_params, 0.0);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Separate stream from the initializer so shuffles do not alias weights.
  Rng shuffle_rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<EncodedExample> batch;
  long long t = 0;

  if (report) report->epoch_loss.clear();
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[shuffle_rng.below(i)]);
    }
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      batch.clear();
      for (std::size_t i = start; i < end; ++i) batch.push_back(data[order[i]]);
      const LossGradient lg = cross_entropy_gradient(model, batch);
      if (!std::isfinite(lg.loss)) {
        throw DivergenceError("training loss became non-finite", epoch);
      }
      epoch_loss += lg.loss * static_cast<double>(batch.size());

      ++t;
      const double c1 = 1.0 - std::pow(config.beta1, static_cast<double>(t));
      const double c2 = 1.0 - std::pow(config.beta2, static_cast<double>(t));
      auto params = model.mutable_parameters();
      for (std::size_t k = 0; k < n_params; ++k) {
        const double g = lg.gradient[k];
        m1[k] = config.beta1 * m1[k] + (1.0 - config.beta1) * g;
        m2[k] = config.beta2 * m2[k] + (1.0 - config.beta2) * g * g;
        params[k] -= config.learning_rate * (m1[k] / c1) / (std::sqrt(m2[k] / c2) + config.epsilon);
      }
    }
    epoch_loss /= static_cast<double>(data.size());
    if (!std::isfinite(epoch_loss)) throw DivergenceError("training loss became non-finite", epoch);
    for (double p : model.parameters()) {
      if (!std::isfinite(p)) throw DivergenceError("model parameters became non-finite", epoch);
    }
    if (report) report->epoch_loss.push_back(epoch_loss);
  }
  return model;
}

// ---------------------------------------------------------------------------
// Training CSV

namespace {

constexpr std::array<const char*, kNumFeatures> kFeatureColumns = {
    "mean_luma", "rms_contrast", "gradient_energy", "high_freq_ratio",
    "edge_density", "norm_velocity", "norm_bandwidth"};

}  // namespace

void write_training_csv(std::ostream& out, std::span<const TrainingExample> examples) {
  for (const char* c : kFeatureColumns) out << c << ',';
  out << "target_f,target_r\n";
  for (const TrainingExample& e : examples) {
    for (double v : e.features.as_array()) out << format_double(v) << ',';
    out << e.target_f.hz << ',' << e.target_r.height << '\n';
  }
}

std::vector<TrainingExample> read_training_csv(std::istream& in, const ModeLadder& ladder) {
  CsvReader reader(in);
  std::array<std::size_t, kNumFeatures> cols{};
  for (int i = 0; i < kNumFeatures; ++i) cols[i] = reader.column(kFeatureColumns[i]);
  const std::size_t c_f = reader.column("target_f");
  const std::size_t c_r = reader.column("target_r");

  std::vector<TrainingExample> out;
  std::vector<std::string> row;
  while (reader.next(row)) {
    std::array<double, kNumFeatures> x{};
    for (int i = 0; i < kNumFeatures; ++i) {
      x[i] = parse_double(row[cols[i]], reader.line(), kFeatureColumns[i]);
    }
    TrainingExample e;
    e.features = FeatureVector::from_array(x);
    try {
      e.features.validate();
    } catch (const ArgumentError& err) {
      throw ParseError(err.what(), reader.line());
    }
    e.target_f = FrameRate{static_cast<int>(parse_int(row[c_f], reader.line(), "target_f"))};
    e.target_r = Resolution{static_cast<int>(parse_int(row[c_r], reader.line(), "target_r"))};
    if (!ladder.find_frame_rate(e.target_f) || !ladder.find_resolution(e.target_r)) {
      throw ParseError("target mode is not on the ladder", reader.line());
    }
    out.push_back(e);
  }
  return out;
}

}  // namespace adastream
