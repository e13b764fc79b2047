#include "adastream/controller.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <span>

#include "adastream/errors.h"

namespace adastream {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kDistributionTolerance = 1e-3;
constexpr double kTimeTolerance = 1e-9;

void check_matrix(const std::vector<std::vector<double>>& m, std::size_t n, const char* name) {
  if (m.size() != n) {
    throw ConfigError(std::string(name) + " weights must be a " + std::to_string(n) + "x" +
                      std::to_string(n) + " matrix");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) {
      throw ConfigError(std::string(name) + " weights must be a square matrix");
    }
    for (double w : m[i]) {
      if (!std::isfinite(w) || w < 0.0) {
        throw ConfigError(std::string(name) + " weights must be finite and non-negative");
      }
    }
    if (!(m[i][i] > 0.0)) {
      throw ConfigError(std::string(name) + " self-transition weights must be positive");
    }
  }
}

template <std::size_t N>
void check_distribution(const std::array<double, N>& p, const char* name) {
  double sum = 0.0;
  for (double v : p) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ArgumentError(std::string(name) + " emissions must be finite and non-negative");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kDistributionTolerance) {
    throw ArgumentError(std::string(name) + " emissions are not normalized (sum " +
                        std::to_string(sum) + ")");
  }
}

template <std::size_t N>
void viterbi_step(std::array<double, N>& score,
                  const std::array<std::array<double, N>, N>& log_w,
                  const std::array<double, N>& emission) {
  std::array<double, N> next{};
  for (std::size_t j = 0; j < N; ++j) {
    double best = kNegInf;
    for (std::size_t i = 0; i < N; ++i) best = std::max(best, score[i] + log_w[i][j]);
    next[j] = best + std::log(std::max(emission[j], kMinEmissionProbability));
  }
  const double top = *std::max_element(next.begin(), next.end());
  for (std::size_t j = 0; j < N; ++j) score[j] = next[j] - top;
}

template <std::size_t N>
int choose(const std::array<double, N>& score,
           const std::array<std::array<double, N>, N>& log_w, int current) {
  double best = kNegInf;
  for (std::size_t j = 0; j < N; ++j) {
    if (log_w[current][j] == kNegInf) continue;
    best = std::max(best, score[j]);
  }
  if (score[current] == best) return current;
  for (std::size_t j = 0; j < N; ++j) {
    if (log_w[current][j] != kNegInf && score[j] == best) return static_cast<int>(j);
  }
  return current;
}

}  // namespace

void TransitionGraph::validate(const ModeLadder& ladder) const {
  check_matrix(frame_rate, kNumFrameRates, "frame rate");
  check_matrix(resolution, kNumResolutions, "resolution");
  for (int i = 0; i < kNumFrameRates; ++i) {
    for (int j = 0; j < kNumFrameRates; ++j) {
      const int jump = std::abs(ladder.frame_rate(i).hz - ladder.frame_rate(j).hz);
      if (jump > kMaxFrameRateStepHz && frame_rate[i][j] != 0.0) {
        throw ConfigError("frame rate weight " + std::to_string(ladder.frame_rate(i).hz) +
                          "->" + std::to_string(ladder.frame_rate(j).hz) +
                          " Hz must be 0 (jump over 30 Hz)");
      }
    }
  }
  for (int i = 0; i < kNumResolutions; ++i) {
    for (int j = 0; j < kNumResolutions; ++j) {
      if (std::abs(i - j) > 1 && resolution[i][j] != 0.0) {
        throw ConfigError("resolution weights between non-adjacent rungs must be 0");
      }
    }
  }
  if (!(decision_period_s > 0.0) || !std::isfinite(decision_period_s)) {
    throw ConfigError("decision period must be positive");
  }
}

TransitionGraph default_transition_graph(const ModeLadder& ladder) {
  TransitionGraph g;
  g.frame_rate.assign(kNumFrameRates, std::vector<double>(kNumFrameRates, 0.0));
  g.resolution.assign(kNumResolutions, std::vector<double>(kNumResolutions, 0.0));
  for (int i = 0; i < kNumFrameRates; ++i) {
    for (int j = 0; j < kNumFrameRates; ++j) {
      const int jump = std::abs(ladder.frame_rate(i).hz - ladder.frame_rate(j).hz);
      double w = 0.0;
      if (jump == 0) {
        w = 1.0;
      } else if (jump <= 10) {
        w = 0.6;
      } else if (jump <= 20) {
        w = 0.3;
      } else if (jump <= kMaxFrameRateStepHz) {
        w = 0.15;
      }
      g.frame_rate[i][j] = w;
    }
  }
  for (int i = 0; i < kNumResolutions; ++i) {
    for (int j = 0; j < kNumResolutions; ++j) {
      const int d = std::abs(i - j);
      g.resolution[i][j] = d == 0 ? 1.0 : (d == 1 ? 0.5 : 0.0);
    }
  }
  return g;
}

ModeController::ModeController(TransitionGraph graph, VideoMode initial_mode,
                               const ModeLadder& ladder)
    : graph_(std::move(graph)), ladder_(ladder) {
  graph_.validate(ladder_);
  for (int i = 0; i < kNumFrameRates; ++i) {
    for (int j = 0; j < kNumFrameRates; ++j) {
      log_w_f_[i][j] = graph_.frame_rate[i][j] > 0.0 ? std::log(graph_.frame_rate[i][j]) : kNegInf;
    }
  }
  for (int i = 0; i < kNumResolutions; ++i) {
    for (int j = 0; j < kNumResolutions; ++j) {
      log_w_r_[i][j] = graph_.resolution[i][j] > 0.0 ? std::log(graph_.resolution[i][j]) : kNegInf;
    }
  }
  state_.frame_rate_index = ladder_.frame_rate_index(initial_mode.frame_rate);
  state_.resolution_index = ladder_.resolution_index(initial_mode.resolution);
  anchor();
}

void ModeController::anchor() {
  for (int j = 0; j < kNumFrameRates; ++j) {
    state_.score_f[j] = log_w_f_[state_.frame_rate_index][j] - log_w_f_[state_.frame_rate_index][state_.frame_rate_index];
  }
  for (int j = 0; j < kNumResolutions; ++j) {
    state_.score_r[j] = log_w_r_[state_.resolution_index][j] - log_w_r_[state_.resolution_index][state_.resolution_index];
  }
  state_.time_since_decision = 0.0;
}

void ModeController::step(const ModeProbabilities& emissions, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ArgumentError("dt must be positive");
  check_distribution(emissions.frame_rate, "frame rate");
  check_distribution(emissions.resolution, "resolution");
  viterbi_step(state_.score_f, log_w_f_, emissions.frame_rate);
  viterbi_step(state_.score_r, log_w_r_, emissions.resolution);
  state_.time_since_decision += dt;
}

bool ModeController::decision_due() const {
  return state_.time_since_decision >= graph_.decision_period_s - kTimeTolerance;
}

VideoMode ModeController::decide() {
  if (!decision_due()) {
    throw ContractError("decide called " + std::to_string(state_.time_since_decision) +
                        " s into a " + std::to_string(graph_.decision_period_s) +
                        " s decision period");
  }
  state_.frame_rate_index = choose(state_.score_f, log_w_f_, state_.frame_rate_index);
  state_.resolution_index = choose(state_.score_r, log_w_r_, state_.resolution_index);
  anchor();
  return current_mode();
}

VideoMode ModeController::current_mode() const {
  return ladder_.mode(state_.frame_rate_index, state_.resolution_index);
}

}  // namespace adastream
