#ifndef ADASTREAM_CONTROLLER_H_
#define ADASTREAM_CONTROLLER_H_

#include <array>
#include <vector>

#include "adastream/ladder.h"
#include "adastream/predictor.h"

namespace adastream {

inline constexpr double kDefaultDecisionPeriodSeconds = 2.0;
// Frame-rate transitions further than this are forbidden.
inline constexpr int kMaxFrameRateStepHz = 30;
// Emissions are floored before taking logs so a zero probability cannot
// erase every path.
inline constexpr double kMinEmissionProbability = 1e-12;

// Transition weights between rungs for the two chains. frame_rate[i][j] is
// the weight of moving from rung i to rung j.
struct TransitionGraph {
  std::vector<std::vector<double>> frame_rate;  // 10×10
  std::vector<std::vector<double>> resolution;  // 5×5
  double decision_period_s = kDefaultDecisionPeriodSeconds;

  // Throws ConfigError when a matrix has the wrong shape, a negative or
  // non-finite weight, a zero self weight, a nonzero weight on a frame-rate
  // jump over 30 Hz, or a nonzero weight between non-adjacent resolutions.
  void validate(const ModeLadder& ladder = ModeLadder::standard()) const;
};

// Frame rate: self 1.0, ±10 Hz 0.6, ±20 Hz 0.3, ±30 Hz 0.15, otherwise 0.
// Resolution: self 1.0, adjacent rung 0.5, otherwise 0.
TransitionGraph default_transition_graph(const ModeLadder& ladder = ModeLadder::standard());

struct ControllerState {
  // Log-domain path scores, shifted so the best is 0. −inf marks a state no
  // path can reach.
  std::array<double, kNumFrameRates> score_f{};
  std::array<double, kNumResolutions> score_r{};
  int frame_rate_index = 0;
  int resolution_index = 0;
  double time_since_decision = 0.0;
};

// Two independent Viterbi chains, one per ladder axis. The trellis advances
// every frame; a mode is committed once per decision period, and only to a
// rung reachable from the current one in a single transition.
//
// Not thread safe; step and decide must be serialized per session.
class ModeController {
 public:
  ModeController(TransitionGraph graph, VideoMode initial_mode,
                 const ModeLadder& ladder = ModeLadder::standard());

  // score'_j = max_i(score_i + ln w_ij) + ln p_j, then shift to max 0.
  // Throws ArgumentError when a distribution does not sum to 1 within 1e-3
  // or dt is not positive.
  void step(const ModeProbabilities& emissions, double dt);

  bool decision_due() const;

  // Commits the best reachable rung on each chain. Ties stay at the current
  // rung when it is among the best, else take the lower rung. Scores are
  // re-anchored at the chosen rung. Throws ContractError before the period
  // has elapsed.
  VideoMode decide();

  VideoMode current_mode() const;
  const ControllerState& state() const { return state_; }
  const TransitionGraph& graph() const { return graph_; }

 private:
  void anchor();

  TransitionGraph graph_;
  ModeLadder ladder_;
  std::array<std::array<double, kNumFrameRates>, kNumFrameRates> log_w_f_{};
  std::array<std::array<double, kNumResolutions>, kNumResolutions> log_w_r_{};
  ControllerState state_;
};

}  // namespace adastream

#endif  // ADASTREAM_CONTROLLER_H_
