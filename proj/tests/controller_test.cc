#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "adastream/controller.h"
#include "adastream/errors.h"
#include "adastream/random.h"
#include "oracles.h"

namespace adastream {
namespace {

const ModeLadder& L = ModeLadder::standard();

VideoMode mode(int hz, int lines) { return VideoMode{FrameRate{hz}, Resolution{lines}}; }

ModeProbabilities peaked(int hz, int lines, double conf = 1.0) {
  ModeProbabilities p;
  p.frame_rate.fill((1.0 - conf) / 9.0);
  p.resolution.fill((1.0 - conf) / 4.0);
  p.frame_rate[L.frame_rate_index(FrameRate{hz})] = conf;
  p.resolution[L.resolution_index(Resolution{lines})] = conf;
  return p;
}

// Steps one decision period at the controller's current frame rate.
void run_window(ModeController& ctl, const ModeProbabilities& p) {
  const int hz = ctl.current_mode().frame_rate.hz;
  for (int k = 0; k < 2 * hz; ++k) ctl.step(p, 1.0 / hz);
}

TEST(TransitionGraph, DefaultWeights) {
  const TransitionGraph g = default_transition_graph();
  const double row60[10] = {0.15, 0.3, 0.6, 1.0, 0.6, 0.3, 0.15, 0.0, 0.0, 0.0};
  for (int j = 0; j < 10; ++j) EXPECT_DOUBLE_EQ(g.frame_rate[3][j], row60[j]) << j;
  const double row30[10] = {1.0, 0.6, 0.3, 0.15, 0, 0, 0, 0, 0, 0};
  for (int j = 0; j < 10; ++j) EXPECT_DOUBLE_EQ(g.frame_rate[0][j], row30[j]) << j;
  EXPECT_DOUBLE_EQ(g.frame_rate[3][7], 0.0);  // 60 -> 100 Hz
  const double row720[5] = {0.0, 0.5, 1.0, 0.5, 0.0};
  for (int j = 0; j < 5; ++j) EXPECT_DOUBLE_EQ(g.resolution[2][j], row720[j]);
  EXPECT_DOUBLE_EQ(g.decision_period_s, 2.0);
  EXPECT_NO_THROW(g.validate());
}

TEST(TransitionGraph, ValidationRejectsRuleBreakers) {
  TransitionGraph g = default_transition_graph();
  g.frame_rate[0][4] = 0.1;  // 30 -> 70 Hz
  EXPECT_THROW(g.validate(), ConfigError);
  g = default_transition_graph();
  g.resolution[0][2] = 0.1;
  EXPECT_THROW(g.validate(), ConfigError);
  g = default_transition_graph();
  g.resolution[1][1] = 0.0;
  EXPECT_THROW(g.validate(), ConfigError);
  g = default_transition_graph();
  g.frame_rate[2][3] = -0.5;
  EXPECT_THROW(g.validate(), ConfigError);
  g = default_transition_graph();
  g.frame_rate.pop_back();
  EXPECT_THROW(g.validate(), ConfigError);
  g = default_transition_graph();
  g.decision_period_s = 0.0;
  EXPECT_THROW(g.validate(), ConfigError);
  EXPECT_THROW(ModeController(g, mode(60, 720)), ConfigError);
}

TEST(Controller, UniformEmissionsKeepTheMode) {
  ModeController ctl(default_transition_graph(), mode(30, 1080));
  run_window(ctl, ModeProbabilities::uniform());
  EXPECT_EQ(ctl.decide(), mode(30, 1080));
}

TEST(Controller, EmissionsOnCurrentStateKeepIt) {
  ModeController ctl(default_transition_graph(), mode(70, 480));
  run_window(ctl, peaked(70, 480, 0.8));
  EXPECT_EQ(ctl.state().score_f[4], 0.0);
  EXPECT_EQ(ctl.state().score_r[1], 0.0);
  EXPECT_EQ(ctl.decide(), mode(70, 480));
}

TEST(Controller, SustainedPullMovesThirtyHertzPerDecision) {
  ModeController ctl(default_transition_graph(), mode(30, 720));
  run_window(ctl, peaked(120, 720));
  EXPECT_EQ(ctl.decide().frame_rate.hz, 60);
  run_window(ctl, peaked(120, 720));
  EXPECT_EQ(ctl.decide().frame_rate.hz, 90);
  run_window(ctl, peaked(120, 720));
  EXPECT_EQ(ctl.decide().frame_rate.hz, 120);
}

TEST(Controller, ResolutionMovesOneRungTowardsTarget) {
  ModeController ctl(default_transition_graph(), mode(30, 1080));
  run_window(ctl, peaked(60, 720, 0.9));
  EXPECT_EQ(ctl.decide(), mode(60, 864));
}

TEST(Controller, DecideBeforePeriodIsContractError) {
  ModeController ctl(default_transition_graph(), mode(60, 720));
  EXPECT_FALSE(ctl.decision_due());
  EXPECT_THROW(ctl.decide(), ContractError);
  for (int k = 0; k < 119; ++k) ctl.step(ModeProbabilities::uniform(), 1.0 / 60);
  EXPECT_FALSE(ctl.decision_due());
  EXPECT_THROW(ctl.decide(), ContractError);
  ctl.step(ModeProbabilities::uniform(), 1.0 / 60);
  EXPECT_TRUE(ctl.decision_due());
  ctl.decide();
  EXPECT_EQ(ctl.state().time_since_decision, 0.0);
}

TEST(Controller, RejectsUnnormalizedEmissionsAndBadSteps) {
  ModeController ctl(default_transition_graph(), mode(60, 720));
  ModeProbabilities p = ModeProbabilities::uniform();
  p.frame_rate[0] += 0.002;
  EXPECT_THROW(ctl.step(p, 0.01), ArgumentError);
  p = ModeProbabilities::uniform();
  p.resolution[0] = -0.1;
  p.resolution[1] += 0.1;
  EXPECT_THROW(ctl.step(p, 0.01), ArgumentError);
  EXPECT_THROW(ctl.step(ModeProbabilities::uniform(), 0.0), ArgumentError);
  EXPECT_THROW(ModeController(default_transition_graph(), mode(65, 720)), ArgumentError);
}

TEST(Controller, ReanchorsAfterDecision) {
  ModeController ctl(default_transition_graph(), mode(30, 1080));
  run_window(ctl, peaked(60, 720, 0.9));
  ctl.decide();
  const ControllerState& s = ctl.state();
  const int f = s.frame_rate_index;
  const TransitionGraph g = default_transition_graph();
  for (int j = 0; j < 10; ++j) {
    const double w = g.frame_rate[f][j];
    if (w == 0.0) {
      EXPECT_TRUE(std::isinf(s.score_f[j]) && s.score_f[j] < 0);
    } else {
      EXPECT_NEAR(s.score_f[j], std::log(w), 1e-15);
    }
  }
  EXPECT_EQ(s.score_f[f], 0.0);
}

TEST(Controller, ScoresStayShiftedAndBlockedStatesAreNegativeInfinity) {
  ModeController ctl(default_transition_graph(), mode(30, 360));
  ctl.step(peaked(30, 360, 0.7), 1.0 / 30);
  const ControllerState& s = ctl.state();
  EXPECT_EQ(*std::max_element(s.score_f.begin(), s.score_f.end()), 0.0);
  // The anchor already spans one transition, so one step from 30 Hz reaches
  // at most 90 Hz.
  for (int j = 7; j < 10; ++j) EXPECT_EQ(s.score_f[j], -std::numeric_limits<double>::infinity());
}

TEST(Controller, ExactZeroEmissionsDoNotEraseEveryPath) {
  ModeController ctl(default_transition_graph(), mode(30, 360));
  // All mass on a rung unreachable in one step.
  for (int k = 0; k < 60; ++k) {
    ctl.step(peaked(120, 1080), 1.0 / 30);
    for (double v : ctl.state().score_f) EXPECT_FALSE(std::isnan(v));
  }
  const VideoMode m = ctl.decide();
  EXPECT_EQ(m, mode(60, 480));
}

// Scaling emissions uniformly shifts every log score by the same constant,
// which the max-shift removes.
TEST(Controller, ScoreShiftInvariance) {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    ModeController a(default_transition_graph(), mode(60, 720));
    ModeController b(default_transition_graph(), mode(60, 720));
    for (int d = 0; d < 3; ++d) {
      const int hz = a.current_mode().frame_rate.hz;
      for (int k = 0; k < 2 * hz; ++k) {
        ModeProbabilities p;
        double sf = 0.0;
        double sr = 0.0;
        for (double& v : p.frame_rate) sf += (v = rng.uniform(0.01, 1.0));
        for (double& v : p.resolution) sr += (v = rng.uniform(0.01, 1.0));
        for (double& v : p.frame_rate) v /= sf;
        for (double& v : p.resolution) v /= sr;
        ModeProbabilities q = p;
        for (double& v : q.frame_rate) v *= 1.0005;
        for (double& v : q.resolution) v *= 0.9995;
        a.step(p, 1.0 / hz);
        b.step(q, 1.0 / hz);
      }
      EXPECT_EQ(a.decide(), b.decide());
    }
  }
}

TEST(Controller, IidUniformEmissionsNeverChangeState) {
  Rng rng(5);
  const ModeLadder& l = ModeLadder::standard();
  int changes = 0;
  for (int d = 0; d < 1000; ++d) {
    ModeController ctl(default_transition_graph(),
                       l.mode(static_cast<int>(rng.below(10)), static_cast<int>(rng.below(5))));
    const VideoMode before = ctl.current_mode();
    run_window(ctl, ModeProbabilities::uniform());
    changes += ctl.decide() == before ? 0 : 1;
  }
  EXPECT_LT(changes, 500);
  EXPECT_EQ(changes, 0);
}

int changes_under_noise(const TransitionGraph& graph, std::uint64_t seed) {
  Rng rng(seed);
  ModeController ctl(graph, mode(60, 720));
  int changes = 0;
  for (int d = 0; d < 1000; ++d) {
    const VideoMode before = ctl.current_mode();
    const int hz = before.frame_rate.hz;
    for (int k = 0; k < 2 * hz; ++k) {
      ModeProbabilities p;
      double sf = 0.0;
      double sr = 0.0;
      // Flat Dirichlet draws: no consistent evidence for any rung.
      for (double& v : p.frame_rate) sf += (v = -std::log(1.0 - rng.uniform()));
      for (double& v : p.resolution) sr += (v = -std::log(1.0 - rng.uniform()));
      for (double& v : p.frame_rate) v /= sf;
      for (double& v : p.resolution) v /= sr;
      ctl.step(p, 1.0 / hz);
    }
    changes += ctl.decide() == before ? 0 : 1;
  }
  return changes;
}

// Per-frame noise this strong swamps the transition penalties, so the
// default graph still switches often; it must switch less than a graph
// without any self-transition preference.
TEST(Controller, SelfWeightDampsSwitchingUnderNoise) {
  TransitionGraph flat = default_transition_graph();
  for (auto& row : flat.frame_rate) {
    for (double& w : row) w = w > 0.0 ? 1.0 : 0.0;
  }
  for (auto& row : flat.resolution) {
    for (double& w : row) w = w > 0.0 ? 1.0 : 0.0;
  }
  EXPECT_LT(changes_under_noise(default_transition_graph(), 5), changes_under_noise(flat, 5));
}

TEST(Controller, RandomStreamsNeverBreakTheRules) {
  const testing::ControllerSweep sweep = testing::sweep_controller(1000, 6);
  EXPECT_EQ(sweep.frame_rate_violations, 0u);
  EXPECT_EQ(sweep.resolution_violations, 0u);
  EXPECT_EQ(sweep.cadence_violations, 0u);
  EXPECT_GT(sweep.changes, 0u);
}

TEST(Controller, DecisionsAreDeterministic) {
  const testing::ControllerSweep a = testing::sweep_controller(200, 7);
  const testing::ControllerSweep b = testing::sweep_controller(200, 7);
  EXPECT_EQ(a.changes, b.changes);
}

}  // namespace
}  // namespace adastream
