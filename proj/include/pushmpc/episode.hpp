// Copyright 2026 The pushmpc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PUSHMPC_EPISODE_HPP_
#define PUSHMPC_EPISODE_HPP_

#include <cstdint>
#include <string>

#include "pushmpc/icem.hpp"
#include "pushmpc/metrics.hpp"
#include "pushmpc/replay.hpp"
#include "pushmpc/task.hpp"
#include "pushmpc/types.hpp"

namespace pushmpc {

// sim runs the planner with the environment paused; realtime emulates a
// fixed one-replan-period compute latency between planning and applying a
// trajectory (deterministically, with no wall-clock coupling).
enum class Profile { kSim, kRealtime };

struct EpisodeSetup {
  TaskSpec task;
  SimState initial_state;
  PhysParams env_params;    // environment ground truth
  PhysParams model_params;  // what the planner believes
  Profile profile = Profile::kSim;
  ControlMode record_mode = ControlMode::kForce;
  double observation_noise_std = 0.0;  // additive, on recorded observations only
};

struct EpisodeOutput {
  EpisodeResult result;
  Rollout rollout;
  int plan_calls = 0;
  long long planner_evaluations = 0;
  std::string failure;  // non-empty if the planner failed mid-episode
};

// Runs one closed-loop pushing episode: replan every replan_period, execute
// the best first keypoint as a single-segment trajectory, track it with the
// PID loop at the world rate, and record the rollout for adaptation.
EpisodeOutput run_episode(const WorldConfig& world_config, const PlannerConfig& planner_config,
                          const PidGains& gains, const EpisodeSetup& setup, std::uint64_t seed,
                          int threads);

}  // namespace pushmpc

#endif  // PUSHMPC_EPISODE_HPP_
