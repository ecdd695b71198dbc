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

#ifndef PUSHMPC_REPLAY_HPP_
#define PUSHMPC_REPLAY_HPP_

#include <string>
#include <vector>

#include "pushmpc/types.hpp"

namespace pushmpc {

// What the recorded control sequence holds: applied pusher forces, or
// post-step pusher velocities to be commanded directly on replay.
enum class ControlMode { kForce, kVelocity };

// One recorded task execution: the initial state, the controls, and the
// observed post-step trajectories, index-aligned.
struct Rollout {
  ControlMode mode = ControlMode::kForce;
  double dt = 1e-3;
  SimState initial_state;
  std::vector<double> times;
  std::vector<Vec2> controls;
  std::vector<Vec2> observed_pusher;
  std::vector<Vec2> observed_object;
  std::vector<double> observed_yaw;

  std::size_t size() const { return controls.size(); }
  bool consistent() const {
    return times.size() == controls.size() && observed_pusher.size() == controls.size() &&
           observed_object.size() == controls.size() && observed_yaw.size() == controls.size();
  }
};

struct ReplayBuffer {
  std::vector<Rollout> rollouts;

  std::size_t size() const { return rollouts.size(); }
  bool empty() const { return rollouts.empty(); }
};

// Adds a rollout; length-mismatched sequences are rejected.
void append(ReplayBuffer& buffer, Rollout rollout);

// Trajectories produced by re-running recorded controls under candidate
// parameters, index-aligned with the rollout's observations.
struct PredictedTrajectories {
  std::vector<Vec2> pusher;
  std::vector<Vec2> object;
  std::vector<double> yaw;
};

// Re-runs the recorded controls from the recorded initial state under the
// candidate parameters. Propagates SimDivergedError on divergence.
PredictedTrajectories replay(const PhysParams& candidate, const Rollout& rollout,
                             const WorldConfig& world_config);

// Total replay loss of a candidate over the buffer: squared object position
// error, kappa_pusher-weighted squared pusher position error, and
// kappa_rotation-weighted squared yaw angle error (angle between heading
// vectors, dot product clamped to [-1, 1]). Divergence scores +infinity.
double replay_cost(const PhysParams& candidate, const ReplayBuffer& buffer,
                   const WorldConfig& world_config, double kappa_pusher,
                   double kappa_rotation);

// JSON (de)serialization of buffers; load validates structure and lengths.
void save_buffer(const ReplayBuffer& buffer, const std::string& path);
ReplayBuffer load_buffer(const std::string& path);

}  // namespace pushmpc

#endif  // PUSHMPC_REPLAY_HPP_
