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

#ifndef PUSHMPC_TASK_HPP_
#define PUSHMPC_TASK_HPP_

#include <cmath>

#include "pushmpc/types.hpp"

namespace pushmpc {

// Pushing task: drive the object to a goal pose before the deadline.
struct TaskSpec {
  Vec2 goal_position = Vec2::Zero();
  double goal_yaw = 0.0;
  double epsilon = 1e-3;        // success threshold on the goal loss
  double time_limit = 5.0;      // [s]
  double lambda_rot = 2e-2;     // rotation loss weight
  double lambda_dist = 5e-4;    // pusher-object distance weight
  double lambda_accel = 1e-5;   // pusher acceleration effort weight
};

enum class TerminalStatus { kRunning, kSuccess, kTimeout };

inline double position_loss(const SimState& state, const TaskSpec& task) {
  return (state.objects[0].position - task.goal_position).squaredNorm();
}

// sin^2 of the yaw error: symmetric under 180 degree flips of the box.
inline double rotation_loss(const SimState& state, const TaskSpec& task) {
  const double s = std::sin(state.objects[0].yaw - task.goal_yaw);
  return s * s;
}

// Goal tracking loss used both for terminal checks and per-step metrics.
inline double goal_loss(const SimState& state, const TaskSpec& task) {
  return position_loss(state, task) + task.lambda_rot * rotation_loss(state, task);
}

inline TerminalStatus terminal_check(const SimState& state, const TaskSpec& task) {
  if (state.time >= task.time_limit) return TerminalStatus::kTimeout;
  if (goal_loss(state, task) < task.epsilon) return TerminalStatus::kSuccess;
  return TerminalStatus::kRunning;
}

// Cost of one planner candidate: terminal goal and pusher-distance terms
// plus mean squared planned pusher acceleration over the horizon.
inline double candidate_cost(const SimState& final_state, double mean_squared_accel,
                             const TaskSpec& task) {
  const double dist =
      (final_state.objects[0].position - final_state.pusher.position).squaredNorm();
  return goal_loss(final_state, task) + task.lambda_dist * dist +
         task.lambda_accel * mean_squared_accel;
}

}  // namespace pushmpc

#endif  // PUSHMPC_TASK_HPP_
