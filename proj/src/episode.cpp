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

#include "pushmpc/episode.hpp"

#include <cmath>

#include "pushmpc/pid.hpp"
#include "pushmpc/rng.hpp"
#include "pushmpc/world.hpp"

namespace pushmpc {
namespace {

// Stream tags for deriving independent per-purpose generators.
constexpr std::uint64_t kPlanStream = 1;
constexpr std::uint64_t kNoiseStream = 2;

BoundaryState boundary_from_sample(const Trajectory::Sample& s) {
  return BoundaryState{s.position, s.velocity, s.acceleration, s.jerk};
}

}  // namespace

EpisodeOutput run_episode(const WorldConfig& world_config, const PlannerConfig& planner_config,
                          const PidGains& gains, const EpisodeSetup& setup, std::uint64_t seed,
                          int threads) {
  EpisodeOutput out;
  World env(world_config, setup.env_params, setup.initial_state);
  IcemPlanner planner(planner_config, world_config, gains);
  PidController pid(gains, world_config.dt);
  MinSnapSolver executed_solver(1, planner_config.segment_duration);
  Rng noise_rng(derive_seed(seed, kNoiseStream, 0));

  const double dt = world_config.dt;
  const long long replan_steps =
      std::max<long long>(1, std::llround(planner_config.replan_period / dt));
  const long long latency_steps = setup.profile == Profile::kRealtime ? replan_steps : 0;
  // Terminal checks bound the loop; this is a safety net only.
  const long long max_steps =
      std::llround(setup.task.time_limit / dt) + 4 * replan_steps + 16;

  out.rollout.mode = setup.record_mode;
  out.rollout.dt = dt;
  out.rollout.initial_state = env.snapshot();

  const Vec2 hold_position = env.state().pusher.position;
  Trajectory current;
  bool executing = false;
  long long trajectory_start_step = 0;
  Trajectory pending;
  bool has_pending = false;
  long long pending_apply_step = 0;

  auto record_result_sample = [&](const SimState& s) {
    out.result.times.push_back(s.time);
    out.result.object_trajectory.push_back(s.objects[0].position);
    out.result.pusher_trajectory.push_back(s.pusher.position);
    out.result.object_yaw.push_back(s.objects[0].yaw);
    out.result.goal_losses.push_back(goal_loss(s, setup.task));
  };
  record_result_sample(env.state());

  TerminalStatus status = TerminalStatus::kRunning;
  for (long long k = 0; k < max_steps; ++k) {
    status = terminal_check(env.state(), setup.task);
    if (status != TerminalStatus::kRunning) break;

    if (has_pending && k >= pending_apply_step) {
      current = std::move(pending);
      executing = true;
      trajectory_start_step = k;
      has_pending = false;
      pid.reset();
    }

    if (k % replan_steps == 0) {
      // Hand over from the currently executing trajectory at the time the
      // new one will start, so position through jerk stay continuous.
      const long long start_step = k + latency_steps;
      BoundaryState start;
      if (executing) {
        const double local =
            static_cast<double>(start_step - trajectory_start_step) * dt;
        start = boundary_from_sample(current.sample(local));
      } else {
        start.position = env.state().pusher.position;
        start.velocity = env.state().pusher.lin_velocity;
      }
      PlanResult plan =
          planner.plan(env.snapshot(), start, setup.model_params, setup.task,
                       derive_seed(seed, kPlanStream, static_cast<std::uint64_t>(out.plan_calls)),
                       threads);
      ++out.plan_calls;
      out.planner_evaluations += plan.evaluations;
      if (!std::isfinite(plan.best_cost)) {
        out.failure = "planner: no finite-cost candidate";
        break;
      }
      KeypointSequence first_segment;
      first_segment.segment_duration = planner_config.segment_duration;
      first_segment.keypoints.push_back(plan.first_keypoint());
      Trajectory planned = executed_solver.solve(start, first_segment);
      if (latency_steps == 0) {
        current = std::move(planned);
        executing = true;
        trajectory_start_step = k;
        pid.reset();
      } else {
        pending = std::move(planned);
        has_pending = true;
        pending_apply_step = start_step;
      }
    }

    Vec2 ref_position = hold_position;
    Vec2 ref_velocity = Vec2::Zero();
    if (executing) {
      const Trajectory::Sample ref =
          current.sample(static_cast<double>(k - trajectory_start_step) * dt);
      ref_position = ref.position;
      ref_velocity = ref.velocity;
    }
    const Vec2 force = pid.force(ref_position, ref_velocity, env.state().pusher);
    const SimState& s = env.step(force);

    out.rollout.times.push_back(s.time);
    out.rollout.controls.push_back(setup.record_mode == ControlMode::kForce
                                       ? force
                                       : s.pusher.lin_velocity);
    Vec2 obs_pusher = s.pusher.position;
    Vec2 obs_object = s.objects[0].position;
    double obs_yaw = s.objects[0].yaw;
    if (setup.observation_noise_std > 0.0) {
      obs_pusher += setup.observation_noise_std * Vec2(noise_rng.normal(), noise_rng.normal());
      obs_object += setup.observation_noise_std * Vec2(noise_rng.normal(), noise_rng.normal());
      obs_yaw = wrap_angle(obs_yaw + setup.observation_noise_std * noise_rng.normal());
    }
    out.rollout.observed_pusher.push_back(obs_pusher);
    out.rollout.observed_object.push_back(obs_object);
    out.rollout.observed_yaw.push_back(obs_yaw);
    record_result_sample(s);
  }

  out.result.success = status == TerminalStatus::kSuccess;
  out.result.terminal_time = env.state().time;
  return out;
}

}  // namespace pushmpc
