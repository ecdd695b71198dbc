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

#ifndef PUSHMPC_ICEM_HPP_
#define PUSHMPC_ICEM_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "pushmpc/min_snap.hpp"
#include "pushmpc/task.hpp"
#include "pushmpc/types.hpp"
#include "pushmpc/world.hpp"

namespace pushmpc {

// Sampling-based planner settings. Keypoints are sampled with colored noise
// correlated along the keypoint index, refit to elites over a few
// iterations, and warm-started between consecutive calls.
struct PlannerConfig {
  int keypoints = 2;                 // M keypoints per candidate
  double segment_duration = 0.3;     // [s] per keypoint segment
  int population = 64;               // N fresh samples per iteration
  int iterations = 2;                // C refinement iterations
  double elite_fraction = 0.2;       // p
  double colored_noise_beta = 2.0;   // noise spectrum exponent
  double init_std_pos = 0.1;         // [m] sampling std of keypoint positions
  double init_std_vel = 0.2;         // [m/s] sampling std of keypoint velocities
  double max_keypoint_speed = 0.5;   // [m/s] clip for sampled velocities
  Vec2 workspace_min = Vec2(-1.0, -1.0);  // [m] clip for sampled positions
  Vec2 workspace_max = Vec2(1.0, 1.0);
  double replan_period = 0.05;       // [s] between planner calls
  bool reinject_elites = true;       // carry elites into the next iteration
  bool shift_means = true;           // warm-start means between calls

  void validate() const;
};

// Per-(keypoint, dimension) Gaussian over [px, py, vx, vy].
struct SamplingDist {
  Eigen::MatrixXd means;  // M x 4
  Eigen::MatrixXd stds;   // M x 4
};

// One evaluated sample of the population.
struct Candidate {
  KeypointSequence keypoints;
  std::vector<SimState> states;
  double cost = 0.0;
};

struct PlanResult {
  KeypointSequence best_sequence;
  double best_cost = 0.0;
  SamplingDist final_dist;
  std::vector<double> iteration_best;  // best cost after each iteration
  long long evaluations = 0;           // rollouts (or surrogate calls) spent

  const Keypoint& first_keypoint() const { return best_sequence.keypoints.front(); }
};

// Draws the fresh population for one iteration. Candidate i of iteration l
// uses its own generator derived from (seed, l, i), so results are
// independent of evaluation order and thread count.
std::vector<KeypointSequence> sample_population(const SamplingDist& dist,
                                                const PlannerConfig& config,
                                                std::uint64_t seed, int iteration);

// Mean/std refit over the floor(p * candidates.size()) lowest-cost
// candidates (at least one). Ties break on candidate index.
SamplingDist refit_elites(const std::vector<Candidate>& candidates, double elite_fraction);

// Closed-loop rollout of one planned trajectory against the model world.
struct RolloutResult {
  std::vector<SimState> states;       // states[0] is the initial state
  double mean_squared_accel = 0.0;    // of the planned trajectory
  bool diverged = false;
};
RolloutResult rollout_trajectory(const WorldConfig& world_config, const PhysParams& params,
                                 const SimState& initial, const Trajectory& trajectory,
                                 const PidGains& gains, bool record_states = true);

class IcemPlanner {
 public:
  using Evaluator = std::function<double(const KeypointSequence&)>;

  IcemPlanner(const PlannerConfig& config, const WorldConfig& world_config,
              const PidGains& gains);

  // Plans from the given model state (a snapshot of the environment) with
  // candidate trajectories starting at `start`. Warm-starts from the
  // previous call by shifting keypoint means one slot.
  PlanResult plan(const SimState& model_state, const BoundaryState& start,
                  const PhysParams& params, const TaskSpec& task, std::uint64_t seed,
                  int threads);

  // Same optimizer loop against an arbitrary cost; does not touch warm-start
  // state. Used for direct tests of the optimizer and for surrogate costs.
  PlanResult plan_with_evaluator(const SamplingDist& init, const Evaluator& evaluate,
                                 std::uint64_t seed, int threads) const;

  // Drops warm-start state, e.g. between episodes.
  void reset();

  const PlannerConfig& config() const { return config_; }

 private:
  SamplingDist initial_distribution(const SimState& model_state) const;

  PlannerConfig config_;
  WorldConfig world_config_;
  PidGains gains_;
  MinSnapSolver solver_;
  Eigen::MatrixXd warm_means_;
  bool have_warm_ = false;
};

}  // namespace pushmpc

#endif  // PUSHMPC_ICEM_HPP_
