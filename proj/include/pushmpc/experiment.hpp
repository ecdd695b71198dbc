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

#ifndef PUSHMPC_EXPERIMENT_HPP_
#define PUSHMPC_EXPERIMENT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "pushmpc/episode.hpp"
#include "pushmpc/metrics.hpp"
#include "pushmpc/param_adapt.hpp"

namespace pushmpc {

// Initial poses and goal of one pushing task.
struct TaskInit {
  Vec2 object_position = Vec2::Zero();
  double object_yaw = 0.0;
  Vec2 pusher_position = Vec2(-0.08, 0.0);
  Vec2 goal_position = Vec2::Zero();
  double goal_yaw = 0.0;
};

struct ExperimentConfig {
  WorldConfig world;
  PhysParams env_params;          // environment ground truth
  PlannerConfig planner;
  AdaptConfig adapt;
  PidGains gains;
  TaskSpec task_template;         // thresholds and loss weights
  std::vector<TaskInit> training_tasks;
  std::vector<TaskInit> eval_tasks;
  int runs = 5;
  int episodes = 10;
  int validation_rollouts = 5;
  int eval_period = 1;            // evaluate on eval_tasks every k episodes; 0 disables
  double observation_noise_std = 0.0;
  Profile profile = Profile::kSim;
  ControlMode record_mode = ControlMode::kForce;
  double metrics_smoothing_sigma = 0.0;  // [samples]
  std::uint64_t seed = 1;

  void validate() const;
};

// Desk-scale defaults for the given profile; the realtime profile lowers the
// planning rate and budget, sharpens the success threshold, records
// velocities, and smooths metric trajectories.
ExperimentConfig default_config(Profile profile);

// Restores full-scale settings: 10 runs, population 128, 4 iterations.
void apply_paper_scale(ExperimentConfig& config);

// JSON round trip. load starts from default_config for the profile named in
// the file (default sim) and overlays every present field.
ExperimentConfig load_config(const std::string& path);
void save_config(const ExperimentConfig& config, const std::string& path);

struct TaskEvalRecord {
  int task = 0;
  bool success = false;
  double terminal_time = 0.0;
  double object_loss = 0.0;
  double object_trajectory_length = 0.0;
  double pusher_trajectory_length = 0.0;
};

// One logged checkpoint: parameters after the episode's adaptation (episode
// 0 is the prior, before any interaction) plus its evaluations.
struct EpisodeRecord {
  int run = 0;
  int episode = 0;
  Vec4 params = Vec4::Zero();
  Vec4 rel_errors = Vec4::Zero();
  double validation_loss = 0.0;
  bool trained = false;
  bool training_success = false;
  double training_time = 0.0;
  int training_steps = 0;
  double training_final_loss = 0.0;
  double adapt_best_cost = 0.0;
  bool adapt_degenerate = false;
  std::string failure;
  std::vector<TaskEvalRecord> eval;
  MetricsReport eval_report;
  bool evaluated = false;
};

struct RunLog {
  std::vector<EpisodeRecord> records;
  std::vector<ReplayBuffer> buffers;  // final training buffer per run
};

// Runs the full adaptation experiment: per run, sample a prior, then per
// episode execute a training task with the current best parameters, append
// the rollout, re-optimize parameters on the buffer, and evaluate on
// validation replays (and periodically on the eval tasks).
RunLog run_experiment(const ExperimentConfig& config, int threads);

// Writes records.jsonl, params.csv, metrics.csv, config.json, and
// buffers/run_<r>.json under out_dir. Output is byte-deterministic for a
// given config and seed, independent of thread count.
void emit_report(const RunLog& log, const ExperimentConfig& config,
                 const std::string& out_dir);

// Single-episode and eval-only entry points used by the CLI.
EpisodeOutput run_single_episode(const ExperimentConfig& config, int task_index,
                                 const PhysParams& model_params, std::uint64_t seed,
                                 int threads);
std::vector<EpisodeResult> run_eval_tasks(const ExperimentConfig& config,
                                          const PhysParams& model_params, std::uint64_t seed,
                                          int threads, std::vector<TaskEvalRecord>* records);

}  // namespace pushmpc

#endif  // PUSHMPC_EXPERIMENT_HPP_
