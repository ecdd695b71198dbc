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

#include "pushmpc/icem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pushmpc/colored_noise.hpp"
#include "pushmpc/parallel.hpp"
#include "pushmpc/pid.hpp"
#include "pushmpc/rng.hpp"

namespace pushmpc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Fits per-(keypoint, dimension) mean and population std over sequences.
SamplingDist fit_gaussian(const std::vector<const KeypointSequence*>& elites) {
  const int m = static_cast<int>(elites.front()->keypoints.size());
  const double count = static_cast<double>(elites.size());
  SamplingDist dist;
  dist.means = Eigen::MatrixXd::Zero(m, 4);
  dist.stds = Eigen::MatrixXd::Zero(m, 4);
  for (const KeypointSequence* seq : elites) {
    for (int j = 0; j < m; ++j) {
      const Keypoint& kp = seq->keypoints[j];
      dist.means.row(j) += Eigen::RowVector4d(kp.position.x(), kp.position.y(),
                                              kp.velocity.x(), kp.velocity.y());
    }
  }
  dist.means /= count;
  for (const KeypointSequence* seq : elites) {
    for (int j = 0; j < m; ++j) {
      const Keypoint& kp = seq->keypoints[j];
      const Eigen::RowVector4d v(kp.position.x(), kp.position.y(), kp.velocity.x(),
                                 kp.velocity.y());
      dist.stds.row(j) += (v - dist.means.row(j)).cwiseAbs2();
    }
  }
  dist.stds = (dist.stds / count).cwiseSqrt();
  return dist;
}

// Stable order: cost ascending, candidate index breaking ties.
std::vector<int> order_by_cost(const std::vector<double>& costs) {
  std::vector<int> idx(costs.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (costs[a] != costs[b]) return costs[a] < costs[b];
    return a < b;
  });
  return idx;
}

}  // namespace

void PlannerConfig::validate() const {
  if (keypoints < 1) throw std::invalid_argument("PlannerConfig: keypoints must be >= 1");
  if (!(segment_duration > 0.0))
    throw std::invalid_argument("PlannerConfig: segment_duration must be positive");
  if (population < 1) throw std::invalid_argument("PlannerConfig: population must be >= 1");
  if (iterations < 1) throw std::invalid_argument("PlannerConfig: iterations must be >= 1");
  if (!(elite_fraction > 0.0) || elite_fraction > 1.0)
    throw std::invalid_argument("PlannerConfig: elite_fraction must be in (0, 1]");
  if (!(init_std_pos >= 0.0) || !(init_std_vel >= 0.0))
    throw std::invalid_argument("PlannerConfig: init stds must be non-negative");
  if (!(max_keypoint_speed > 0.0))
    throw std::invalid_argument("PlannerConfig: max_keypoint_speed must be positive");
  if (!(workspace_min.array() < workspace_max.array()).all())
    throw std::invalid_argument("PlannerConfig: empty workspace");
  if (!(replan_period > 0.0))
    throw std::invalid_argument("PlannerConfig: replan_period must be positive");
}

std::vector<KeypointSequence> sample_population(const SamplingDist& dist,
                                                const PlannerConfig& config,
                                                std::uint64_t seed, int iteration) {
  const int m = static_cast<int>(dist.means.rows());
  std::vector<KeypointSequence> population(config.population);
  for (int i = 0; i < config.population; ++i) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(iteration), i));
    Eigen::MatrixXd noise(m, 4);
    for (int d = 0; d < 4; ++d) {
      noise.col(d) = colored_noise(config.colored_noise_beta, m, rng);
    }
    KeypointSequence seq;
    seq.segment_duration = config.segment_duration;
    seq.keypoints.resize(m);
    for (int j = 0; j < m; ++j) {
      Eigen::RowVector4d v = dist.means.row(j) + dist.stds.row(j).cwiseProduct(noise.row(j));
      v[0] = std::clamp(v[0], config.workspace_min.x(), config.workspace_max.x());
      v[1] = std::clamp(v[1], config.workspace_min.y(), config.workspace_max.y());
      v[2] = std::clamp(v[2], -config.max_keypoint_speed, config.max_keypoint_speed);
      v[3] = std::clamp(v[3], -config.max_keypoint_speed, config.max_keypoint_speed);
      seq.keypoints[j].position = Vec2(v[0], v[1]);
      seq.keypoints[j].velocity = Vec2(v[2], v[3]);
    }
    population[i] = std::move(seq);
  }
  return population;
}

SamplingDist refit_elites(const std::vector<Candidate>& candidates, double elite_fraction) {
  if (candidates.empty()) throw std::invalid_argument("refit_elites: no candidates");
  std::vector<double> costs(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) costs[i] = candidates[i].cost;
  const std::vector<int> order = order_by_cost(costs);
  const int elite_count = std::max(
      1, static_cast<int>(elite_fraction * static_cast<double>(candidates.size())));
  std::vector<const KeypointSequence*> elites;
  elites.reserve(elite_count);
  for (int e = 0; e < elite_count; ++e) elites.push_back(&candidates[order[e]].keypoints);
  return fit_gaussian(elites);
}

RolloutResult rollout_trajectory(const WorldConfig& world_config, const PhysParams& params,
                                 const SimState& initial, const Trajectory& trajectory,
                                 const PidGains& gains, bool record_states) {
  RolloutResult result;
  World world(world_config, params, initial);
  PidController pid(gains, world_config.dt);
  const double dt = world_config.dt;
  const long long steps = std::llround(trajectory.duration() / dt);

  if (record_states) {
    result.states.reserve(steps + 1);
    result.states.push_back(world.snapshot());
  }
  double accel_sq = 0.0;
  for (long long k = 0; k <= steps; ++k) {
    accel_sq += trajectory.sample(static_cast<double>(k) * dt).acceleration.squaredNorm();
  }
  result.mean_squared_accel = accel_sq / static_cast<double>(steps + 1);

  for (long long k = 0; k < steps; ++k) {
    const Trajectory::Sample ref = trajectory.sample(static_cast<double>(k) * dt);
    const Vec2 force = pid.force(ref.position, ref.velocity, world.state().pusher);
    try {
      world.step(force);
    } catch (const SimDivergedError&) {
      result.diverged = true;
      break;
    }
    if (record_states) result.states.push_back(world.snapshot());
  }
  if (!record_states) result.states.push_back(world.snapshot());
  return result;
}

IcemPlanner::IcemPlanner(const PlannerConfig& config, const WorldConfig& world_config,
                         const PidGains& gains)
    : config_(config),
      world_config_(world_config),
      gains_(gains),
      solver_(config.keypoints, config.segment_duration) {
  config_.validate();
  world_config_.validate();
}

void IcemPlanner::reset() {
  have_warm_ = false;
}

SamplingDist IcemPlanner::initial_distribution(const SimState& model_state) const {
  const int m = config_.keypoints;
  SamplingDist dist;
  dist.means = Eigen::MatrixXd::Zero(m, 4);
  if (have_warm_) {
    // Shift one keypoint forward, repeating the last row.
    for (int j = 0; j < m; ++j) dist.means.row(j) = warm_means_.row(std::min(j + 1, m - 1));
  } else {
    for (int j = 0; j < m; ++j) {
      dist.means(j, 0) = model_state.pusher.position.x();
      dist.means(j, 1) = model_state.pusher.position.y();
    }
  }
  dist.stds = Eigen::MatrixXd::Zero(m, 4);
  dist.stds.col(0).setConstant(config_.init_std_pos);
  dist.stds.col(1).setConstant(config_.init_std_pos);
  dist.stds.col(2).setConstant(config_.init_std_vel);
  dist.stds.col(3).setConstant(config_.init_std_vel);
  return dist;
}

PlanResult IcemPlanner::plan(const SimState& model_state, const BoundaryState& start,
                             const PhysParams& params, const TaskSpec& task,
                             std::uint64_t seed, int threads) {
  const Evaluator evaluate = [&](const KeypointSequence& seq) -> double {
    try {
      const Trajectory traj = solver_.solve(start, seq);
      const RolloutResult rollout = rollout_trajectory(world_config_, params, model_state,
                                                       traj, gains_, /*record_states=*/false);
      if (rollout.diverged) return kInf;
      return candidate_cost(rollout.states.back(), rollout.mean_squared_accel, task);
    } catch (const PlanningError&) {
      return kInf;
    } catch (const SimDivergedError&) {
      return kInf;
    }
  };
  PlanResult result = plan_with_evaluator(initial_distribution(model_state), evaluate, seed,
                                          threads);
  if (config_.shift_means) {
    warm_means_ = result.final_dist.means;
    have_warm_ = true;
  }
  return result;
}

PlanResult IcemPlanner::plan_with_evaluator(const SamplingDist& init, const Evaluator& evaluate,
                                            std::uint64_t seed, int threads) const {
  PlanResult result;
  SamplingDist dist = init;
  const int elite_count =
      std::max(1, static_cast<int>(config_.elite_fraction * config_.population));

  std::vector<std::pair<double, KeypointSequence>> elites;
  double best_cost = kInf;
  KeypointSequence best_sequence;
  bool have_best = false;

  for (int l = 0; l < config_.iterations; ++l) {
    std::vector<KeypointSequence> pool = sample_population(dist, config_, seed, l);
    if (l > 0 && config_.reinject_elites) {
      for (const auto& e : elites) pool.push_back(e.second);
    }
    const int n = static_cast<int>(pool.size());
    std::vector<double> costs(n, kInf);
    parallel_for(n, threads, [&](int i) {
      try {
        costs[i] = evaluate(pool[i]);
      } catch (...) {
        costs[i] = kInf;
      }
    });
    result.evaluations += n;

    const std::vector<int> order = order_by_cost(costs);
    elites.clear();
    for (int e = 0; e < std::min(elite_count, n); ++e) {
      elites.emplace_back(costs[order[e]], pool[order[e]]);
    }
    if (!have_best || elites.front().first < best_cost) {
      best_cost = elites.front().first;
      best_sequence = elites.front().second;
      have_best = true;
    }
    result.iteration_best.push_back(best_cost);

    std::vector<const KeypointSequence*> elite_seqs;
    elite_seqs.reserve(elites.size());
    for (const auto& e : elites) elite_seqs.push_back(&e.second);
    dist = fit_gaussian(elite_seqs);
  }

  result.best_sequence = std::move(best_sequence);
  result.best_cost = best_cost;
  result.final_dist = std::move(dist);
  return result;
}

}  // namespace pushmpc
