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

#ifndef PUSHMPC_METRICS_HPP_
#define PUSHMPC_METRICS_HPP_

#include <string>
#include <vector>

#include "pushmpc/types.hpp"

namespace pushmpc {

// Everything recorded about one executed episode that metrics consume.
struct EpisodeResult {
  bool success = false;
  double terminal_time = 0.0;            // [s]
  std::vector<double> times;             // sample times, including t = 0
  std::vector<Vec2> object_trajectory;   // index-aligned with times
  std::vector<Vec2> pusher_trajectory;
  std::vector<double> object_yaw;
  std::vector<double> goal_losses;       // per-sample goal tracking loss
};

struct MetricsReport {
  int episodes = 0;
  double success_rate = 0.0;
  double mean_execution_time = 0.0;      // [s]
  double avg_object_loss = 0.0;          // scaled per-episode goal loss sum
  double object_trajectory_length = 0.0; // [m] mean over episodes
  double pusher_trajectory_length = 0.0; // [m] mean over episodes
};

// Fraction of successful episodes.
double success_rate(const std::vector<EpisodeResult>& episodes);

// Mean terminal time over all episodes (timeouts enter at the time limit).
double mean_execution_time(const std::vector<EpisodeResult>& episodes);

// Mean over episodes of 1e-4 * sum of per-sample goal losses.
double avg_object_loss(const std::vector<EpisodeResult>& episodes);

// Gaussian smoothing over time with std sigma in samples, kernel truncated
// at 4 sigma and renormalized at the edges. sigma <= 0 returns the input.
std::vector<Vec2> gaussian_smooth(const std::vector<Vec2>& points, double sigma);

// Sum of consecutive distances after smoothing.
double trajectory_length(const std::vector<Vec2>& points, double smoothing_sigma);

// Aggregates one eval-task batch; smoothing_sigma applies to both
// trajectory lengths (0 in the noise-free simulation profile).
MetricsReport aggregate(const std::vector<EpisodeResult>& episodes, double smoothing_sigma);

// One CSV row per episode plus an aggregate row.
void write_metrics_csv(const std::vector<EpisodeResult>& episodes, double smoothing_sigma,
                       const std::string& path);

}  // namespace pushmpc

#endif  // PUSHMPC_METRICS_HPP_
