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

#include "pushmpc/metrics.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "pushmpc/number_format.hpp"

namespace pushmpc {

namespace {
constexpr double kLossScale = 1e-4;

double episode_loss_sum(const EpisodeResult& e) {
  double sum = 0.0;
  for (const double l : e.goal_losses) sum += l;
  return kLossScale * sum;
}
}  // namespace

double success_rate(const std::vector<EpisodeResult>& episodes) {
  if (episodes.empty()) return 0.0;
  double successes = 0.0;
  for (const EpisodeResult& e : episodes) successes += e.success ? 1.0 : 0.0;
  return successes / static_cast<double>(episodes.size());
}

double mean_execution_time(const std::vector<EpisodeResult>& episodes) {
  if (episodes.empty()) return 0.0;
  double total = 0.0;
  for (const EpisodeResult& e : episodes) total += e.terminal_time;
  return total / static_cast<double>(episodes.size());
}

double avg_object_loss(const std::vector<EpisodeResult>& episodes) {
  if (episodes.empty()) return 0.0;
  double total = 0.0;
  for (const EpisodeResult& e : episodes) total += episode_loss_sum(e);
  return total / static_cast<double>(episodes.size());
}

std::vector<Vec2> gaussian_smooth(const std::vector<Vec2>& points, double sigma) {
  if (sigma <= 0.0 || points.size() < 2) return points;
  const int n = static_cast<int>(points.size());
  const int radius = static_cast<int>(std::ceil(4.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  for (int k = -radius; k <= radius; ++k) {
    kernel[k + radius] = std::exp(-0.5 * k * k / (sigma * sigma));
  }
  std::vector<Vec2> smoothed(points.size());
  for (int i = 0; i < n; ++i) {
    Vec2 acc = Vec2::Zero();
    double weight = 0.0;
    const int lo = std::max(0, i - radius);
    const int hi = std::min(n - 1, i + radius);
    for (int j = lo; j <= hi; ++j) {
      const double w = kernel[j - i + radius];
      acc += w * points[j];
      weight += w;
    }
    smoothed[i] = acc / weight;  // renormalized at the edges
  }
  return smoothed;
}

double trajectory_length(const std::vector<Vec2>& points, double smoothing_sigma) {
  const std::vector<Vec2> smoothed = gaussian_smooth(points, smoothing_sigma);
  double length = 0.0;
  for (std::size_t i = 1; i < smoothed.size(); ++i) {
    length += (smoothed[i] - smoothed[i - 1]).norm();
  }
  return length;
}

MetricsReport aggregate(const std::vector<EpisodeResult>& episodes, double smoothing_sigma) {
  MetricsReport report;
  report.episodes = static_cast<int>(episodes.size());
  if (episodes.empty()) return report;
  report.success_rate = success_rate(episodes);
  report.mean_execution_time = mean_execution_time(episodes);
  report.avg_object_loss = avg_object_loss(episodes);
  for (const EpisodeResult& e : episodes) {
    report.object_trajectory_length += trajectory_length(e.object_trajectory, smoothing_sigma);
    report.pusher_trajectory_length += trajectory_length(e.pusher_trajectory, smoothing_sigma);
  }
  report.object_trajectory_length /= static_cast<double>(episodes.size());
  report.pusher_trajectory_length /= static_cast<double>(episodes.size());
  return report;
}

void write_metrics_csv(const std::vector<EpisodeResult>& episodes, double smoothing_sigma,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_metrics_csv: cannot open " + path);
  out << "episode,success,terminal_time,object_loss,object_trajectory_length,"
         "pusher_trajectory_length\n";
  for (std::size_t i = 0; i < episodes.size(); ++i) {
    const EpisodeResult& e = episodes[i];
    out << i << ',' << (e.success ? 1 : 0) << ',' << format_double(e.terminal_time) << ','
        << format_double(episode_loss_sum(e)) << ','
        << format_double(trajectory_length(e.object_trajectory, smoothing_sigma)) << ','
        << format_double(trajectory_length(e.pusher_trajectory, smoothing_sigma)) << '\n';
  }
  const MetricsReport report = aggregate(episodes, smoothing_sigma);
  out << "aggregate," << format_double(report.success_rate) << ','
      << format_double(report.mean_execution_time) << ','
      << format_double(report.avg_object_loss) << ','
      << format_double(report.object_trajectory_length) << ','
      << format_double(report.pusher_trajectory_length) << '\n';
}

}  // namespace pushmpc
