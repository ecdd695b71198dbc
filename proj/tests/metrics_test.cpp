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
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace pushmpc {
namespace {

EpisodeResult make_episode(bool success, double terminal_time,
                           const std::vector<double>& losses) {
  EpisodeResult e;
  e.success = success;
  e.terminal_time = terminal_time;
  e.goal_losses = losses;
  for (std::size_t i = 0; i < losses.size(); ++i) {
    e.times.push_back(0.05 * static_cast<double>(i));
    e.object_trajectory.push_back(Vec2(0.01 * static_cast<double>(i), 0.0));
    e.pusher_trajectory.push_back(Vec2(-0.1 + 0.02 * static_cast<double>(i), 0.0));
    e.object_yaw.push_back(0.0);
  }
  return e;
}

TEST(MetricsTest, ScalarAggregatesMatchHandArithmetic) {
  const std::vector<EpisodeResult> episodes = {
      make_episode(true, 2.0, {4.0, 6.0}),     // loss sum 1e-4 * 10
      make_episode(false, 5.0, {20.0, 20.0}),  // loss sum 1e-4 * 40
  };
  EXPECT_DOUBLE_EQ(success_rate(episodes), 0.5);
  EXPECT_DOUBLE_EQ(mean_execution_time(episodes), 3.5);
  EXPECT_DOUBLE_EQ(avg_object_loss(episodes), 1e-4 * 25.0);

  EXPECT_DOUBLE_EQ(success_rate({}), 0.0);
  EXPECT_DOUBLE_EQ(mean_execution_time({}), 0.0);
  EXPECT_DOUBLE_EQ(avg_object_loss({}), 0.0);
}

TEST(MetricsTest, TimeoutsEnterTheMeanAtTheTimeLimit) {
  const std::vector<EpisodeResult> episodes = {
      make_episode(false, 5.0, {1.0}),
      make_episode(false, 5.0, {1.0}),
  };
  EXPECT_DOUBLE_EQ(mean_execution_time(episodes), 5.0);
}

TEST(MetricsTest, SmoothingWithZeroSigmaIsIdentity) {
  const std::vector<Vec2> points = {Vec2(0, 0), Vec2(1, 2), Vec2(-1, 3)};
  const std::vector<Vec2> out = gaussian_smooth(points, 0.0);
  ASSERT_EQ(out.size(), points.size());
  for (std::size_t i = 0; i < points.size(); ++i) EXPECT_EQ(out[i], points[i]);
}

TEST(MetricsTest, SmoothingLeavesConstantSignalsUnchanged) {
  const std::vector<Vec2> points(20, Vec2(0.3, -0.7));
  for (const Vec2& p : gaussian_smooth(points, 2.5)) {
    EXPECT_NEAR((p - Vec2(0.3, -0.7)).norm(), 0.0, 1e-12);
  }
}

TEST(MetricsTest, SmoothingIsAWeightedAverageWithKnownKernel) {
  // Three points with sigma small enough that the kernel radius is 1:
  // weights (w, 1, w) with w = exp(-0.5 / sigma^2), renormalized at edges.
  const double sigma = 0.25;
  const std::vector<Vec2> points = {Vec2(0, 0), Vec2(1, 0), Vec2(4, 0)};
  const double w = std::exp(-0.5 / (sigma * sigma));
  const std::vector<Vec2> out = gaussian_smooth(points, sigma);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_NEAR(out[0].x(), (0.0 + w * 1.0) / (1.0 + w), 1e-12);
  EXPECT_NEAR(out[1].x(), (w * 0.0 + 1.0 + w * 4.0) / (1.0 + 2.0 * w), 1e-12);
  EXPECT_NEAR(out[2].x(), (w * 1.0 + 4.0) / (1.0 + w), 1e-12);
}

TEST(MetricsTest, SmoothingShortensJaggedPaths) {
  std::vector<Vec2> zigzag;
  for (int i = 0; i < 50; ++i) {
    zigzag.push_back(Vec2(0.01 * i, (i % 2 == 0) ? 0.0 : 0.02));
  }
  const double raw = trajectory_length(zigzag, 0.0);
  const double smoothed = trajectory_length(zigzag, 2.0);
  EXPECT_LT(smoothed, raw);
  EXPECT_GT(smoothed, 0.0);
}

TEST(MetricsTest, TrajectoryLengthSumsSegmentDistances) {
  const std::vector<Vec2> path = {Vec2(0, 0), Vec2(0.3, 0.4), Vec2(0.3, 1.4)};
  EXPECT_DOUBLE_EQ(trajectory_length(path, 0.0), 0.5 + 1.0);
  EXPECT_DOUBLE_EQ(trajectory_length({Vec2(1, 1)}, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(trajectory_length({}, 0.0), 0.0);
}

TEST(MetricsTest, AggregateCombinesAllFields) {
  const std::vector<EpisodeResult> episodes = {
      make_episode(true, 1.0, {2.0, 2.0, 2.0}),
      make_episode(true, 3.0, {4.0}),
  };
  const MetricsReport report = aggregate(episodes, 0.0);
  EXPECT_EQ(report.episodes, 2);
  EXPECT_DOUBLE_EQ(report.success_rate, 1.0);
  EXPECT_DOUBLE_EQ(report.mean_execution_time, 2.0);
  EXPECT_DOUBLE_EQ(report.avg_object_loss, 1e-4 * 5.0);
  // Episode object paths step 0.01 m per sample: lengths 0.02 and 0.0.
  EXPECT_NEAR(report.object_trajectory_length, 0.01, 1e-12);
  EXPECT_NEAR(report.pusher_trajectory_length, 0.02, 1e-12);

  const MetricsReport empty = aggregate({}, 0.0);
  EXPECT_EQ(empty.episodes, 0);
  EXPECT_DOUBLE_EQ(empty.success_rate, 0.0);
}

TEST(MetricsTest, CsvHasOneRowPerEpisodePlusAggregate) {
  const std::vector<EpisodeResult> episodes = {
      make_episode(true, 1.5, {2.0, 2.0}),
      make_episode(false, 5.0, {30.0}),
  };
  const std::string path = ::testing::TempDir() + "metrics.csv";
  write_metrics_csv(episodes, 0.0, path);

  std::ifstream in(path);
  ASSERT_TRUE(in.good());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line,
            "episode,success,terminal_time,object_loss,object_trajectory_length,"
            "pusher_trajectory_length");
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 8), "0,1,1.5,");
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 4), "1,0,");
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 14), "aggregate,0.5,");
  EXPECT_FALSE(std::getline(in, line));

  EXPECT_THROW(write_metrics_csv(episodes, 0.0, "/nonexistent/dir/metrics.csv"),
               std::runtime_error);
}

}  // namespace
}  // namespace pushmpc
