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

#ifndef PUSHMPC_MIN_SNAP_HPP_
#define PUSHMPC_MIN_SNAP_HPP_

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "pushmpc/types.hpp"

namespace pushmpc {

class PlanningError : public std::runtime_error {
 public:
  explicit PlanningError(const std::string& what) : std::runtime_error(what) {}
};

// One waypoint the pusher must pass through: position and velocity pinned,
// acceleration and jerk left free.
struct Keypoint {
  Vec2 position = Vec2::Zero();
  Vec2 velocity = Vec2::Zero();
};

// M keypoints spaced segment_duration apart.
struct KeypointSequence {
  std::vector<Keypoint> keypoints;
  double segment_duration = 0.3;  // [s]
};

// Pusher state at the start of a planned trajectory, through jerk, so that
// successive trajectories hand over smoothly.
struct BoundaryState {
  Vec2 position = Vec2::Zero();
  Vec2 velocity = Vec2::Zero();
  Vec2 acceleration = Vec2::Zero();
  Vec2 jerk = Vec2::Zero();
};

// Piecewise degree-7 polynomial per axis, stored in normalized segment time
// s = (t - t_j) / T with one coefficient row per segment.
class Trajectory {
 public:
  struct Sample {
    Vec2 position = Vec2::Zero();
    Vec2 velocity = Vec2::Zero();
    Vec2 acceleration = Vec2::Zero();
    Vec2 jerk = Vec2::Zero();
    bool clamped = false;  // true when t was outside [0, duration]
  };

  Trajectory() = default;
  Trajectory(double segment_duration, Eigen::MatrixXd coeffs_x, Eigen::MatrixXd coeffs_y);

  // Evaluates position through jerk at time t since trajectory start;
  // t outside [0, duration] is clamped to the nearer endpoint.
  Sample sample(double t) const;

  int segments() const { return static_cast<int>(coeffs_[0].rows()); }
  double segment_duration() const { return segment_duration_; }
  double duration() const { return segment_duration_ * segments(); }
  // Per-segment polynomial coefficients of one axis (segments x 8).
  const Eigen::MatrixXd& coefficients(int axis) const { return coeffs_[axis]; }

 private:
  double segment_duration_ = 0.0;
  Eigen::MatrixXd coeffs_[2];
};

// Integral of squared snap over the whole trajectory, both axes.
double snap_cost(const Trajectory& trajectory);

// Equality-constrained minimum-snap solver. The KKT system depends only on
// the segment count, so one factorization is shared by every candidate a
// planner evaluates.
class MinSnapSolver {
 public:
  MinSnapSolver(int segments, double segment_duration);

  Trajectory solve(const BoundaryState& start, const KeypointSequence& keypoints) const;

  int segments() const { return segments_; }
  double segment_duration() const { return segment_duration_; }

 private:
  int segments_;
  double segment_duration_;
  Eigen::FullPivLU<Eigen::MatrixXd> kkt_;
};

// Convenience wrapper: builds a solver for the sequence and solves once.
Trajectory plan_min_snap(const BoundaryState& start, const KeypointSequence& keypoints);

}  // namespace pushmpc

#endif  // PUSHMPC_MIN_SNAP_HPP_
