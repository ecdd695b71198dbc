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

#include "pushmpc/min_snap.hpp"

#include <cmath>

namespace pushmpc {
namespace {

constexpr int kDegree = 7;
constexpr int kCoeffs = kDegree + 1;

// Falling factorial i * (i-1) * ... * (i-k+1); the coefficient of s^(i-k)
// in d^k/ds^k s^i.
double falling(int i, int k) {
  double f = 1.0;
  for (int m = 0; m < k; ++m) f *= static_cast<double>(i - m);
  return f;
}

// Integral over [0,1] of d^4 s^i * d^4 s^j; the snap Gram matrix of one
// segment in normalized time.
Eigen::Matrix<double, kCoeffs, kCoeffs> snap_gram() {
  Eigen::Matrix<double, kCoeffs, kCoeffs> q = Eigen::Matrix<double, kCoeffs, kCoeffs>::Zero();
  for (int i = 4; i < kCoeffs; ++i) {
    for (int j = 4; j < kCoeffs; ++j) {
      q(i, j) = falling(i, 4) * falling(j, 4) / static_cast<double>(i + j - 7);
    }
  }
  return q;
}

// Constraint rows in normalized time; the right-hand side of a derivative
// of order k is the physical value scaled by T^k.
Eigen::MatrixXd constraint_matrix(int segments) {
  const int n = kCoeffs * segments;
  const int rows = 6 * segments;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, n);
  int row = 0;
  // Start derivatives of order 0..3 at s = 0 of the first segment.
  for (int k = 0; k < 4; ++k) {
    a(row++, k) = falling(k, k);
  }
  // Keypoint position and velocity at the end of each segment.
  for (int j = 0; j < segments; ++j) {
    for (int i = 0; i < kCoeffs; ++i) a(row, kCoeffs * j + i) = 1.0;
    ++row;
    for (int i = 1; i < kCoeffs; ++i) a(row, kCoeffs * j + i) = static_cast<double>(i);
    ++row;
  }
  // Continuity of order 0..3 across interior joints.
  for (int j = 1; j < segments; ++j) {
    for (int k = 0; k < 4; ++k) {
      for (int i = k; i < kCoeffs; ++i) a(row, kCoeffs * (j - 1) + i) = falling(i, k);
      a(row, kCoeffs * j + k) -= falling(k, k);
      ++row;
    }
  }
  return a;
}

}  // namespace

Trajectory::Trajectory(double segment_duration, Eigen::MatrixXd coeffs_x,
                       Eigen::MatrixXd coeffs_y)
    : segment_duration_(segment_duration) {
  coeffs_[0] = std::move(coeffs_x);
  coeffs_[1] = std::move(coeffs_y);
}

Trajectory::Sample Trajectory::sample(double t) const {
  Sample out;
  const double total = duration();
  out.clamped = t < 0.0 || t > total;
  const double tc = std::clamp(t, 0.0, total);
  int seg = static_cast<int>(tc / segment_duration_);
  seg = std::min(seg, segments() - 1);
  const double s = tc / segment_duration_ - seg;
  const double inv_t = 1.0 / segment_duration_;

  for (int axis = 0; axis < 2; ++axis) {
    const auto c = coeffs_[axis].row(seg);
    double value[4] = {0.0, 0.0, 0.0, 0.0};
    for (int k = 0; k < 4; ++k) {
      // Horner evaluation of the k-th derivative in normalized time.
      double acc = 0.0;
      for (int i = kDegree; i >= k; --i) acc = acc * s + c[i] * falling(i, k);
      value[k] = acc;
    }
    out.position[axis] = value[0];
    out.velocity[axis] = value[1] * inv_t;
    out.acceleration[axis] = value[2] * inv_t * inv_t;
    out.jerk[axis] = value[3] * inv_t * inv_t * inv_t;
  }
  return out;
}

double snap_cost(const Trajectory& trajectory) {
  static const Eigen::Matrix<double, kCoeffs, kCoeffs> q = snap_gram();
  const double t = trajectory.segment_duration();
  const double scale = 1.0 / std::pow(t, 7);
  double cost = 0.0;
  for (int axis = 0; axis < 2; ++axis) {
    const Eigen::MatrixXd& c = trajectory.coefficients(axis);
    for (int j = 0; j < c.rows(); ++j) {
      cost += scale * c.row(j).dot(c.row(j) * q);
    }
  }
  return cost;
}

MinSnapSolver::MinSnapSolver(int segments, double segment_duration)
    : segments_(segments), segment_duration_(segment_duration) {
  if (segments < 1) throw PlanningError("MinSnapSolver: need at least one segment");
  if (!(segment_duration > 0.0)) throw PlanningError("MinSnapSolver: non-positive duration");

  const int n = kCoeffs * segments;
  const int m = 6 * segments;
  const Eigen::MatrixXd a = constraint_matrix(segments);
  const Eigen::Matrix<double, kCoeffs, kCoeffs> q = snap_gram();

  // KKT system [2Q A^T; A 0]. The snap Gram matrix is scale-invariant in T
  // up to a constant factor, which leaves the minimizer unchanged.
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(n + m, n + m);
  for (int j = 0; j < segments; ++j) {
    kkt.block<kCoeffs, kCoeffs>(kCoeffs * j, kCoeffs * j) = 2.0 * q;
  }
  kkt.block(0, n, n, m) = a.transpose();
  kkt.block(n, 0, m, n) = a;
  kkt_ = Eigen::FullPivLU<Eigen::MatrixXd>(kkt);
  if (!kkt_.isInvertible()) throw PlanningError("MinSnapSolver: singular constraint system");
}

Trajectory MinSnapSolver::solve(const BoundaryState& start,
                                const KeypointSequence& keypoints) const {
  const int m = segments_;
  if (static_cast<int>(keypoints.keypoints.size()) != m)
    throw PlanningError("MinSnapSolver: keypoint count does not match solver");
  if (keypoints.segment_duration != segment_duration_)
    throw PlanningError("MinSnapSolver: segment duration does not match solver");
  if (!start.position.allFinite() || !start.velocity.allFinite() ||
      !start.acceleration.allFinite() || !start.jerk.allFinite())
    throw PlanningError("MinSnapSolver: non-finite boundary state");

  const double t1 = segment_duration_;
  const double t2 = t1 * t1;
  const double t3 = t2 * t1;
  const int n = kCoeffs * m;

  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n + 6 * m, 2);
  for (int axis = 0; axis < 2; ++axis) {
    int row = n;
    rhs(row++, axis) = start.position[axis];
    rhs(row++, axis) = start.velocity[axis] * t1;
    rhs(row++, axis) = start.acceleration[axis] * t2;
    rhs(row++, axis) = start.jerk[axis] * t3;
    for (int j = 0; j < m; ++j) {
      const Keypoint& kp = keypoints.keypoints[j];
      if (!kp.position.allFinite() || !kp.velocity.allFinite())
        throw PlanningError("MinSnapSolver: non-finite keypoint");
      rhs(row++, axis) = kp.position[axis];
      rhs(row++, axis) = kp.velocity[axis] * t1;
    }
    // Continuity rows stay zero.
  }

  const Eigen::MatrixXd sol = kkt_.solve(rhs);
  Eigen::MatrixXd cx(m, kCoeffs), cy(m, kCoeffs);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < kCoeffs; ++i) {
      cx(j, i) = sol(kCoeffs * j + i, 0);
      cy(j, i) = sol(kCoeffs * j + i, 1);
    }
  }
  return Trajectory(segment_duration_, std::move(cx), std::move(cy));
}

Trajectory plan_min_snap(const BoundaryState& start, const KeypointSequence& keypoints) {
  if (keypoints.keypoints.empty()) throw PlanningError("plan_min_snap: empty keypoint sequence");
  MinSnapSolver solver(static_cast<int>(keypoints.keypoints.size()),
                       keypoints.segment_duration);
  return solver.solve(start, keypoints);
}

}  // namespace pushmpc
