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

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pushmpc/rng.hpp"
#include "pushmpc/types.hpp"

namespace pushmpc {
namespace {

using test_oracles::Instance;
using test_oracles::physical_coeffs;
using test_oracles::random_instance;

TEST(MinSnapTest, MatchesDenseNullspaceMinimizer) {
  Rng rng(derive_seed(0x5eed, 41));
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = random_instance(&rng);
    const int m = static_cast<int>(inst.seq.keypoints.size());
    const Trajectory traj = plan_min_snap(inst.start, inst.seq);

    Eigen::MatrixXd a, b;
    test_oracles::constraints(inst.start, inst.seq, &a, &b);
    const Eigen::MatrixXd gram = test_oracles::snap_gram(m, inst.seq.segment_duration);

    // Constraint residuals of the library solution, in physical units.
    double oracle_cost = 0.0;
    for (int axis = 0; axis < 2; ++axis) {
      const Eigen::VectorXd c_lib = physical_coeffs(traj, axis);
      const double residual = (a * c_lib - b.col(axis)).cwiseAbs().maxCoeff();
      EXPECT_LE(residual, 1e-9) << "trial " << trial << " axis " << axis;

      const Eigen::VectorXd c_ref = test_oracles::minimize(a, b.col(axis), gram);
      oracle_cost += c_ref.dot(gram * c_ref);

      // Unique minimizer: the sampled curves must coincide, not just match
      // in cost.
      for (int s = 0; s < 10; ++s) {
        const double t = traj.duration() * (s + 0.5) / 10.0;
        const double ref = test_oracles::eval(c_ref, inst.seq.segment_duration, t, 0);
        const double got = traj.sample(t).position[axis];
        EXPECT_NEAR(got, ref, 1e-7 * std::max(1.0, std::abs(ref)))
            << "trial " << trial << " axis " << axis << " t " << t;
      }
    }
    const double lib_cost = snap_cost(traj);
    EXPECT_NEAR(lib_cost, oracle_cost, 1e-6 * std::max(1.0, oracle_cost)) << "trial " << trial;
  }
}

TEST(MinSnapTest, SampledDerivativesMatchFiniteDifferences) {
  Rng rng(derive_seed(0x5eed, 42));
  const double h = 1e-5;
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = random_instance(&rng);
    const Trajectory traj = plan_min_snap(inst.start, inst.seq);
    const int m = traj.segments();
    for (int j = 0; j < m; ++j) {
      for (double u : {0.15, 0.5, 0.85}) {
        const double t = (j + u) * inst.seq.segment_duration;
        const auto lo = traj.sample(t - h);
        const auto mid = traj.sample(t);
        const auto hi = traj.sample(t + h);
        for (int axis = 0; axis < 2; ++axis) {
          const double fd_vel = (hi.position[axis] - lo.position[axis]) / (2 * h);
          const double fd_acc = (hi.velocity[axis] - lo.velocity[axis]) / (2 * h);
          const double fd_jerk = (hi.acceleration[axis] - lo.acceleration[axis]) / (2 * h);
          const auto tol = [](double v) { return 1e-6 * std::max(1.0, std::abs(v)); };
          EXPECT_NEAR(mid.velocity[axis], fd_vel, tol(fd_vel)) << "trial " << trial;
          EXPECT_NEAR(mid.acceleration[axis], fd_acc, tol(fd_acc)) << "trial " << trial;
          EXPECT_NEAR(mid.jerk[axis], fd_jerk, tol(fd_jerk)) << "trial " << trial;
        }
      }
    }
  }
}

TEST(MinSnapTest, RestToRestAtSamePointIsIdenticallyStill) {
  BoundaryState start;
  start.position = Vec2(0.3, -0.2);
  KeypointSequence seq;
  seq.segment_duration = 0.4;
  seq.keypoints.assign(3, Keypoint{start.position, Vec2::Zero()});
  const Trajectory traj = plan_min_snap(start, seq);
  for (double t = 0.0; t <= traj.duration(); t += 0.05) {
    const auto s = traj.sample(t);
    EXPECT_NEAR((s.position - start.position).norm(), 0.0, 1e-10);
    EXPECT_NEAR(s.velocity.norm(), 0.0, 1e-9);
    EXPECT_NEAR(s.acceleration.norm(), 0.0, 1e-8);
  }
  EXPECT_NEAR(snap_cost(traj), 0.0, 1e-12);
}

TEST(MinSnapTest, ConstantVelocityLineHasZeroSnap) {
  const Vec2 vel(0.25, -0.1);
  BoundaryState start;
  start.velocity = vel;
  KeypointSequence seq;
  seq.segment_duration = 0.5;
  for (int j = 1; j <= 2; ++j) {
    seq.keypoints.push_back(Keypoint{vel * (j * seq.segment_duration), vel});
  }
  const Trajectory traj = plan_min_snap(start, seq);
  EXPECT_NEAR(snap_cost(traj), 0.0, 1e-10);
  const auto s = traj.sample(0.75 * traj.duration());
  EXPECT_NEAR((s.position - vel * 0.75 * traj.duration()).norm(), 0.0, 1e-10);
  EXPECT_NEAR((s.velocity - vel).norm(), 0.0, 1e-9);
}

TEST(MinSnapTest, SamplingClampsOutsideTheTimeRange) {
  BoundaryState start;
  KeypointSequence seq;
  seq.keypoints.push_back(Keypoint{Vec2(0.1, 0.0), Vec2::Zero()});
  const Trajectory traj = plan_min_snap(start, seq);

  const auto before = traj.sample(-1.0);
  EXPECT_TRUE(before.clamped);
  EXPECT_EQ(before.position, traj.sample(0.0).position);
  EXPECT_FALSE(traj.sample(0.0).clamped);

  const auto after = traj.sample(traj.duration() + 1.0);
  EXPECT_TRUE(after.clamped);
  EXPECT_NEAR((after.position - Vec2(0.1, 0.0)).norm(), 0.0, 1e-10);
  EXPECT_FALSE(traj.sample(traj.duration()).clamped);
}

TEST(MinSnapTest, SolverIsReusableAcrossCandidates) {
  // The factorization is shared; back-to-back solves must match one-shot
  // planning exactly.
  MinSnapSolver solver(2, 0.3);
  Rng rng(derive_seed(0x5eed, 43));
  for (int trial = 0; trial < 5; ++trial) {
    Instance inst = random_instance(&rng);
    inst.seq.segment_duration = 0.3;
    inst.seq.keypoints.resize(2, Keypoint{});
    const Trajectory a = solver.solve(inst.start, inst.seq);
    const Trajectory b = plan_min_snap(inst.start, inst.seq);
    for (int axis = 0; axis < 2; ++axis) {
      EXPECT_EQ(a.coefficients(axis), b.coefficients(axis)) << "trial " << trial;
    }
  }
}

TEST(MinSnapTest, RejectsInvalidInputs) {
  EXPECT_THROW(MinSnapSolver(0, 0.3), PlanningError);
  EXPECT_THROW(MinSnapSolver(2, 0.0), PlanningError);
  EXPECT_THROW(MinSnapSolver(2, -1.0), PlanningError);

  MinSnapSolver solver(2, 0.3);
  BoundaryState start;
  KeypointSequence seq;
  seq.segment_duration = 0.3;
  seq.keypoints.assign(3, Keypoint{});
  EXPECT_THROW(solver.solve(start, seq), PlanningError);  // count mismatch

  seq.keypoints.assign(2, Keypoint{});
  seq.segment_duration = 0.4;
  EXPECT_THROW(solver.solve(start, seq), PlanningError);  // duration mismatch

  seq.segment_duration = 0.3;
  seq.keypoints[1].position = Vec2(std::nan(""), 0.0);
  EXPECT_THROW(solver.solve(start, seq), PlanningError);

  seq.keypoints[1].position = Vec2::Zero();
  start.acceleration = Vec2(std::numeric_limits<double>::infinity(), 0.0);
  EXPECT_THROW(solver.solve(start, seq), PlanningError);

  KeypointSequence empty;
  EXPECT_THROW(plan_min_snap(BoundaryState{}, empty), PlanningError);
}

}  // namespace
}  // namespace pushmpc
