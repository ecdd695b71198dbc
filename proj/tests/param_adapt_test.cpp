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

#include "pushmpc/param_adapt.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "pushmpc/world.hpp"

namespace pushmpc {
namespace {

constexpr std::array<bool, 4> kAll{true, true, true, true};
constexpr std::array<bool, 4> kSlidingOnly{true, false, false, false};

TEST(ParamPriorTest, StdIsTheSquaredQuarterRange) {
  Rng rng(1);
  const PhysParams nominal;  // (1.0, 0.005, 1e-4, 1.0)

  // Half-width 0.2 around 1.0: range 0.4, squared over 16 gives 0.01.
  const ParamDist narrow = init_prior(nominal, 0.2, kAll, rng);
  EXPECT_NEAR(narrow.stds[0], 0.01, 1e-15);
  EXPECT_GE(narrow.means[0], 0.8);
  EXPECT_LE(narrow.means[0], 1.2);

  // Half-width 1.0 around 0.005: the lower bound clamps to the parameter
  // floor, leaving range 0.01 - 1e-7.
  const ParamDist wide = init_prior(nominal, 1.0, kAll, rng);
  const double range = 0.01 - 1e-7;
  EXPECT_NEAR(wide.stds[1], range * range / 16.0, 1e-18);
  EXPECT_NEAR(wide.stds[1], 6.249875000625e-6, 1e-15);
  EXPECT_GE(wide.means[1], 0.0);
  EXPECT_LE(wide.means[1], 0.01);
}

TEST(ParamPriorTest, ZeroWidthPinsTheNominal) {
  Rng rng(2);
  const ParamDist prior = init_prior(PhysParams{}, 0.0, kAll, rng);
  EXPECT_EQ(prior.means[0], 1.0);
  EXPECT_EQ(prior.means[1], 0.005);
  EXPECT_EQ(prior.means[2], 1e-4);
  EXPECT_EQ(prior.means[3], 1.0);
  for (int k = 0; k < 4; ++k) EXPECT_EQ(prior.stds[k], 0.0);
}

TEST(ParamPriorTest, MaskedParametersGetNominalAndZeroStd) {
  Rng rng(3);
  const ParamDist prior = init_prior(PhysParams{}, 1.0, {true, true, true, false}, rng);
  EXPECT_EQ(prior.means[3], 1.0);
  EXPECT_EQ(prior.stds[3], 0.0);
  EXPECT_GT(prior.stds[0], 0.0);
}

TEST(ParamPriorTest, MeansSpreadUniformlyOverTheRange) {
  Rng rng(4);
  double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
  const int draws = 2000;
  for (int d = 0; d < draws; ++d) {
    const ParamDist prior = init_prior(PhysParams{}, 1.0, kSlidingOnly, rng);
    lo = std::min(lo, prior.means[0]);
    hi = std::max(hi, prior.means[0]);
    sum += prior.means[0];
    ASSERT_GE(prior.means[0], 0.0);
    ASSERT_LE(prior.means[0], 2.0);
  }
  EXPECT_LT(lo, 0.1);
  EXPECT_GT(hi, 1.9);
  EXPECT_NEAR(sum / draws, 1.0, 0.05);
  EXPECT_THROW(init_prior(PhysParams{}, -0.1, kAll, rng), std::invalid_argument);
}

TEST(ParamCemTest, OneParamQuadraticMeanConvergesWithinTenIterations) {
  AdaptConfig config;
  config.population = 32;
  config.iterations = 10;
  config.optimize_mask = kSlidingOnly;

  // Minimizer one prior-std away from the initial mean.
  ParamDist init;
  init.means = Vec4(0.95, 0.005, 1e-4, 1.0);
  init.stds = Vec4(0.25, 0.0, 0.0, 0.0);
  const auto cost = [](const PhysParams& p) { return (p.sliding - 0.7) * (p.sliding - 0.7); };

  const OptimizeResult result = optimize_params(init, PhysParams{}, config, cost, 5, 1);
  EXPECT_FALSE(result.degenerate);
  EXPECT_NEAR(result.dist.means[0], 0.7, 1e-3);
  EXPECT_NEAR(result.best.sliding, 0.7, 1e-3);
  for (std::size_t l = 1; l < result.iteration_best.size(); ++l) {
    EXPECT_LE(result.iteration_best[l], result.iteration_best[l - 1]);
  }
}

TEST(ParamCemTest, MaskedParametersStayAtNominal) {
  AdaptConfig config;
  config.population = 16;
  config.iterations = 3;
  config.optimize_mask = kSlidingOnly;
  const PhysParams nominal(0.9, 0.004, 2e-4, 1.5);

  ParamDist init;
  init.means = nominal.as_vector();
  init.stds = Vec4(0.3, 0.0, 0.0, 0.0);
  // Cost pulls every coordinate away from nominal; only sliding may follow.
  const auto cost = [](const PhysParams& p) {
    return (p.as_vector() - Vec4(0.2, 0.1, 0.1, 0.1)).squaredNorm();
  };
  const OptimizeResult result = optimize_params(init, nominal, config, cost, 7, 1);
  EXPECT_EQ(result.best.torsional, nominal.torsional);
  EXPECT_EQ(result.best.rolling, nominal.rolling);
  EXPECT_EQ(result.best.pusher_mass, nominal.pusher_mass);
  EXPECT_EQ(result.dist.means[1], init.means[1]);
  EXPECT_EQ(result.dist.stds[3], 0.0);
  EXPECT_LT(result.best.sliding, init.means[0] - 0.2);  // moved toward 0.2
  EXPECT_GE(result.best.sliding, PhysParams::kFloor);
}

TEST(ParamCemTest, AllDivergentCandidatesReturnTheInputUnchanged) {
  AdaptConfig config;
  config.population = 8;
  config.iterations = 3;

  ParamDist init;
  init.means = Vec4(1.0, 0.005, 1e-4, 1.0);
  init.stds = Vec4(0.2, 1e-3, 1e-5, 0.0);
  const auto cost = [](const PhysParams&) { return std::numeric_limits<double>::infinity(); };

  const OptimizeResult result = optimize_params(init, PhysParams{}, config, cost, 3, 1);
  EXPECT_TRUE(result.degenerate);
  EXPECT_TRUE(std::isinf(result.best_cost));
  EXPECT_EQ(result.dist.means, init.means);
  EXPECT_EQ(result.dist.stds, init.stds);
  EXPECT_EQ(result.best.sliding, 1.0);

  // Thrown evaluations count as infinite as well.
  const auto throwing = [](const PhysParams&) -> double { throw std::runtime_error("boom"); };
  EXPECT_TRUE(optimize_params(init, PhysParams{}, config, throwing, 3, 1).degenerate);
}

TEST(ParamCemTest, ReinjectionKeepsPerIterationPoolBestMonotone) {
  AdaptConfig config;
  config.population = 12;
  config.iterations = 6;
  config.elite_fraction = 0.25;
  config.optimize_mask = {true, true, false, false};

  ParamDist init;
  init.means = Vec4(1.5, 0.002, 1e-4, 1.0);
  init.stds = Vec4(0.4, 0.002, 0.0, 0.0);

  std::vector<double> pool_best;
  int calls_in_pool = 0;
  const int pool_sizes[] = {12, 15, 15, 15, 15, 15};
  int pool_index = 0;
  const auto cost = [&](const PhysParams& p) {
    const double c = (p.sliding - 0.7) * (p.sliding - 0.7) +
                     (p.torsional - 0.003) * (p.torsional - 0.003);
    if (calls_in_pool == 0) pool_best.push_back(c);
    pool_best.back() = std::min(pool_best.back(), c);
    if (++calls_in_pool == pool_sizes[pool_index]) {
      calls_in_pool = 0;
      ++pool_index;
    }
    return c;
  };
  optimize_params(init, PhysParams{}, config, cost, 13, 1);
  ASSERT_EQ(pool_best.size(), 6u);
  for (std::size_t l = 1; l < pool_best.size(); ++l) {
    EXPECT_LE(pool_best[l], pool_best[l - 1]) << "iteration " << l;
  }
}

TEST(ParamCemTest, ResultIsInvariantToThreadCount) {
  AdaptConfig config;
  config.population = 16;
  config.iterations = 4;
  ParamDist init;
  init.means = Vec4(1.2, 0.004, 2e-4, 1.0);
  init.stds = Vec4(0.3, 0.002, 1e-4, 0.0);
  const auto cost = [](const PhysParams& p) {
    return (p.sliding - 0.8) * (p.sliding - 0.8) + 100.0 * (p.torsional - 0.006) * (p.torsional - 0.006);
  };
  const OptimizeResult r1 = optimize_params(init, PhysParams{}, config, cost, 21, 1);
  const OptimizeResult r3 = optimize_params(init, PhysParams{}, config, cost, 21, 3);
  EXPECT_EQ(r1.best.as_vector(), r3.best.as_vector());
  EXPECT_EQ(r1.best_cost, r3.best_cost);
  EXPECT_EQ(r1.dist.means, r3.dist.means);
  EXPECT_EQ(r1.dist.stds, r3.dist.stds);
}

TEST(ParamCemTest, RejectsInvalidConfigs) {
  AdaptConfig config;
  const auto cost = [](const PhysParams&) { return 0.0; };
  ParamDist init;

  config.population = 0;
  EXPECT_THROW(optimize_params(init, PhysParams{}, config, cost, 1, 1), std::invalid_argument);
  config = AdaptConfig{};
  config.elite_fraction = 0.01;  // 0.32 elites of 32: empty elite set
  EXPECT_THROW(optimize_params(init, PhysParams{}, config, cost, 1, 1), std::invalid_argument);
  config = AdaptConfig{};
  config.kappa_pusher = -0.1;
  EXPECT_THROW(optimize_params(init, PhysParams{}, config, cost, 1, 1), std::invalid_argument);
  config = AdaptConfig{};
  config.delta = -1.0;
  EXPECT_THROW(optimize_params(init, PhysParams{}, config, cost, 1, 1), std::invalid_argument);

  EXPECT_THROW(optimize(ReplayBuffer{}, init, PhysParams{}, AdaptConfig{}, WorldConfig{}, 1, 1),
               std::invalid_argument);
}

// End-to-end identification: one straight-push recording, prior offset by a
// full nominal width on the sliding coefficient.
TEST(ParamCemTest, SlidingFrictionIsRecoveredFromASinglePush) {
  const WorldConfig world_config;
  const PhysParams truth;
  SimState initial;
  initial.pusher.position = Vec2(-0.08, 0.0);
  initial.objects.push_back(BodyState{});

  World world(world_config, truth, initial);
  Rollout rollout;
  rollout.mode = ControlMode::kForce;
  rollout.dt = world_config.dt;
  rollout.initial_state = initial;
  for (int k = 0; k < 800; ++k) {
    const Vec2 force(2.0, 0.0);
    const SimState& s = world.step(force);
    rollout.times.push_back(s.time);
    rollout.controls.push_back(force);
    rollout.observed_pusher.push_back(s.pusher.position);
    rollout.observed_object.push_back(s.objects[0].position);
    rollout.observed_yaw.push_back(s.objects[0].yaw);
  }
  ReplayBuffer buffer;
  append(buffer, rollout);

  AdaptConfig config;
  config.optimize_mask = kSlidingOnly;

  int improved = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Rng rng(derive_seed(seed, 0));
    const ParamDist prior = init_prior(truth, config.delta, config.optimize_mask, rng);
    const double initial_error = std::abs(prior.means[0] - truth.sliding);
    const OptimizeResult result =
        optimize(buffer, prior, truth, config, world_config, seed, 1);
    ASSERT_FALSE(result.degenerate) << "seed " << seed;
    const double final_error = std::abs(result.best.sliding - truth.sliding);
    if (final_error < initial_error) ++improved;
  }
  EXPECT_GE(improved, 4);
}

}  // namespace
}  // namespace pushmpc
