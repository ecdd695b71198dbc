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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "pushmpc/parallel.hpp"

namespace pushmpc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec4 sample_candidate(const ParamDist& dist, const PhysParams& nominal,
                      const std::array<bool, 4>& mask, Rng& rng) {
  Vec4 v = nominal.as_vector();
  for (int k = 0; k < 4; ++k) {
    if (!mask[k]) continue;
    v[k] = std::max(PhysParams::kFloor, dist.means[k] + dist.stds[k] * rng.normal());
  }
  return v;
}

}  // namespace

void AdaptConfig::validate() const {
  if (population < 1) throw std::invalid_argument("AdaptConfig: population must be >= 1");
  if (iterations < 1) throw std::invalid_argument("AdaptConfig: iterations must be >= 1");
  if (static_cast<int>(elite_fraction * population) < 1)
    throw std::invalid_argument("AdaptConfig: elite set would be empty");
  if (!(kappa_pusher >= 0.0) || !(kappa_rotation >= 0.0))
    throw std::invalid_argument("AdaptConfig: kappa weights must be non-negative");
  if (!(delta >= 0.0)) throw std::invalid_argument("AdaptConfig: delta must be non-negative");
}

ParamDist init_prior(const PhysParams& nominal, double delta,
                     const std::array<bool, 4>& optimize_mask, Rng& rng) {
  if (!(delta >= 0.0)) throw std::invalid_argument("init_prior: delta must be non-negative");
  const Vec4 n = nominal.as_vector();
  ParamDist prior;
  for (int k = 0; k < 4; ++k) {
    if (!optimize_mask[k]) {
      prior.means[k] = n[k];
      prior.stds[k] = 0.0;
      continue;
    }
    const double lower = n[k] - delta * n[k];
    const double upper = n[k] + delta * n[k];
    prior.means[k] = delta == 0.0 ? n[k] : rng.uniform(lower, upper);
    const double range = upper - std::max(PhysParams::kFloor, lower);
    prior.stds[k] = range * range / 16.0;
  }
  return prior;
}

OptimizeResult optimize_params(const ParamDist& init, const PhysParams& nominal,
                               const AdaptConfig& config, const ParamCost& cost,
                               std::uint64_t seed, int threads) {
  config.validate();
  const int elite_count =
      std::max(1, static_cast<int>(config.elite_fraction * config.population));

  ParamDist dist = init;
  std::vector<std::pair<double, Vec4>> elites;
  OptimizeResult result;
  double best_cost = kInf;
  Vec4 best = nominal.as_vector();
  bool have_best = false;
  bool any_finite = false;

  for (int l = 0; l < config.iterations; ++l) {
    std::vector<Vec4> pool(config.population);
    for (int q = 0; q < config.population; ++q) {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(l), q));
      pool[q] = sample_candidate(dist, nominal, config.optimize_mask, rng);
    }
    if (l > 0 && config.reinject_elites) {
      for (const auto& e : elites) pool.push_back(e.second);
    }

    const int n = static_cast<int>(pool.size());
    std::vector<double> costs(n, kInf);
    parallel_for(n, threads, [&](int i) {
      try {
        costs[i] = cost(PhysParams::from_vector(pool[i]));
      } catch (...) {
        costs[i] = kInf;
      }
    });

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (costs[a] != costs[b]) return costs[a] < costs[b];
      return a < b;
    });

    elites.clear();
    for (int e = 0; e < std::min(elite_count, n); ++e) {
      elites.emplace_back(costs[order[e]], pool[order[e]]);
    }
    if (std::isfinite(elites.front().first)) any_finite = true;
    if (!have_best || elites.front().first < best_cost) {
      best_cost = elites.front().first;
      best = elites.front().second;
      have_best = true;
    }
    result.iteration_best.push_back(best_cost);

    Vec4 mean = Vec4::Zero();
    for (const auto& e : elites) mean += e.second;
    mean /= static_cast<double>(elites.size());
    Vec4 var = Vec4::Zero();
    for (const auto& e : elites) var += (e.second - mean).cwiseAbs2();
    var /= static_cast<double>(elites.size());
    for (int k = 0; k < 4; ++k) {
      if (config.optimize_mask[k]) {
        dist.means[k] = mean[k];
        dist.stds[k] = std::sqrt(var[k]);
      }
    }
  }

  if (!any_finite) {
    // Nothing to learn from: every candidate diverged. Keep the input.
    result.best = PhysParams::from_vector(init.means.cwiseMax(PhysParams::kFloor));
    result.dist = init;
    result.best_cost = kInf;
    result.degenerate = true;
    return result;
  }
  result.best = PhysParams::from_vector(best);
  result.dist = dist;
  result.best_cost = best_cost;
  return result;
}

OptimizeResult optimize(const ReplayBuffer& buffer, const ParamDist& init,
                        const PhysParams& nominal, const AdaptConfig& config,
                        const WorldConfig& world_config, std::uint64_t seed, int threads) {
  if (buffer.empty()) throw std::invalid_argument("optimize: empty replay buffer");
  const ParamCost cost = [&](const PhysParams& candidate) {
    return replay_cost(candidate, buffer, world_config, config.kappa_pusher,
                       config.kappa_rotation);
  };
  return optimize_params(init, nominal, config, cost, seed, threads);
}

}  // namespace pushmpc
