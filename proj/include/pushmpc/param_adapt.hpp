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

#ifndef PUSHMPC_PARAM_ADAPT_HPP_
#define PUSHMPC_PARAM_ADAPT_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "pushmpc/replay.hpp"
#include "pushmpc/rng.hpp"
#include "pushmpc/types.hpp"

namespace pushmpc {

// Gaussian over the parameter vector (sliding, torsional, rolling, mass).
struct ParamDist {
  Vec4 means = Vec4::Zero();
  Vec4 stds = Vec4::Zero();
};

struct AdaptConfig {
  int population = 32;          // Q candidates per iteration
  int iterations = 2;           // C refinement iterations
  double elite_fraction = 0.2;  // p
  double kappa_pusher = 0.1;    // weight of the pusher position replay error
  double kappa_rotation = 0.02; // weight of the object rotation replay error
  double delta = 1.0;           // prior half-width as a fraction of nominal
  std::array<bool, 4> optimize_mask{true, true, true, false};  // mass fixed
  bool reinject_elites = true;
  bool warm_start = true;       // keep the distribution across episodes

  void validate() const;
};

// Prior over parameters: per optimized parameter the mean is drawn uniformly
// from [nominal - delta*nominal, nominal + delta*nominal] and the std is
// (upper - max(1e-7, lower))^2 / 16. Masked-out parameters get the nominal
// value with zero std.
ParamDist init_prior(const PhysParams& nominal, double delta,
                     const std::array<bool, 4>& optimize_mask, Rng& rng);

struct OptimizeResult {
  PhysParams best;
  ParamDist dist;
  double best_cost = 0.0;
  std::vector<double> iteration_best;  // best cost after each iteration
  bool degenerate = false;             // every candidate diverged
};

using ParamCost = std::function<double(const PhysParams&)>;

// CEM over parameters against an arbitrary cost. Masked-out parameters stay
// at nominal in every candidate. Candidate q of iteration l draws from a
// generator derived from (seed, l, q), so results do not depend on thread
// count. If every candidate of every iteration scores +infinity, the input
// distribution is returned unchanged with the degenerate flag set.
OptimizeResult optimize_params(const ParamDist& init, const PhysParams& nominal,
                               const AdaptConfig& config, const ParamCost& cost,
                               std::uint64_t seed, int threads);

// CEM over parameters with the replay-buffer cost.
OptimizeResult optimize(const ReplayBuffer& buffer, const ParamDist& init,
                        const PhysParams& nominal, const AdaptConfig& config,
                        const WorldConfig& world_config, std::uint64_t seed, int threads);

}  // namespace pushmpc

#endif  // PUSHMPC_PARAM_ADAPT_HPP_
