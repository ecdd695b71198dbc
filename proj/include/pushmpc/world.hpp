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

#ifndef PUSHMPC_WORLD_HPP_
#define PUSHMPC_WORLD_HPP_

#include <stdexcept>

#include "pushmpc/types.hpp"

namespace pushmpc {

// Thrown when integration produces a non-finite state. Carries the last
// valid state so callers can diagnose the rollout that diverged.
class SimDivergedError : public std::runtime_error {
 public:
  explicit SimDivergedError(SimState last_valid)
      : std::runtime_error("simulation diverged to a non-finite state"),
        last_valid_state(std::move(last_valid)) {}

  SimState last_valid_state;
};

// Planar pusher-slider world integrated with semi-implicit Euler.
//
// The pusher is a disc driven by an external force (or a commanded velocity
// when replaying recorded rollouts); the slider is a box on a flat support
// surface. Contact is a penalty spring-damper with tanh-regularized Coulomb
// friction at the interface; the support surface applies sliding, rolling,
// and torsional friction to the objects. Only objects[0] interacts with the
// pusher; additional objects feel support friction only.
class World {
 public:
  World(const WorldConfig& config, const PhysParams& params, const SimState& initial);

  // Advances one step with an external force on the pusher.
  const SimState& step(const Vec2& pusher_force);

  // Advances one step with the pusher velocity commanded directly. Object
  // dynamics are identical to step(); used for velocity-mode replay.
  const SimState& step_velocity(const Vec2& pusher_velocity);

  const SimState& state() const { return state_; }
  SimState snapshot() const { return state_; }

  // Replaces the current state (yaw re-wrapped; rejects non-finite input).
  void sync(const SimState& target);

  const WorldConfig& config() const { return config_; }
  const PhysParams& params() const { return params_; }

  double object_mass() const { return object_mass_; }
  double object_inertia() const { return object_inertia_; }
  double effective_radius() const { return effective_radius_; }

 private:
  struct Contact {
    bool active = false;
    Vec2 force_on_pusher = Vec2::Zero();
    Vec2 force_on_object = Vec2::Zero();
    double torque_on_object = 0.0;
  };

  Contact compute_contact() const;
  const SimState& advance(const Vec2& force, const Vec2* velocity_override);

  WorldConfig config_;
  PhysParams params_;
  SimState state_;
  SimState scratch_;
  double object_mass_ = 0.0;
  double object_inertia_ = 0.0;
  double effective_radius_ = 0.0;
};

}  // namespace pushmpc

#endif  // PUSHMPC_WORLD_HPP_
