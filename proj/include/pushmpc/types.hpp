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

#ifndef PUSHMPC_TYPES_HPP_
#define PUSHMPC_TYPES_HPP_

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace pushmpc {

using Vec2 = Eigen::Vector2d;
using Vec4 = Eigen::Vector4d;

// Wraps an angle to (-pi, pi].
inline double wrap_angle(double a) {
  a = std::fmod(a + M_PI, 2.0 * M_PI);
  if (a <= 0.0) a += 2.0 * M_PI;
  return a - M_PI;
}

// Friction and mass parameters of the planar world. All values are clamped
// from below so that sampled candidates stay physical.
struct PhysParams {
  static constexpr double kFloor = 1e-7;

  double sliding = 1.0;      // translational sliding friction coefficient
  double torsional = 0.005;  // torsional friction coefficient
  double rolling = 0.0001;   // rolling resistance coefficient
  double pusher_mass = 1.0;  // effective pusher mass [kg]

  PhysParams() = default;
  PhysParams(double sliding_, double torsional_, double rolling_, double mass_)
      : sliding(std::max(kFloor, sliding_)),
        torsional(std::max(kFloor, torsional_)),
        rolling(std::max(kFloor, rolling_)),
        pusher_mass(std::max(kFloor, mass_)) {}

  Vec4 as_vector() const { return Vec4(sliding, torsional, rolling, pusher_mass); }
  static PhysParams from_vector(const Vec4& v) { return PhysParams(v[0], v[1], v[2], v[3]); }
};

// Planar pose and twist of one rigid body.
struct BodyState {
  Vec2 position = Vec2::Zero();
  double yaw = 0.0;
  Vec2 lin_velocity = Vec2::Zero();
  double ang_velocity = 0.0;
};

// Full simulation state: pusher, objects, and time.
struct SimState {
  BodyState pusher;
  std::vector<BodyState> objects;
  double time = 0.0;
};

inline bool body_finite(const BodyState& b) {
  return b.position.allFinite() && std::isfinite(b.yaw) && b.lin_velocity.allFinite() &&
         std::isfinite(b.ang_velocity);
}

inline bool state_finite(const SimState& s) {
  if (!body_finite(s.pusher) || !std::isfinite(s.time)) return false;
  for (const BodyState& b : s.objects) {
    if (!body_finite(b)) return false;
  }
  return true;
}

// Static world description: geometry, contact model, and integration step.
struct WorldConfig {
  double dt = 1e-3;                       // integration step [s]
  double gravity = 9.81;                  // gravity magnitude [m/s^2]
  double pusher_radius = 0.02;            // disc pusher radius [m]
  Vec2 box_half_extents = Vec2(0.05, 0.05);  // slider half extents [m]
  double object_mass = 0.5;               // slider mass [kg]
  double contact_stiffness = 1e4;         // penalty spring [N/m]
  double contact_damping = 50.0;          // penalty damper [N s/m]
  double slip_regularization_velocity = 1e-3;  // tanh friction scale [m/s]

  void validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("WorldConfig: dt must be positive");
    if (!(gravity >= 0.0)) throw std::invalid_argument("WorldConfig: gravity must be non-negative");
    if (!(pusher_radius > 0.0)) throw std::invalid_argument("WorldConfig: pusher_radius must be positive");
    if (!(box_half_extents.x() > 0.0) || !(box_half_extents.y() > 0.0))
      throw std::invalid_argument("WorldConfig: box_half_extents must be positive");
    if (!(object_mass > 0.0)) throw std::invalid_argument("WorldConfig: object_mass must be positive");
    if (!(contact_stiffness > 0.0)) throw std::invalid_argument("WorldConfig: contact_stiffness must be positive");
    if (!(contact_damping >= 0.0)) throw std::invalid_argument("WorldConfig: contact_damping must be non-negative");
    if (!(slip_regularization_velocity > 0.0))
      throw std::invalid_argument("WorldConfig: slip_regularization_velocity must be positive");
  }
};

// PD(+I) gains for the pusher position loop.
struct PidGains {
  double kp = 400.0;
  double kd = 40.0;
  double ki = 0.0;
};

}  // namespace pushmpc

#endif  // PUSHMPC_TYPES_HPP_
