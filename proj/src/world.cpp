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

#include "pushmpc/world.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Geometry>

namespace pushmpc {
namespace {

inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// Below this the friction impulse underflows and can no longer decay the
// velocity; flushing to exact rest keeps dissipation terminating and the
// integrator out of denormal arithmetic. Far below any physical scale.
constexpr double kSpeedFlush = 1e-300;

}  // namespace

World::World(const WorldConfig& config, const PhysParams& params, const SimState& initial)
    : config_(config), params_(params) {
  config_.validate();
  if (initial.objects.empty()) throw std::invalid_argument("World: at least one object required");
  sync(initial);
  scratch_ = state_;
  object_mass_ = config_.object_mass;
  // Uniform-density box: I = m/12 * (w^2 + h^2) with full extents w = 2*hx.
  const Vec2& h = config_.box_half_extents;
  object_inertia_ = object_mass_ / 3.0 * (h.x() * h.x() + h.y() * h.y());
  effective_radius_ = 0.5 * (h.x() + h.y());
}

void World::sync(const SimState& target) {
  if (target.objects.empty()) throw std::invalid_argument("World: at least one object required");
  if (!state_finite(target)) throw std::invalid_argument("World: non-finite state");
  state_ = target;
  state_.pusher.yaw = wrap_angle(state_.pusher.yaw);
  for (BodyState& b : state_.objects) b.yaw = wrap_angle(b.yaw);
}

const SimState& World::step(const Vec2& pusher_force) {
  if (!pusher_force.allFinite()) throw std::invalid_argument("World: non-finite pusher force");
  return advance(pusher_force, nullptr);
}

const SimState& World::step_velocity(const Vec2& pusher_velocity) {
  if (!pusher_velocity.allFinite())
    throw std::invalid_argument("World: non-finite pusher velocity");
  return advance(Vec2::Zero(), &pusher_velocity);
}

World::Contact World::compute_contact() const {
  Contact c;
  const BodyState& p = state_.pusher;
  const BodyState& b = state_.objects[0];
  const Eigen::Rotation2Dd rot(b.yaw);
  const Vec2 local = rot.inverse() * (p.position - b.position);
  const Vec2& h = config_.box_half_extents;

  Vec2 closest;
  Vec2 n_local;
  double depth;
  if (std::abs(local.x()) <= h.x() && std::abs(local.y()) <= h.y()) {
    // Disc center inside the box: push out through the nearest face.
    const double dx = h.x() - std::abs(local.x());
    const double dy = h.y() - std::abs(local.y());
    if (dx <= dy) {
      n_local = Vec2(local.x() >= 0.0 ? 1.0 : -1.0, 0.0);
      closest = Vec2(std::copysign(h.x(), n_local.x()), local.y());
      depth = config_.pusher_radius + dx;
    } else {
      n_local = Vec2(0.0, local.y() >= 0.0 ? 1.0 : -1.0);
      closest = Vec2(local.x(), std::copysign(h.y(), n_local.y()));
      depth = config_.pusher_radius + dy;
    }
  } else {
    closest = local.cwiseMax(-h).cwiseMin(h);
    const Vec2 diff = local - closest;
    const double dist = diff.norm();
    if (dist >= config_.pusher_radius) return c;
    n_local = diff / dist;
    depth = config_.pusher_radius - dist;
  }

  const Vec2 n = rot * n_local;  // box -> pusher
  const Vec2 contact_point = b.position + rot * closest;
  const Vec2 r = contact_point - b.position;
  const Vec2 point_velocity = b.lin_velocity + b.ang_velocity * Vec2(-r.y(), r.x());
  const Vec2 v_rel = p.lin_velocity - point_velocity;

  const double separating_speed = v_rel.dot(n);
  const double fn = std::max(
      0.0, config_.contact_stiffness * depth - config_.contact_damping * separating_speed);

  const Vec2 tangent(-n.y(), n.x());
  const double vt = v_rel.dot(tangent);
  double ft = -params_.sliding * fn * std::tanh(vt / config_.slip_regularization_velocity);
  // Capped so interface friction cannot reverse the relative sliding
  // direction within one step (keeps near-stick contact chatter-free).
  const double reduced_mass = 1.0 / (1.0 / params_.pusher_mass + 1.0 / object_mass_);
  const double ft_cap = std::abs(vt) * reduced_mass / config_.dt;
  ft = std::clamp(ft, -ft_cap, ft_cap);

  const Vec2 on_pusher = fn * n + ft * tangent;
  c.active = true;
  c.force_on_pusher = on_pusher;
  c.force_on_object = -on_pusher;
  c.torque_on_object = cross2(r, c.force_on_object);
  return c;
}

const SimState& World::advance(const Vec2& force, const Vec2* velocity_override) {
  const double dt = config_.dt;
  const double v_reg = config_.slip_regularization_velocity;
  const Contact contact = compute_contact();

  scratch_ = state_;

  BodyState& pusher = scratch_.pusher;
  if (velocity_override != nullptr) {
    pusher.lin_velocity = *velocity_override;
  } else {
    pusher.lin_velocity += dt / params_.pusher_mass * (force + contact.force_on_pusher);
  }
  pusher.position += dt * pusher.lin_velocity;

  for (std::size_t k = 0; k < scratch_.objects.size(); ++k) {
    BodyState& obj = scratch_.objects[k];
    Vec2 v = obj.lin_velocity;
    double w = obj.ang_velocity;
    if (k == 0) {
      v += dt / object_mass_ * contact.force_on_object;
      w += dt / object_inertia_ * contact.torque_on_object;
    }

    // Support friction, applied as impulses capped at the body's momentum so
    // regularized friction can decelerate to exact rest but never reverse
    // motion within a step.
    const double speed = v.norm();
    if (speed > 0.0) {
      const double decel =
          (params_.sliding + params_.rolling) * config_.gravity * std::tanh(speed / v_reg);
      v -= std::min(dt * decel, speed) / speed * v;
    }
    if (w != 0.0) {
      const double ang_decel = params_.torsional * object_mass_ * config_.gravity *
                               effective_radius_ / object_inertia_ *
                               std::tanh(std::abs(w) * effective_radius_ / v_reg);
      w -= std::copysign(std::min(dt * ang_decel, std::abs(w)), w);
    }
    if (v.norm() < kSpeedFlush) v.setZero();
    if (std::abs(w) < kSpeedFlush) w = 0.0;

    obj.lin_velocity = v;
    obj.ang_velocity = w;
    obj.position += dt * v;
    obj.yaw = wrap_angle(obj.yaw + dt * w);
  }

  scratch_.time += dt;
  if (!state_finite(scratch_)) throw SimDivergedError(state_);

  std::swap(state_.pusher, scratch_.pusher);
  state_.objects.swap(scratch_.objects);
  state_.time = scratch_.time;
  return state_;
}

}  // namespace pushmpc
