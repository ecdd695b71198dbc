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

#include "pushmpc/replay.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "pushmpc/world.hpp"

namespace pushmpc {
namespace {

using nlohmann::json;

json body_to_json(const BodyState& b) {
  return json::array({b.position.x(), b.position.y(), b.yaw, b.lin_velocity.x(),
                      b.lin_velocity.y(), b.ang_velocity});
}

BodyState body_from_json(const json& j) {
  if (!j.is_array() || j.size() != 6) throw std::runtime_error("buffer: malformed body state");
  BodyState b;
  b.position = Vec2(j[0].get<double>(), j[1].get<double>());
  b.yaw = j[2].get<double>();
  b.lin_velocity = Vec2(j[3].get<double>(), j[4].get<double>());
  b.ang_velocity = j[5].get<double>();
  return b;
}

json state_to_json(const SimState& s) {
  json objects = json::array();
  for (const BodyState& b : s.objects) objects.push_back(body_to_json(b));
  return json{{"time", s.time}, {"pusher", body_to_json(s.pusher)}, {"objects", objects}};
}

SimState state_from_json(const json& j) {
  SimState s;
  s.time = j.at("time").get<double>();
  s.pusher = body_from_json(j.at("pusher"));
  for (const json& o : j.at("objects")) s.objects.push_back(body_from_json(o));
  return s;
}

}  // namespace

void append(ReplayBuffer& buffer, Rollout rollout) {
  if (!rollout.consistent())
    throw std::invalid_argument("append: rollout sequences have mismatched lengths");
  buffer.rollouts.push_back(std::move(rollout));
}

PredictedTrajectories replay(const PhysParams& candidate, const Rollout& rollout,
                             const WorldConfig& world_config) {
  WorldConfig config = world_config;
  config.dt = rollout.dt;
  World world(config, candidate, rollout.initial_state);

  PredictedTrajectories predicted;
  const std::size_t n = rollout.size();
  predicted.pusher.reserve(n);
  predicted.object.reserve(n);
  predicted.yaw.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const SimState& s = rollout.mode == ControlMode::kForce
                            ? world.step(rollout.controls[i])
                            : world.step_velocity(rollout.controls[i]);
    predicted.pusher.push_back(s.pusher.position);
    predicted.object.push_back(s.objects[0].position);
    predicted.yaw.push_back(s.objects[0].yaw);
  }
  return predicted;
}

double replay_cost(const PhysParams& candidate, const ReplayBuffer& buffer,
                   const WorldConfig& world_config, double kappa_pusher,
                   double kappa_rotation) {
  if (buffer.empty()) throw std::invalid_argument("replay_cost: empty buffer");
  double total = 0.0;
  for (const Rollout& rollout : buffer.rollouts) {
    PredictedTrajectories predicted;
    try {
      predicted = replay(candidate, rollout, world_config);
    } catch (const SimDivergedError&) {
      return std::numeric_limits<double>::infinity();
    }
    for (std::size_t i = 0; i < rollout.size(); ++i) {
      total += (rollout.observed_object[i] - predicted.object[i]).squaredNorm();
      total += kappa_pusher * (rollout.observed_pusher[i] - predicted.pusher[i]).squaredNorm();
      const double dot =
          std::clamp(std::cos(rollout.observed_yaw[i] - predicted.yaw[i]), -1.0, 1.0);
      const double angle = std::acos(dot);
      total += kappa_rotation * angle * angle;
    }
  }
  return total;
}

void save_buffer(const ReplayBuffer& buffer, const std::string& path) {
  json rollouts = json::array();
  for (const Rollout& r : buffer.rollouts) {
    json steps = json::array();
    for (std::size_t i = 0; i < r.size(); ++i) {
      steps.push_back(json::array({r.times[i], r.controls[i].x(), r.controls[i].y(),
                                   r.observed_pusher[i].x(), r.observed_pusher[i].y(),
                                   r.observed_object[i].x(), r.observed_object[i].y(),
                                   r.observed_yaw[i]}));
    }
    rollouts.push_back(json{{"mode", r.mode == ControlMode::kForce ? "force" : "velocity"},
                            {"dt", r.dt},
                            {"initial_state", state_to_json(r.initial_state)},
                            {"steps", steps}});
  }
  const json root{{"version", 1}, {"rollouts", rollouts}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_buffer: cannot open " + path);
  out << root.dump() << "\n";
}

ReplayBuffer load_buffer(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_buffer: cannot open " + path);
  json root;
  try {
    in >> root;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("load_buffer: parse error in " + path + ": " + e.what());
  }
  if (root.value("version", 0) != 1)
    throw std::runtime_error("load_buffer: unsupported buffer version in " + path);

  ReplayBuffer buffer;
  for (const json& jr : root.at("rollouts")) {
    Rollout r;
    const std::string mode = jr.at("mode").get<std::string>();
    if (mode == "force") {
      r.mode = ControlMode::kForce;
    } else if (mode == "velocity") {
      r.mode = ControlMode::kVelocity;
    } else {
      throw std::runtime_error("load_buffer: unknown control mode '" + mode + "'");
    }
    r.dt = jr.at("dt").get<double>();
    r.initial_state = state_from_json(jr.at("initial_state"));
    for (const json& step : jr.at("steps")) {
      if (!step.is_array() || step.size() != 8)
        throw std::runtime_error("load_buffer: malformed step record");
      r.times.push_back(step[0].get<double>());
      r.controls.emplace_back(step[1].get<double>(), step[2].get<double>());
      r.observed_pusher.emplace_back(step[3].get<double>(), step[4].get<double>());
      r.observed_object.emplace_back(step[5].get<double>(), step[6].get<double>());
      r.observed_yaw.push_back(step[7].get<double>());
    }
    append(buffer, std::move(r));
  }
  return buffer;
}

}  // namespace pushmpc
