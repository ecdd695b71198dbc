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

#ifndef PUSHMPC_PID_HPP_
#define PUSHMPC_PID_HPP_

#include "pushmpc/types.hpp"

namespace pushmpc {

// Position/velocity tracking controller for the pusher. The integral term is
// reset whenever the reference trajectory is switched.
class PidController {
 public:
  PidController(const PidGains& gains, double dt) : gains_(gains), dt_(dt) {}

  Vec2 force(const Vec2& desired_position, const Vec2& desired_velocity,
             const BodyState& actual) {
    const Vec2 error = desired_position - actual.position;
    integral_ += dt_ * error;
    return gains_.kp * error + gains_.kd * (desired_velocity - actual.lin_velocity) +
           gains_.ki * integral_;
  }

  void reset() { integral_.setZero(); }

  const Vec2& integral() const { return integral_; }

 private:
  PidGains gains_;
  double dt_;
  Vec2 integral_ = Vec2::Zero();
};

}  // namespace pushmpc

#endif  // PUSHMPC_PID_HPP_
