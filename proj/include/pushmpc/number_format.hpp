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

#ifndef PUSHMPC_NUMBER_FORMAT_HPP_
#define PUSHMPC_NUMBER_FORMAT_HPP_

#include <charconv>
#include <string>

namespace pushmpc {

// Shortest round-trip decimal representation; locale-independent, so emitted
// reports are byte-identical across runs and thread counts.
inline std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

}  // namespace pushmpc

#endif  // PUSHMPC_NUMBER_FORMAT_HPP_
