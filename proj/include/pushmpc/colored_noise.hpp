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

#ifndef PUSHMPC_COLORED_NOISE_HPP_
#define PUSHMPC_COLORED_NOISE_HPP_

#include <Eigen/Dense>

#include "pushmpc/rng.hpp"

namespace pushmpc {

// Draws n samples of Gaussian noise with power spectral density 1/f^beta,
// normalized to unit variance per sample. beta = 0 yields exactly white
// noise; larger beta correlates neighbouring samples. Synthesized by
// inverse-transforming spectrum amplitudes scaled by f^(-beta/2), with the
// lowest resolvable frequency 1/n standing in for f = 0.
Eigen::VectorXd colored_noise(double beta, int n, Rng& rng);

}  // namespace pushmpc

#endif  // PUSHMPC_COLORED_NOISE_HPP_
