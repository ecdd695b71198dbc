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

#include "pushmpc/colored_noise.hpp"

#include <cmath>
#include <stdexcept>

namespace pushmpc {

Eigen::VectorXd colored_noise(double beta, int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("colored_noise: n must be positive");
  if (n == 1) return Eigen::VectorXd::Constant(1, rng.normal());

  const int nf = n / 2 + 1;  // one-sided spectrum size
  const bool even = (n % 2) == 0;

  // Amplitude scale per frequency bin; the DC bin reuses the lowest
  // resolvable frequency 1/n. DC and Nyquist carry a single real component,
  // so their variance is doubled to keep the synthesis exact.
  Eigen::VectorXd scale(nf);
  for (int k = 0; k < nf; ++k) {
    const double f = (k == 0 ? 1.0 : static_cast<double>(k)) / n;
    scale[k] = std::pow(f, -beta / 2.0);
  }

  Eigen::VectorXd re(nf), im(nf);
  re[0] = std::sqrt(2.0) * scale[0] * rng.normal();
  im[0] = 0.0;
  for (int k = 1; k < nf; ++k) {
    if (even && k == nf - 1) {
      re[k] = std::sqrt(2.0) * scale[k] * rng.normal();
      im[k] = 0.0;
    } else {
      re[k] = scale[k] * rng.normal();
      im[k] = scale[k] * rng.normal();
    }
  }

  // Per-sample variance of the inverse transform below, used to normalize.
  double var = 2.0 * scale[0] * scale[0];
  for (int k = 1; k < nf; ++k) {
    const bool half = even && k == nf - 1;
    var += (half ? 2.0 : 4.0) * scale[k] * scale[k];
  }
  var /= static_cast<double>(n) * n;
  const double inv_sigma = 1.0 / std::sqrt(var);

  // Direct inverse real DFT; n is the keypoint count, so O(n^2) is cheap.
  Eigen::VectorXd y(n);
  for (int t = 0; t < n; ++t) {
    double acc = re[0];
    for (int k = 1; k < nf; ++k) {
      const double phase = 2.0 * M_PI * k * t / n;
      const bool half = even && k == nf - 1;
      const double w = half ? 1.0 : 2.0;
      acc += w * (re[k] * std::cos(phase) - im[k] * std::sin(phase));
    }
    y[t] = acc / n * inv_sigma;
  }
  return y;
}

}  // namespace pushmpc
