// Copyright 2026 The gaussmet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "gaussmet/gaussian_state.hpp"

namespace gaussmet {

/// Random physical single-mode state: sigma = R(a) Z(s) nu Z(s) R(a)^T with
/// nu in [1, 1 + max_excess], squeezing s in [-max_squeeze, max_squeeze] and
/// a random first-moment vector.
template <class Rng>
SingleModeState<double> random_single_mode_state(Rng& rng, double max_excess = 3.0,
                                                 double max_squeeze = 1.0, double max_mean = 2.0) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double nu = 1.0 + max_excess * unit(rng);
  const double s = max_squeeze * (2.0 * unit(rng) - 1.0);
  const double a = std::numbers::pi * unit(rng);
  Eigen::Matrix2d rot;
  rot << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  const Eigen::Matrix2d squeeze = Eigen::Vector2d(std::exp(-s), std::exp(s)).asDiagonal();
  const Eigen::Matrix2d sigma = nu * rot * squeeze * squeeze * rot.transpose();
  const Eigen::Vector2d d(max_mean * (2.0 * unit(rng) - 1.0), max_mean * (2.0 * unit(rng) - 1.0));
  return {d, sigma};
}

}  // namespace gaussmet
