/*
 Copyright 2026 The swingcap Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#pragma once

#include <cmath>
#include <stdexcept>

namespace swingcap {

/// Converts SI quantities to the dimensionless units used everywhere else:
/// lengths are normalized by CoM height, times by the inverse pendulum
/// eigenfrequency sqrt(g / h).
struct Normalization {
  double com_height;       // m
  double gravity = 9.81;   // m/s^2

  Normalization(double com_height_m, double gravity_mps2 = 9.81)
      : com_height(com_height_m), gravity(gravity_mps2) {
    if (!(com_height > 0.0) || !(gravity > 0.0) ||
        !std::isfinite(com_height) || !std::isfinite(gravity)) {
      throw std::invalid_argument("Normalization requires positive finite CoM height and gravity");
    }
  }

  double omega() const { return std::sqrt(gravity / com_height); }

  double length(double meters) const { return meters / com_height; }
  double time(double seconds) const { return seconds * omega(); }
  double velocity(double mps) const { return mps / (com_height * omega()); }

  double length_si(double l) const { return l * com_height; }
  double time_si(double t) const { return t / omega(); }
  double velocity_si(double v) const { return v * com_height * omega(); }
};

}  // namespace swingcap
