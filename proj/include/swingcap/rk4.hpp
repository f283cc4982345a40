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

namespace swingcap {

/// One classical 4th-order Runge-Kutta step for y' = f(t, y).
/// State must support addition and scaling by double (double, Eigen vectors).
template <class State, class Deriv>
State rk4_step(const State& y, double t, double dt, Deriv&& f) {
  const State k1 = f(t, y);
  const State k2 = f(t + 0.5 * dt, State(y + 0.5 * dt * k1));
  const State k3 = f(t + 0.5 * dt, State(y + 0.5 * dt * k2));
  const State k4 = f(t + dt, State(y + dt * k3));
  return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace swingcap
