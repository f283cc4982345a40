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

#include "swingcap/lipm.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "swingcap/io.hpp"
#include "swingcap/rk4.hpp"

namespace swingcap {

namespace {

bool finite(const PendulumState& s) {
  return std::isfinite(s.x_com) && std::isfinite(s.v_com) && std::isfinite(s.x_ankle);
}

}  // namespace

double icp(const PendulumState& state) { return state.x_com + state.v_com; }

Eigen::Vector2d icp(const Eigen::Vector2d& com, const Eigen::Vector2d& v_com) {
  return com + v_com;
}

double evolve_icp(double x_ic0, double x_ankle, double t) {
  if (t < 0.0 || !std::isfinite(t) || !std::isfinite(x_ic0) || !std::isfinite(x_ankle)) {
    throw std::invalid_argument("evolve_icp requires finite inputs and t >= 0");
  }
  return (x_ic0 - x_ankle) * std::exp(t) + x_ankle;
}

Trajectory simulate(const PendulumState& initial, double dt, double t_end) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("simulate requires dt > 0");
  }
  if (t_end < 0.0 || !std::isfinite(t_end)) {
    throw std::invalid_argument("simulate requires t_end >= 0");
  }
  if (!finite(initial)) {
    throw std::invalid_argument("simulate requires a finite initial state");
  }

  const double ankle = initial.x_ankle;
  auto deriv = [ankle](double, const Eigen::Vector2d& y) {
    return Eigen::Vector2d(y[1], y[0] - ankle);
  };

  Trajectory trajectory;
  Eigen::Vector2d y(initial.x_com, initial.v_com);
  double t = 0.0;
  trajectory.samples.push_back({t, initial});
  while (t < t_end) {
    // Full dt steps; the last step is shortened to land exactly on t_end.
    const double h = std::min(dt, t_end - t);
    y = rk4_step(y, t, h, deriv);
    t += h;
    if (!(t < t_end)) t = t_end;
    trajectory.samples.push_back({t, PendulumState{y[0], y[1], ankle}});
  }
  return trajectory;
}

bool is_captured(const PendulumState& state, double tol) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("is_captured requires tol > 0");
  }
  return std::abs(icp(state) - state.x_ankle) <= tol;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  out << "t,x_com,v_com,x_ankle,x_ic\n";
  for (const auto& s : trajectory.samples) {
    out << io::format_double(s.t) << ',' << io::format_double(s.state.x_com) << ','
        << io::format_double(s.state.v_com) << ',' << io::format_double(s.state.x_ankle)
        << ',' << io::format_double(icp(s.state)) << '\n';
  }
}

}  // namespace swingcap
