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

#include <Eigen/Core>
#include <iosfwd>
#include <vector>

namespace swingcap {

/**
 * @brief Dimensionless linear inverted pendulum state for one horizontal axis.
 *
 * Lengths are normalized by CoM height, time by the inverse pendulum
 * eigenfrequency, so the dynamics reduce to x'' = x - x_ankle and the
 * instantaneous capture point diverges as e^t. The two horizontal axes are
 * decoupled; use one PendulumState per axis.
 */
struct PendulumState {
  double x_com = 0.0;    ///< CoM offset
  double v_com = 0.0;    ///< CoM velocity
  double x_ankle = 0.0;  ///< stance ankle location
};

/// Instantaneous capture point x_com + v_com.
double icp(const PendulumState& state);

/// Planar ICP for the decoupled 2-D case.
Eigen::Vector2d icp(const Eigen::Vector2d& com, const Eigen::Vector2d& v_com);

/// Closed-form ICP propagation: (x_ic0 - x_ankle) * e^t + x_ankle, t >= 0.
double evolve_icp(double x_ic0, double x_ankle, double t);

struct TrajectorySample {
  double t = 0.0;
  PendulumState state;
};

/// Ordered samples with strictly increasing time, first sample at t = 0.
struct Trajectory {
  std::vector<TrajectorySample> samples;
};

/// Fixed-step RK4 integration of x'' = x - x_ankle from `initial` to t_end.
/// Rejects dt <= 0, t_end < 0 and non-finite inputs.
Trajectory simulate(const PendulumState& initial, double dt, double t_end);

/// True iff the ICP coincides with the stance ankle within tol (tol > 0).
bool is_captured(const PendulumState& state, double tol);

/// CSV export, header `t,x_com,v_com,x_ankle,x_ic`, 17 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace swingcap
