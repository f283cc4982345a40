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
#include <optional>
#include <vector>

namespace swingcap {

/// Radii R_1..R_N of the time-margin capture-region circles:
/// R_1 = 0, R_n = (L + R_{n-1}) * e^(-Delta_{n-1}).
/// `margins` holds Delta_1..Delta_{N-1}, so N = margins.size() + 1.
std::vector<double> capture_radii(double reach, const std::vector<double>& margins);

/// Closed form for a uniform margin:
/// R_N = L * (e^(-Du) - e^(-N Du)) / (1 - e^(-Du)).
double capture_radius_uniform(double reach, double margin, int n_steps);

/**
 * @brief Concentric capture-region circles about the instantaneous capture
 * point for a given margin sequence.
 *
 * The disc of radius R_n about the ICP bounds the n-step capture points; a
 * state is n-step capturable (with these margins) iff that disc meets the
 * foot-reach disc of radius L about the ankle. Discs are closed: boundary
 * contact counts.
 */
struct MarginGraph {
  Eigen::Vector2d center = Eigen::Vector2d::Zero();  ///< ICP location
  double reach = 0.0;                                ///< max foot reach L
  std::vector<double> margins;                       ///< Delta_1..Delta_{N-1}
  std::vector<double> radii;                         ///< R_1..R_N, R_1 = 0

  static MarginGraph from_margins(const Eigen::Vector2d& center, double reach,
                                  std::vector<double> margins);
  static MarginGraph uniform(const Eigen::Vector2d& center, double reach, double margin,
                             int n_steps);
};

/// Smallest n with |x_ic - x_ankle| <= L + R_n; nullopt when out of range for
/// every circle in the graph. Per-axis interval form.
std::optional<int> min_capture_steps(double x_ic, double x_ankle, const MarginGraph& graph);

/// Planar disc form of min_capture_steps.
std::optional<int> min_capture_steps(const Eigen::Vector2d& x_ic, const Eigen::Vector2d& x_ankle,
                                     const MarginGraph& graph);

/// Point of the reach disc closest to the ICP: the ICP itself when reachable,
/// otherwise the boundary point toward it. No target when the state is not
/// capturable within the graph.
std::optional<double> bang_bang_target(double x_ic, double x_ankle, const MarginGraph& graph);
std::optional<Eigen::Vector2d> bang_bang_target(const Eigen::Vector2d& x_ic,
                                                const Eigen::Vector2d& x_ankle,
                                                const MarginGraph& graph);

/// CSV with header `n,radius`.
void write_radii_csv(std::ostream& out, const MarginGraph& graph);

/// Self-contained SVG: concentric capture circles plus the feasible disc.
void write_graph_svg(std::ostream& out, const MarginGraph& graph,
                     const Eigen::Vector2d& x_ankle);

}  // namespace swingcap
