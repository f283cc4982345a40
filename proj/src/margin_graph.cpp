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

#include "swingcap/margin_graph.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "swingcap/io.hpp"
#include "swingcap/svg.hpp"

namespace swingcap {

namespace {

void check_reach(double reach) {
  if (!(reach > 0.0) || !std::isfinite(reach)) {
    throw std::invalid_argument("margin graph requires reach L > 0");
  }
}

std::optional<int> steps_for_distance(double distance, const MarginGraph& graph) {
  for (std::size_t i = 0; i < graph.radii.size(); ++i) {
    if (distance <= graph.reach + graph.radii[i]) {
      return static_cast<int>(i) + 1;  // closed discs: boundary contact counts
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<double> capture_radii(double reach, const std::vector<double>& margins) {
  check_reach(reach);
  for (double m : margins) {
    if (!(m > 0.0) || !std::isfinite(m)) {
      throw std::invalid_argument("margin graph requires every margin > 0");
    }
  }
  std::vector<double> radii;
  radii.reserve(margins.size() + 1);
  radii.push_back(0.0);  // R_1
  for (double m : margins) {
    radii.push_back((reach + radii.back()) * std::exp(-m));
  }
  return radii;
}

double capture_radius_uniform(double reach, double margin, int n_steps) {
  check_reach(reach);
  if (!(margin > 0.0) || !std::isfinite(margin)) {
    throw std::invalid_argument("capture_radius_uniform requires margin > 0");
  }
  if (n_steps < 1) {
    throw std::invalid_argument("capture_radius_uniform requires n_steps >= 1");
  }
  const double e = std::exp(-margin);
  return reach * (e - std::exp(-n_steps * margin)) / (1.0 - e);
}

MarginGraph MarginGraph::from_margins(const Eigen::Vector2d& center, double reach,
                                      std::vector<double> margins) {
  MarginGraph graph;
  graph.center = center;
  graph.reach = reach;
  graph.radii = capture_radii(reach, margins);
  graph.margins = std::move(margins);
  return graph;
}

MarginGraph MarginGraph::uniform(const Eigen::Vector2d& center, double reach, double margin,
                                 int n_steps) {
  if (n_steps < 1) {
    throw std::invalid_argument("MarginGraph::uniform requires n_steps >= 1");
  }
  return from_margins(center, reach,
                      std::vector<double>(static_cast<std::size_t>(n_steps) - 1, margin));
}

std::optional<int> min_capture_steps(double x_ic, double x_ankle, const MarginGraph& graph) {
  return steps_for_distance(std::abs(x_ic - x_ankle), graph);
}

std::optional<int> min_capture_steps(const Eigen::Vector2d& x_ic, const Eigen::Vector2d& x_ankle,
                                     const MarginGraph& graph) {
  return steps_for_distance((x_ic - x_ankle).norm(), graph);
}

std::optional<double> bang_bang_target(double x_ic, double x_ankle, const MarginGraph& graph) {
  if (!min_capture_steps(x_ic, x_ankle, graph)) return std::nullopt;
  const double offset = x_ic - x_ankle;
  if (std::abs(offset) <= graph.reach) return x_ic;
  return x_ankle + std::copysign(graph.reach, offset);
}

std::optional<Eigen::Vector2d> bang_bang_target(const Eigen::Vector2d& x_ic,
                                                const Eigen::Vector2d& x_ankle,
                                                const MarginGraph& graph) {
  if (!min_capture_steps(x_ic, x_ankle, graph)) return std::nullopt;
  const Eigen::Vector2d offset = x_ic - x_ankle;
  const double distance = offset.norm();
  if (distance <= graph.reach) return x_ic;
  return Eigen::Vector2d(x_ankle + offset * (graph.reach / distance));
}

void write_radii_csv(std::ostream& out, const MarginGraph& graph) {
  out << "n,radius\n";
  for (std::size_t i = 0; i < graph.radii.size(); ++i) {
    out << (i + 1) << ',' << io::format_double(graph.radii[i]) << '\n';
  }
}

void write_graph_svg(std::ostream& out, const MarginGraph& graph,
                     const Eigen::Vector2d& x_ankle) {
  const double r_max = graph.radii.empty() ? 0.0 : graph.radii.back();
  const double extent =
      std::max({r_max, graph.reach + (graph.center - x_ankle).norm(), graph.reach}) * 1.2 + 1e-9;

  svg::Document doc(480.0, 480.0);
  const auto to_px = [&](const Eigen::Vector2d& p) {
    const Eigen::Vector2d rel = p - graph.center;
    return Eigen::Vector2d(240.0 + 240.0 * rel.x() / extent, 240.0 - 240.0 * rel.y() / extent);
  };
  const double scale = 240.0 / extent;

  // Feasible reach disc about the ankle.
  const Eigen::Vector2d ankle_px = to_px(x_ankle);
  doc.circle(ankle_px.x(), ankle_px.y(), graph.reach * scale, "#1f77b4", "#1f77b433", 1.5);

  // Capture circles about the ICP (R_1 = 0 renders as the center dot).
  const Eigen::Vector2d center_px = to_px(graph.center);
  for (std::size_t i = 1; i < graph.radii.size(); ++i) {
    doc.circle(center_px.x(), center_px.y(), graph.radii[i] * scale, "#d62728", "none", 1.0);
  }
  doc.circle(center_px.x(), center_px.y(), 2.5, "#d62728", "#d62728", 1.0);
  doc.text(center_px.x() + 6.0, center_px.y() - 6.0, "icp");
  doc.text(ankle_px.x() + 6.0, ankle_px.y() + 12.0, "ankle");
  doc.write(out);
}

}  // namespace swingcap
