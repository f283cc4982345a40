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

#include "swingcap/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace swingcap {

namespace {

// Standard Nelder-Mead coefficients.
constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

Eigen::VectorXd clamp_to_box(Eigen::VectorXd x, const Eigen::VectorXd& lower,
                             const Eigen::VectorXd& upper) {
  return x.cwiseMax(lower).cwiseMin(upper);
}

NelderMeadResult run_once(const std::function<double(const Eigen::VectorXd&)>& objective,
                          const Eigen::VectorXd& start, const Eigen::VectorXd& lower,
                          const Eigen::VectorXd& upper, const NelderMeadOptions& options,
                          double init_step_fraction) {
  const Eigen::Index n = start.size();
  std::vector<Eigen::VectorXd> simplex;
  simplex.reserve(static_cast<std::size_t>(n) + 1);
  simplex.push_back(clamp_to_box(start, lower, upper));
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::VectorXd v = simplex[0];
    const double width = upper[i] - lower[i];
    double step = init_step_fraction * width;
    if (step <= 0.0) step = 1e-8;
    // Step away from a bound the start sits on.
    if (v[i] + step > upper[i]) step = -step;
    v[i] += step;
    simplex.push_back(clamp_to_box(v, lower, upper));
  }

  std::vector<double> values(simplex.size());
  for (std::size_t i = 0; i < simplex.size(); ++i) values[i] = objective(simplex[i]);

  std::vector<std::size_t> order(simplex.size());
  NelderMeadResult result;
  int iter = 0;
  for (; iter < options.max_iters; ++iter) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[order.size() - 2];

    double diameter = 0.0;
    for (std::size_t i = 1; i < simplex.size(); ++i) {
      diameter = std::max(diameter, (simplex[order[i]] - simplex[best]).cwiseAbs().maxCoeff());
    }
    const double f_spread = std::abs(values[worst] - values[best]);
    if (diameter <= options.x_tol &&
        f_spread <= options.f_tol * (std::abs(values[best]) + options.f_tol)) {
      result.converged = true;
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i + 1 < order.size(); ++i) centroid += simplex[order[i]];
    centroid /= static_cast<double>(simplex.size() - 1);

    const Eigen::VectorXd reflected =
        clamp_to_box(centroid + kReflect * (centroid - simplex[worst]), lower, upper);
    const double f_reflected = objective(reflected);

    if (f_reflected < values[best]) {
      const Eigen::VectorXd expanded =
          clamp_to_box(centroid + kExpand * (reflected - centroid), lower, upper);
      const double f_expanded = objective(expanded);
      if (f_expanded < f_reflected) {
        simplex[worst] = expanded;
        values[worst] = f_expanded;
      } else {
        simplex[worst] = reflected;
        values[worst] = f_reflected;
      }
    } else if (f_reflected < values[second_worst]) {
      simplex[worst] = reflected;
      values[worst] = f_reflected;
    } else {
      const bool outside = f_reflected < values[worst];
      const Eigen::VectorXd& toward = outside ? reflected : simplex[worst];
      const Eigen::VectorXd contracted =
          clamp_to_box(centroid + kContract * (toward - centroid), lower, upper);
      const double f_contracted = objective(contracted);
      if (f_contracted < std::min(f_reflected, values[worst])) {
        simplex[worst] = contracted;
        values[worst] = f_contracted;
      } else {
        for (std::size_t i = 1; i < order.size(); ++i) {
          const std::size_t idx = order[i];
          simplex[idx] = clamp_to_box(
              simplex[best] + kShrink * (simplex[idx] - simplex[best]), lower, upper);
          values[idx] = objective(simplex[idx]);
        }
      }
    }
  }

  const auto best_it = std::min_element(values.begin(), values.end());
  result.x = simplex[static_cast<std::size_t>(best_it - values.begin())];
  result.f = *best_it;
  result.iterations = iter;
  return result;
}

}  // namespace

NelderMeadResult nelder_mead_minimize(
    const std::function<double(const Eigen::VectorXd&)>& objective,
    const Eigen::VectorXd& start, const Eigen::VectorXd& lower,
    const Eigen::VectorXd& upper, const NelderMeadOptions& options) {
  if (start.size() == 0 || start.size() != lower.size() || start.size() != upper.size()) {
    throw std::invalid_argument("nelder_mead_minimize: inconsistent dimensions");
  }
  if ((upper.array() < lower.array()).any()) {
    throw std::invalid_argument("nelder_mead_minimize: empty box");
  }

  NelderMeadResult result = run_once(objective, start, lower, upper, options, options.init_step);
  int total_iters = result.iterations;
  double step = options.init_step;
  for (int r = 0; r < options.restarts; ++r) {
    step *= 0.1;
    NelderMeadResult again = run_once(objective, result.x, lower, upper, options, step);
    total_iters += again.iterations;
    if (again.f < result.f) {
      again.converged = again.converged || result.converged;
      result = again;
    }
  }
  result.iterations = total_iters;
  return result;
}

}  // namespace swingcap
