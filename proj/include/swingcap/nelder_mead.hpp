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
#include <functional>

namespace swingcap {

/**
 * @brief Derivative-free simplex descent (Nelder & Mead 1965) on a box.
 *
 * Bound constraints are handled by projecting trial points onto the box,
 * following Box's complex approach. The minimizer restarts once from the
 * found point with a smaller initial simplex, which recovers the accuracy
 * lost when the simplex degenerates against a bound.
 */
struct NelderMeadOptions {
  int max_iters = 4000;
  double x_tol = 1e-11;   ///< simplex diameter termination
  double f_tol = 1e-15;   ///< spread of function values termination
  double init_step = 0.1; ///< initial simplex edge, as a fraction of box width
  int restarts = 1;
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double f = 0.0;
  int iterations = 0;
  bool converged = false;
};

NelderMeadResult nelder_mead_minimize(
    const std::function<double(const Eigen::VectorXd&)>& objective,
    const Eigen::VectorXd& start, const Eigen::VectorXd& lower,
    const Eigen::VectorXd& upper, const NelderMeadOptions& options = {});

}  // namespace swingcap
