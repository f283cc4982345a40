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

#include "swingcap/swing_kernel.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "swingcap/io.hpp"
#include "swingcap/rk4.hpp"

namespace swingcap {

namespace {

// Tolerates a few ulps past the bound so that eval(tau_max()) never throws.
constexpr double kBoundSlack = 1e-12;

}  // namespace

double SwingKernel::tau_max() const { return std::pow(l_max / k, 1.0 / a); }

void validate(const SwingKernel& kernel) {
  if (!(kernel.k > 0.0) || !(kernel.a > 0.0) || !(kernel.l_max > 0.0) ||
      !std::isfinite(kernel.k) || !std::isfinite(kernel.a) || !std::isfinite(kernel.l_max)) {
    throw std::invalid_argument("SwingKernel requires finite k > 0, a > 0, l_max > 0");
  }
}

double eval(const SwingKernel& kernel, double tau) {
  validate(kernel);
  if (!(tau >= 0.0)) {
    throw std::domain_error("eval: step time must be >= 0");
  }
  const double tau_max = kernel.tau_max();
  if (tau > tau_max * (1.0 + kBoundSlack)) {
    throw ReachExceeded("eval: step time exceeds kernel reach limit");
  }
  return kernel.k * std::pow(tau, kernel.a);
}

double inverse(const SwingKernel& kernel, double l) {
  validate(kernel);
  if (!(l >= 0.0) || l > kernel.l_max * (1.0 + kBoundSlack)) {
    throw std::domain_error("inverse: step length outside [0, l_max]");
  }
  return std::pow(l / kernel.k, 1.0 / kernel.a);
}

std::vector<SwingSample> swing_sim(double torque, double leg_inertia,
                                   const std::vector<double>& tau_grid, double dt) {
  if (!(torque > 0.0) || !std::isfinite(torque)) {
    throw std::invalid_argument("swing_sim: torque must be positive and finite");
  }
  if (!(leg_inertia > 0.0) || !std::isfinite(leg_inertia)) {
    throw std::invalid_argument("swing_sim: leg inertia must be positive and finite");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("swing_sim: dt must be positive");
  }
  if (tau_grid.empty()) {
    throw std::invalid_argument("swing_sim: tau grid must be non-empty");
  }
  for (double tau : tau_grid) {
    if (!(tau > 0.0) || !std::isfinite(tau)) {
      throw std::invalid_argument("swing_sim: every tau must be positive and finite");
    }
  }

  auto deriv = [torque, leg_inertia](double, const Eigen::Vector2d& y) {
    return Eigen::Vector2d(y[1], (torque - std::sin(y[0])) / leg_inertia);
  };

  std::vector<SwingSample> out;
  out.reserve(tau_grid.size());
  for (double tau : tau_grid) {
    Eigen::Vector2d y(0.0, 0.0);  // from rest at vertical-down
    double t = 0.0;
    while (t < tau) {
      const double h = std::min(dt, tau - t);
      y = rk4_step(y, t, h, deriv);
      t += h;
      if (!(t < tau)) break;
    }
    out.push_back({tau, std::sin(y[0])});  // horizontal foot displacement
  }
  return out;
}

CalibrationFit calibrate(const std::vector<SwingSample>& samples) {
  std::vector<SwingSample> valid;
  for (const auto& s : samples) {
    if (s.tau > 0.0 && s.l > 0.0 && std::isfinite(s.tau) && std::isfinite(s.l)) {
      valid.push_back(s);
    }
  }
  if (valid.size() < 3) {
    throw std::invalid_argument("calibrate: need at least 3 samples with tau > 0 and l > 0");
  }

  const auto n = static_cast<Eigen::Index>(valid.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd target(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    design(i, 0) = std::log(valid[static_cast<std::size_t>(i)].tau);
    design(i, 1) = 1.0;
    target(i) = std::log(valid[static_cast<std::size_t>(i)].l);
  }
  const double tau_spread = design.col(0).maxCoeff() - design.col(0).minCoeff();
  if (!(tau_spread > 0.0)) {
    throw std::invalid_argument("calibrate: degenerate samples (all tau equal)");
  }

  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(target);
  const Eigen::VectorXd residual = target - design * coef;
  const double ss_res = residual.squaredNorm();
  const double ss_tot = (target.array() - target.mean()).matrix().squaredNorm();
  const double r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;

  CalibrationFit fit;
  fit.a = coef(0);
  fit.k = std::exp(coef(1));
  fit.r_squared = std::min(std::max(r2, 0.0), 1.0);
  fit.samples = valid;
  return fit;
}

void write_samples_csv(std::ostream& out, const std::vector<SwingSample>& samples) {
  out << "tau,l\n";
  for (const auto& s : samples) {
    out << io::format_double(s.tau) << ',' << io::format_double(s.l) << '\n';
  }
}

std::vector<SwingSample> read_samples_csv(std::istream& in) {
  std::vector<SwingSample> out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    line = io::trim(line);
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line == "tau,l") continue;  // optional header
    }
    auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("samples CSV: expected 'tau,l' row, got: " + line);
    }
    SwingSample s;
    s.tau = std::stod(line.substr(0, comma));
    s.l = std::stod(line.substr(comma + 1));
    out.push_back(s);
  }
  return out;
}

void write_fit_report(std::ostream& out, const CalibrationFit& fit) {
  out << "k=" << io::format_double(fit.k) << '\n'
      << "a=" << io::format_double(fit.a) << '\n'
      << "r2=" << io::format_double(fit.r_squared) << '\n';
}

}  // namespace swingcap
