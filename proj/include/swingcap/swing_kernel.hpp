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

#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace swingcap {

/// Thrown when a step time exceeds the kernel reach limit or a step length
/// exceeds l_max.
class ReachExceeded : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/**
 * @brief Power-law swing leg kernel l = k * tau^a with reach limit l_max.
 *
 * Maps a (dimensionless) step time to the achievable step length. Strictly
 * increasing on tau >= 0 for k, a > 0, so the inverse is well defined on
 * [0, l_max].
 */
struct SwingKernel {
  double k = 1.0;      ///< actuation coefficient, > 0
  double a = 1.66;     ///< exponent, > 0
  double l_max = 1.0;  ///< maximum normalized step length, > 0

  /// Largest admissible step time, (l_max / k)^(1/a).
  double tau_max() const;
};

/// Validates kernel parameters; throws std::invalid_argument on violation.
void validate(const SwingKernel& kernel);

/// k * tau^a for tau in [0, tau_max]. Throws ReachExceeded past tau_max and
/// std::domain_error for tau < 0.
double eval(const SwingKernel& kernel, double tau);

/// (l / k)^(1/a) for l in [0, l_max]; inverse of eval.
double inverse(const SwingKernel& kernel, double l);

struct SwingSample {
  double tau = 0.0;
  double l = 0.0;
};

/// Swings a rigid unit-length leg pendulum (hinged at the hip, starting at
/// rest hanging down) under constant dimensionless hip torque, gravity
/// included, and reports the horizontal foot displacement after each duration
/// in tau_grid. Dynamics: inertia * theta'' = torque - sin(theta).
std::vector<SwingSample> swing_sim(double torque, double leg_inertia,
                                   const std::vector<double>& tau_grid,
                                   double dt = 1e-3);

struct CalibrationFit {
  double k = 0.0;
  double a = 0.0;
  double r_squared = 0.0;
  std::vector<SwingSample> samples;
};

/// Least-squares line fit of ln(l) vs ln(tau); slope = a, intercept = ln(k).
/// Requires at least 3 samples with tau > 0, l > 0 and non-degenerate tau.
CalibrationFit calibrate(const std::vector<SwingSample>& samples);

/// CSV with header `tau,l`.
void write_samples_csv(std::ostream& out, const std::vector<SwingSample>& samples);
std::vector<SwingSample> read_samples_csv(std::istream& in);

/// Key-value block: `k=...`, `a=...`, `r2=...`.
void write_fit_report(std::ostream& out, const CalibrationFit& fit);

}  // namespace swingcap
