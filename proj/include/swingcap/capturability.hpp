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
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "swingcap/nelder_mead.hpp"
#include "swingcap/swing_kernel.hpp"

namespace swingcap {

/**
 * @brief Ordered step-time intervals tau_1..tau_N.
 *
 * Each tau_i is the time-margin between consecutive steps; tau_1 must be
 * strictly positive and every tau_i must stay within the kernel reach limit.
 * Step lengths follow from the kernel as l_i = eval(kernel, tau_i).
 */
struct StepSequence {
  Eigen::VectorXd taus;

  StepSequence() = default;
  explicit StepSequence(Eigen::VectorXd t) : taus(std::move(t)) {}
  int size() const { return static_cast<int>(taus.size()); }
};

/// Step lengths l_i = eval(kernel, tau_i) for the whole sequence.
Eigen::VectorXd step_lengths(const SwingKernel& kernel, const StepSequence& seq);

/// Classification of an optimal sequence by bound activity: interior optimum
/// (StepTime), every step at the reach bound (StepLength), a persistent
/// combination of both (Mixed), or no feasible sequence at all (Infeasible).
enum class Regime { StepTime, StepLength, Mixed, Infeasible };

std::string to_string(Regime regime);

struct CapturabilityResult {
  double d = 0.0;          ///< resisted disturbance (initial ICP offset)
  StepSequence sequence;   ///< optimal step times
  Regime regime = Regime::Infeasible;
  double objective = 0.0;  ///< final objective value of the solved problem
  double k_min = std::numeric_limits<double>::quiet_NaN();  ///< planning results only
};

/// Robot capability envelope for planning: kernel exponent, reach limit and
/// the largest achievable actuation coefficient.
struct RobotSpec {
  double a = 1.66;
  double l_max = 1.0;
  double k_max = 1.0;
};

/// Settings for the multi-start simplex solver. Defaults follow the solver
/// design: 16 starts (box corners, centroid, uniform-random points), a
/// 64-points-per-axis grid polish for up to 3 steps, deterministic seed.
struct SolverOptions {
  int multistart = 16;
  int grid_points = 64;
  unsigned seed = 12345;
  double tau_floor = 1e-3;          ///< lower bound on tau_1 (first step non-zero)
  double bound_activity_tol = 1e-6; ///< relative tolerance for regime classification
  NelderMeadOptions nm = {};
  std::vector<Eigen::VectorXd> warm_starts = {};  ///< extra solver starts
};

/// Disturbance resisted by a step sequence:
/// d_N = sum_i [ sum_{j<=i} (-1)^(i+j) f(tau_j) ] * exp(-sum_{j<=i} tau_j).
double disturbance_of_sequence(const SwingKernel& kernel, const StepSequence& seq);

/**
 * @brief Replays the step sequence through the ICP recursion and returns the
 * final |x_ic - x_ankle|.
 *
 * Starting from x_ic = d with the stance ankle at the origin, each step
 * propagates the ICP for tau_i about the current ankle and then moves the
 * trailing foot forward by l_i (feet alternate, so each foot advances from
 * its own previous position). A zero residual certifies that d is exactly
 * captured by the sequence; this is the independent oracle for
 * disturbance_of_sequence.
 */
double forward_check(const SwingKernel& kernel, const StepSequence& seq, double d);

struct OneStepOptimum {
  double tau_opt = 0.0;
  double d_max = 0.0;
};

/// Closed-form 1-step optimum of d(tau) = k tau^a e^(-tau):
/// tau_opt = min(a, tau_max), d_max = k tau_opt^a e^(-tau_opt).
OneStepOptimum one_step_analytic(const SwingKernel& kernel);

/// Maximizes the N-step disturbance over the box
/// tau_1 in [tau_floor, tau_max], tau_i in [0, tau_max].
CapturabilityResult max_disturbance(const SwingKernel& kernel, int n_steps,
                                    const SolverOptions& options = {});

/**
 * @brief Minimal actuation coefficient capturing disturbance d in N steps.
 *
 * Maximizes f_obj (the N-step disturbance with k = 1) subject to
 * tau_i^a / f_obj <= l_max / d for every i, and returns
 * k_min = d / f_obj_max together with the optimal sequence. The result is
 * Infeasible when the feasible set is empty or k_min exceeds spec.k_max.
 */
CapturabilityResult min_actuation(const RobotSpec& spec, double d, int n_steps,
                                  const SolverOptions& options = {});

/// Smallest d at which the min_actuation optimum leaves the interior of the
/// feasible set (bisection to ~1e-7). Returns +infinity when no transition
/// occurs below the infeasibility threshold. For one step with a power-law
/// kernel this equals l_max * e^(-a).
double decision_boundary(const RobotSpec& spec, int n_steps,
                         const SolverOptions& options = {});

struct PlanStep {
  double tau = 0.0;
  double length = 0.0;
  double cumulative_time = 0.0;
};

struct StepPlan {
  bool capturable = false;
  int n_steps = 0;
  Regime regime = Regime::Infeasible;
  double k_used = 0.0;  ///< actuation coefficient the plan swings with
  double d = 0.0;       ///< disturbance the plan captures
  std::vector<PlanStep> steps;
};

/**
 * @brief Push-recovery decision tree with memoized per-N quantities.
 *
 * For N = 1..max_steps the planner compares the disturbance against
 * d_{N,max} (capturability with the available actuation) and against the
 * decision boundary d_{N,d} (step-time vs step-length sequence), returning
 * the least-N plan. d_{N,max} and d_{N,d} are computed on demand and cached.
 */
class PushRecoveryPlanner {
 public:
  PushRecoveryPlanner(RobotSpec spec, double k_available, SolverOptions options = {});

  /// Least-N capture plan for disturbance d, or capturable=false if d exceeds
  /// d_{N,max} + 1e-9 for every N <= max_steps. d = 0 yields an empty plan.
  StepPlan plan(double d, int max_steps) const;

  /// Memoized d_{N,max} for the available actuation.
  double max_disturbance_for(int n_steps) const;

  /// Memoized decision boundary d_{N,d}.
  double boundary_for(int n_steps) const;

  const RobotSpec& spec() const { return spec_; }
  double k_available() const { return k_available_; }

 private:
  const CapturabilityResult& unconstrained_for(int n_steps) const;

  RobotSpec spec_;
  double k_available_;
  SolverOptions options_;
  mutable std::mutex mutex_;
  mutable std::map<int, CapturabilityResult> dmax_cache_;
  mutable std::map<int, CapturabilityResult> unconstrained_cache_;
  mutable std::map<int, double> boundary_cache_;
};

/// One-shot convenience wrapper around PushRecoveryPlanner.
StepPlan plan_steps(const RobotSpec& spec, double k_available, double d, int max_steps,
                    const SolverOptions& options = {});

/// Plan export as CSV `step_index,tau,length,cumulative_time`.
void write_plan_csv(std::ostream& out, const StepPlan& plan);

}  // namespace swingcap
