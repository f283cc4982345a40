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

#include "swingcap/capturability.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>

#include "swingcap/io.hpp"
#include "swingcap/lipm.hpp"

namespace swingcap {

namespace {

constexpr double kSequenceSlack = 1e-12;  // ulp allowance at the reach bound
constexpr double kTieTol = 1e-12;
constexpr double kUnconstrainedSpan = 20.0;  // tau_max = a + span covers every interior optimum
constexpr int kRejectionSamples = 10000;

// N-step disturbance with k = 1. The inner alternating sum telescopes:
// s_i = tau_i^a - s_{i-1}.
double objective_unit(double a, const double* taus, int n) {
  double s = 0.0;
  double total_time = 0.0;
  double d = 0.0;
  for (int i = 0; i < n; ++i) {
    s = std::pow(taus[i], a) - s;
    total_time += taus[i];
    d += s * std::exp(-total_time);
  }
  return d;
}

double objective_unit(double a, const Eigen::VectorXd& taus) {
  return objective_unit(a, taus.data(), static_cast<int>(taus.size()));
}

void validate_sequence(const SwingKernel& kernel, const StepSequence& seq) {
  validate(kernel);
  if (seq.size() < 1) {
    throw std::invalid_argument("step sequence must contain at least one step");
  }
  const double tau_max = kernel.tau_max();
  for (int i = 0; i < seq.size(); ++i) {
    const double tau = seq.taus[i];
    if (!std::isfinite(tau) || tau < 0.0) {
      throw std::invalid_argument("step times must be finite and non-negative");
    }
    if (tau > tau_max * (1.0 + kSequenceSlack)) {
      throw ReachExceeded("step time exceeds kernel reach limit");
    }
  }
  if (!(seq.taus[0] > 0.0)) {
    throw std::invalid_argument("the first step time must be non-zero");
  }
}

struct Candidate {
  Eigen::VectorXd x;
  double f = -std::numeric_limits<double>::infinity();  // maximization value
};

bool lexicographic_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

// Maximization best-of with deterministic lexicographic tie-breaking. The
// stored f always belongs to the stored x.
void consider(Candidate& best, const Eigen::VectorXd& x, double f) {
  if (best.x.size() == 0) {
    best = {x, f};
    return;
  }
  const double tol = kTieTol * std::max(1.0, std::abs(best.f));
  if (f > best.f + tol || (f >= best.f - tol && lexicographic_less(x, best.x))) {
    best = {x, f};
  }
}

std::vector<Eigen::VectorXd> make_starts(const Eigen::VectorXd& lower,
                                         const Eigen::VectorXd& upper,
                                         const SolverOptions& options) {
  const Eigen::Index n = lower.size();
  std::vector<Eigen::VectorXd> starts;
  starts.push_back((lower + upper) / 2.0);  // centroid

  const long corner_count = (n < 30) ? (1L << n) : 0;
  const long corner_budget = std::min<long>(corner_count, std::max(0, options.multistart - 4));
  for (long mask = 0; mask < corner_budget; ++mask) {
    Eigen::VectorXd corner(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      corner[i] = ((mask >> i) & 1) ? lower[i] : upper[i];
    }
    starts.push_back(corner);
  }

  std::mt19937 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (static_cast<int>(starts.size()) < options.multistart) {
    Eigen::VectorXd x(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      x[i] = lower[i] + unit(rng) * (upper[i] - lower[i]);
    }
    starts.push_back(x);
  }

  for (const auto& warm : options.warm_starts) {
    if (warm.size() == n) {
      starts.push_back(warm.cwiseMax(lower).cwiseMin(upper));
    }
  }
  return starts;
}

// Lattice scan (grid_points per axis, N <= 3) refined by a local descent.
template <class Objective>
void grid_polish(Candidate& best, const Objective& value_of,
                 const std::function<double(const Eigen::VectorXd&)>& nm_objective,
                 const Eigen::VectorXd& lower, const Eigen::VectorXd& upper,
                 const SolverOptions& options) {
  const Eigen::Index n = lower.size();
  if (n > 3 || options.grid_points < 2) return;

  const int g = options.grid_points;
  Eigen::VectorXd x(n);
  Candidate grid_best;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    for (Eigen::Index i = 0; i < n; ++i) {
      x[i] = lower[i] + (upper[i] - lower[i]) * idx[static_cast<std::size_t>(i)] / (g - 1);
    }
    const double f = value_of(x);
    if (f > grid_best.f) grid_best = {x, f};

    Eigen::Index carry = 0;
    while (carry < n) {
      if (++idx[static_cast<std::size_t>(carry)] < g) break;
      idx[static_cast<std::size_t>(carry)] = 0;
      ++carry;
    }
    if (carry == n) break;
  }
  if (!grid_best.x.size()) return;

  consider(best, grid_best.x, grid_best.f);
  const NelderMeadResult refined =
      nelder_mead_minimize(nm_objective, grid_best.x, lower, upper, options.nm);
  consider(best, refined.x, value_of(refined.x));
}

Regime classify_box_solution(const Eigen::VectorXd& taus, double tau_max, double tau_floor,
                             double tol) {
  int upper = 0;
  int lower = 0;
  for (Eigen::Index i = 0; i < taus.size(); ++i) {
    if (taus[i] >= tau_max * (1.0 - tol)) {
      ++upper;
    } else if (i == 0 ? taus[i] <= tau_floor + tau_max * tol : taus[i] <= tau_max * tol) {
      ++lower;
    }
  }
  if (upper == taus.size()) return Regime::StepLength;
  if (upper == 0 && lower == 0) return Regime::StepTime;
  return Regime::Mixed;
}

// The interior regime is detected by value, not by bound activity: right at
// the transition the reach constraint passes through the flat unconstrained
// maximum, where activity margins are ill-conditioned but the objective gap
// is not. Below the transition the unconstrained arg-max itself is a feasible
// candidate, so best_f matches the reference bit-exact.
Regime classify_ratio_solution(const Eigen::VectorXd& taus, double a, double best_f,
                               double f_unconstrained, double rho, double tol) {
  if (best_f >= f_unconstrained - 1e-15 * std::max(1.0, f_unconstrained)) {
    return Regime::StepTime;
  }
  const double active_tol = std::max(tol, 1e-7);
  int active = 0;
  for (Eigen::Index i = 0; i < taus.size(); ++i) {
    const double ratio = std::pow(taus[i], a) / best_f;
    if (ratio >= rho * (1.0 - active_tol)) ++active;
  }
  return active == taus.size() ? Regime::StepLength : Regime::Mixed;
}

// Largest equal-step solution with every reach constraint active:
// sigma(t) = sum over odd i <= N of e^(-i t) solves sigma(t) = 1/rho.
std::optional<double> equal_step_active_root(int n_steps, double rho, double t_hi) {
  auto sigma = [n_steps](double t) {
    double s = 0.0;
    for (int i = 1; i <= n_steps; i += 2) s += std::exp(-i * t);
    return s;
  };
  const double target = 1.0 / rho;
  if (sigma(0.0) <= target) return std::nullopt;  // feasible set empty (or marginal)
  double hi = t_hi;
  while (sigma(hi) > target) hi *= 2.0;
  double lo = 0.0;
  for (int it = 0; it < 200 && (hi - lo) > 1e-15 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (sigma(mid) > target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Eigen::VectorXd step_lengths(const SwingKernel& kernel, const StepSequence& seq) {
  validate_sequence(kernel, seq);
  Eigen::VectorXd lengths(seq.size());
  for (int i = 0; i < seq.size(); ++i) {
    lengths[i] = kernel.k * std::pow(seq.taus[i], kernel.a);
  }
  return lengths;
}

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::StepTime: return "time";
    case Regime::StepLength: return "length";
    case Regime::Mixed: return "mixed";
    case Regime::Infeasible: return "infeasible";
  }
  return "unknown";
}

double disturbance_of_sequence(const SwingKernel& kernel, const StepSequence& seq) {
  validate_sequence(kernel, seq);
  return kernel.k * objective_unit(kernel.a, seq.taus);
}

double forward_check(const SwingKernel& kernel, const StepSequence& seq, double d) {
  validate_sequence(kernel, seq);
  if (!std::isfinite(d)) {
    throw std::invalid_argument("forward_check: disturbance must be finite");
  }
  double x_ic = d;
  double stance = 0.0;      // current stance ankle
  double trailing = 0.0;    // foot that will make the next step
  for (int i = 0; i < seq.size(); ++i) {
    x_ic = evolve_icp(x_ic, stance, seq.taus[i]);
    const double length = kernel.k * std::pow(seq.taus[i], kernel.a);
    const double landed = trailing + length;
    trailing = stance;
    stance = landed;
  }
  return std::abs(x_ic - stance);
}

OneStepOptimum one_step_analytic(const SwingKernel& kernel) {
  validate(kernel);
  const double tau_opt = std::min(kernel.a, kernel.tau_max());
  return {tau_opt, kernel.k * std::pow(tau_opt, kernel.a) * std::exp(-tau_opt)};
}

CapturabilityResult max_disturbance(const SwingKernel& kernel, int n_steps,
                                    const SolverOptions& options) {
  validate(kernel);
  if (n_steps < 1) {
    throw std::invalid_argument("max_disturbance: n_steps must be >= 1");
  }

  CapturabilityResult result;
  const double tau_max = kernel.tau_max();
  if (tau_max < options.tau_floor) {
    result.regime = Regime::Infeasible;  // empty feasible box
    return result;
  }

  const Eigen::Index n = n_steps;
  Eigen::VectorXd lower = Eigen::VectorXd::Zero(n);
  lower[0] = options.tau_floor;
  const Eigen::VectorXd upper = Eigen::VectorXd::Constant(n, tau_max);

  const double a = kernel.a;
  auto value_of = [a, &lower, &upper](const Eigen::VectorXd& x) {
    const Eigen::VectorXd c = x.cwiseMax(lower).cwiseMin(upper);
    return objective_unit(a, c);
  };
  std::function<double(const Eigen::VectorXd&)> nm_objective =
      [&value_of](const Eigen::VectorXd& x) { return -value_of(x); };

  Candidate best;
  for (const auto& start : make_starts(lower, upper, options)) {
    const NelderMeadResult run = nelder_mead_minimize(nm_objective, start, lower, upper, options.nm);
    consider(best, run.x, value_of(run.x));
  }
  grid_polish(best, value_of, nm_objective, lower, upper, options);

  Regime regime =
      classify_box_solution(best.x, tau_max, options.tau_floor, options.bound_activity_tol);
  if (regime == Regime::Mixed) {
    // Re-solve from the optimum with tighter tolerances before reporting Mixed.
    NelderMeadOptions tight = options.nm;
    tight.x_tol *= 0.01;
    tight.f_tol *= 0.01;
    const NelderMeadResult rerun = nelder_mead_minimize(nm_objective, best.x, lower, upper, tight);
    consider(best, rerun.x, value_of(rerun.x));
    regime = classify_box_solution(best.x, tau_max, options.tau_floor, options.bound_activity_tol);
  }

  result.sequence = StepSequence(best.x);
  result.objective = kernel.k * best.f;
  result.d = result.objective;
  result.regime = regime;
  return result;
}

CapturabilityResult min_actuation(const RobotSpec& spec, double d, int n_steps,
                                  const SolverOptions& options) {
  if (!(spec.a > 0.0) || !(spec.l_max > 0.0) || !(spec.k_max > 0.0)) {
    throw std::invalid_argument("min_actuation: robot spec must be positive");
  }
  if (!(d > 0.0) || !std::isfinite(d)) {
    throw std::invalid_argument("min_actuation: disturbance must be positive and finite");
  }
  if (n_steps < 1) {
    throw std::invalid_argument("min_actuation: n_steps must be >= 1");
  }

  const double a = spec.a;
  const double rho = spec.l_max / d;
  CapturabilityResult result;
  result.d = d;

  // Unconstrained reference optimum; any feasible point obeys
  // tau_i^a <= rho * f_obj <= rho * f_unc.
  SwingKernel wide{1.0, a, std::pow(a + kUnconstrainedSpan, a)};
  const CapturabilityResult unconstrained = max_disturbance(wide, n_steps, options);
  const double f_unc = unconstrained.objective;

  const double tau_cap =
      std::min(std::pow(rho * f_unc, 1.0 / a), a + kUnconstrainedSpan);
  if (!(tau_cap > options.tau_floor)) {
    result.regime = Regime::Infeasible;
    return result;
  }

  const Eigen::Index n = n_steps;
  Eigen::VectorXd lower = Eigen::VectorXd::Zero(n);
  lower[0] = options.tau_floor;
  const Eigen::VectorXd upper = Eigen::VectorXd::Constant(n, tau_cap);

  auto objective_of = [a](const Eigen::VectorXd& x) { return objective_unit(a, x); };
  auto violation_of = [a, rho](const Eigen::VectorXd& x, double f) {
    if (!(f > 0.0)) return std::numeric_limits<double>::infinity();
    double viol = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      viol += std::max(0.0, std::pow(x[i], a) / f - rho);
    }
    return viol;
  };
  // Feasible points score -f_obj; infeasible points sit on a high penalty
  // shelf so the simplex slides back into the feasible set.
  auto value_of = [&](const Eigen::VectorXd& x) {
    const Eigen::VectorXd c = x.cwiseMax(lower).cwiseMin(upper);
    const double f = objective_of(c);
    const double viol = violation_of(c, f);
    if (viol > 0.0) {
      if (!std::isfinite(viol)) return -(10.0 + c.sum());
      return -(10.0 + 1e3 * viol / rho);
    }
    return f;
  };
  std::function<double(const Eigen::VectorXd&)> nm_objective =
      [&value_of](const Eigen::VectorXd& x) { return -value_of(x); };

  Candidate best;
  bool found_feasible = false;
  auto consider_feasible = [&](const Eigen::VectorXd& x) {
    const Eigen::VectorXd c = x.cwiseMax(lower).cwiseMin(upper);
    const double f = objective_of(c);
    if (violation_of(c, f) <= rho * 1e-12) {
      found_feasible = true;
      consider(best, c, f);
    }
  };

  std::vector<Eigen::VectorXd> starts = make_starts(lower, upper, options);
  if ((unconstrained.sequence.taus.array() <= tau_cap).all()) {
    starts.push_back(unconstrained.sequence.taus);
  }
  const std::optional<double> corner =
      equal_step_active_root(n_steps, rho, std::max(tau_cap, 1.0));
  if (corner && *corner >= options.tau_floor) {
    starts.push_back(Eigen::VectorXd::Constant(n, *corner));
  }
  for (double fraction : {0.05, 0.15, 0.3}) {
    starts.push_back(lower.cwiseMax(Eigen::VectorXd::Constant(n, fraction * tau_cap)));
  }

  for (const auto& start : starts) {
    consider_feasible(start);
    const NelderMeadResult run = nelder_mead_minimize(nm_objective, start, lower, upper, options.nm);
    consider_feasible(run.x);
  }
  grid_polish(best, value_of, nm_objective, lower, upper, options);
  if (best.x.size() &&
      violation_of(best.x, objective_of(best.x)) <= rho * 1e-12 && best.f > 0.0) {
    found_feasible = true;
  }

  if (!found_feasible) {
    // Rejection sampling plus corner checks before declaring the set empty.
    std::mt19937 rng(options.seed + 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int s = 0; s < kRejectionSamples && !found_feasible; ++s) {
      Eigen::VectorXd x(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        x[i] = lower[i] + unit(rng) * (upper[i] - lower[i]);
      }
      consider_feasible(x);
    }
    if (!found_feasible) {
      result.regime = Regime::Infeasible;
      return result;
    }
  }

  Regime regime =
      classify_ratio_solution(best.x, a, best.f, f_unc, rho, options.bound_activity_tol);
  if (regime == Regime::Mixed) {
    NelderMeadOptions tight = options.nm;
    tight.x_tol *= 0.01;
    tight.f_tol *= 0.01;
    const NelderMeadResult rerun = nelder_mead_minimize(nm_objective, best.x, lower, upper, tight);
    consider_feasible(rerun.x);
    regime =
        classify_ratio_solution(best.x, a, best.f, f_unc, rho, options.bound_activity_tol);
  }

  result.sequence = StepSequence(best.x);
  result.objective = best.f;
  result.k_min = d / best.f;
  result.regime = result.k_min > spec.k_max * (1.0 + 1e-12) ? Regime::Infeasible : regime;
  return result;
}

double decision_boundary(const RobotSpec& spec, int n_steps, const SolverOptions& options) {
  if (n_steps < 1) {
    throw std::invalid_argument("decision_boundary: n_steps must be >= 1");
  }
  SolverOptions tight = options;
  tight.bound_activity_tol = 1e-9;
  // The transition is a property of the feasible-set geometry, not of the
  // actuation limit; lift k_max so feasibility alone decides.
  RobotSpec unlimited = spec;
  unlimited.k_max = std::numeric_limits<double>::infinity();

  auto is_interior = [&](double d) {
    return min_actuation(unlimited, d, n_steps, tight).regime == Regime::StepTime;
  };

  const double d_ceiling = spec.l_max * ((n_steps + 1) / 2) * 10.0;
  double lo = spec.l_max * 1e-6;
  for (int tries = 0; tries < 8 && !is_interior(lo); ++tries) lo *= 0.1;
  if (!is_interior(lo)) {
    return lo;  // degenerate: never interior
  }

  double hi = lo;
  bool found = false;
  while (hi < d_ceiling) {
    hi *= 2.0;
    if (!is_interior(hi)) {
      found = true;
      break;
    }
    lo = hi;
  }
  if (!found) {
    return std::numeric_limits<double>::infinity();
  }

  const double tol = 1e-8 * std::max(1.0, spec.l_max);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (is_interior(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

PushRecoveryPlanner::PushRecoveryPlanner(RobotSpec spec, double k_available,
                                         SolverOptions options)
    : spec_(spec), k_available_(k_available), options_(std::move(options)) {
  if (!(spec_.a > 0.0) || !(spec_.l_max > 0.0) || !(k_available_ > 0.0)) {
    throw std::invalid_argument("PushRecoveryPlanner: spec and k_available must be positive");
  }
}

double PushRecoveryPlanner::max_disturbance_for(int n_steps) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = dmax_cache_.find(n_steps);
  if (it == dmax_cache_.end()) {
    SwingKernel kernel{k_available_, spec_.a, spec_.l_max};
    it = dmax_cache_.emplace(n_steps, max_disturbance(kernel, n_steps, options_)).first;
  }
  return it->second.d;
}

double PushRecoveryPlanner::boundary_for(int n_steps) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = boundary_cache_.find(n_steps);
  if (it == boundary_cache_.end()) {
    it = boundary_cache_.emplace(n_steps, decision_boundary(spec_, n_steps, options_)).first;
  }
  return it->second;
}

const CapturabilityResult& PushRecoveryPlanner::unconstrained_for(int n_steps) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = unconstrained_cache_.find(n_steps);
  if (it == unconstrained_cache_.end()) {
    SwingKernel wide{1.0, spec_.a, std::pow(spec_.a + kUnconstrainedSpan, spec_.a)};
    it = unconstrained_cache_.emplace(n_steps, max_disturbance(wide, n_steps, options_)).first;
  }
  return it->second;
}

StepPlan PushRecoveryPlanner::plan(double d, int max_steps) const {
  if (d < 0.0 || !std::isfinite(d)) {
    throw std::invalid_argument("plan: disturbance must be non-negative and finite");
  }
  if (max_steps < 1) {
    throw std::invalid_argument("plan: step budget must be >= 1");
  }

  StepPlan plan;
  plan.d = d;
  if (d == 0.0) {
    plan.capturable = true;  // already captured, no step needed
    plan.regime = Regime::StepTime;
    return plan;
  }

  for (int n = 1; n <= max_steps; ++n) {
    if (d > max_disturbance_for(n) + 1e-9) continue;

    Eigen::VectorXd taus;
    double k_used = 0.0;
    Regime regime = Regime::StepTime;
    if (d < boundary_for(n)) {
      // Interior regime: the optimal timing is the unconstrained optimum and
      // the actuation scales down to meet d exactly.
      const CapturabilityResult& unconstrained = unconstrained_for(n);
      taus = unconstrained.sequence.taus;
      k_used = d / objective_unit(spec_.a, taus);
    } else {
      RobotSpec bounded = spec_;
      bounded.k_max = k_available_ * (1.0 + 1e-6);
      const CapturabilityResult res = min_actuation(bounded, d, n, options_);
      if (res.regime == Regime::Infeasible) continue;
      taus = res.sequence.taus;
      k_used = d / objective_unit(spec_.a, taus);
      regime = res.regime;
    }

    plan.capturable = true;
    plan.n_steps = n;
    plan.regime = regime;
    plan.k_used = k_used;
    double cumulative = 0.0;
    for (Eigen::Index i = 0; i < taus.size(); ++i) {
      cumulative += taus[i];
      plan.steps.push_back({taus[i], k_used * std::pow(taus[i], spec_.a), cumulative});
    }
    return plan;
  }

  plan.capturable = false;
  plan.regime = Regime::Infeasible;
  return plan;
}

StepPlan plan_steps(const RobotSpec& spec, double k_available, double d, int max_steps,
                    const SolverOptions& options) {
  return PushRecoveryPlanner(spec, k_available, options).plan(d, max_steps);
}

void write_plan_csv(std::ostream& out, const StepPlan& plan) {
  out << "step_index,tau,length,cumulative_time\n";
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const PlanStep& s = plan.steps[i];
    out << (i + 1) << ',' << io::format_double(s.tau) << ',' << io::format_double(s.length)
        << ',' << io::format_double(s.cumulative_time) << '\n';
  }
}

}  // namespace swingcap
