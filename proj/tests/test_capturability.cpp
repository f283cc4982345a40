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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include "swingcap/capturability.hpp"

using namespace swingcap;

namespace {

StepSequence make_seq(std::initializer_list<double> taus) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(taus.size()));
  Eigen::Index i = 0;
  for (double t : taus) v[i++] = t;
  return StepSequence(v);
}

// Brute-force scan oracle for the 1-step optimum.
std::pair<double, double> grid_scan_one_step(const SwingKernel& kernel, int points) {
  double best_tau = 0.0, best_d = -1.0;
  const double tau_max = kernel.tau_max();
  for (int i = 0; i <= points; ++i) {
    const double tau = tau_max * i / points;
    const double d = kernel.k * std::pow(tau, kernel.a) * std::exp(-tau);
    if (d > best_d) {
      best_d = d;
      best_tau = tau;
    }
  }
  return {best_tau, best_d};
}

}  // namespace

TEST_CASE("disturbance_of_sequence closed-form examples") {
  // One step: d = f(tau) e^-tau.
  CHECK(disturbance_of_sequence(SwingKernel{1.0, 1.66, 10.0}, make_seq({1.0})) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  // Equal steps cancel the inner sum.
  CHECK(disturbance_of_sequence(SwingKernel{1.0, 2.0, 10.0}, make_seq({1.0, 1.0})) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  // Hand-evaluated two-step case.
  CHECK(disturbance_of_sequence(SwingKernel{1.0, 1.0, 10.0}, make_seq({1.0, 2.0})) ==
        doctest::Approx(std::exp(-1.0) + std::exp(-3.0)).epsilon(1e-14));
}

TEST_CASE("sequence validation") {
  const SwingKernel kernel{1.0, 1.66, 1.0};
  CHECK_THROWS_AS(disturbance_of_sequence(kernel, make_seq({0.0})), std::invalid_argument);
  CHECK_THROWS_AS(disturbance_of_sequence(kernel, make_seq({1.5})), ReachExceeded);
  CHECK_THROWS_AS(disturbance_of_sequence(kernel, make_seq({0.5, -0.1})), std::invalid_argument);
  CHECK_THROWS_AS(disturbance_of_sequence(kernel, StepSequence{}), std::invalid_argument);
}

TEST_CASE("disturbance is linear in k") {
  const StepSequence seq = make_seq({0.4, 0.9, 0.2});
  const double base = disturbance_of_sequence(SwingKernel{1.0, 1.66, 10.0}, seq);
  for (double k : {0.3, 2.0, 7.5}) {
    CHECK(disturbance_of_sequence(SwingKernel{k, 1.66, 10.0 * k}, seq) ==
          doctest::Approx(k * base).epsilon(1e-13));
  }
}

TEST_CASE("forward_check is the zero-residual oracle for the closed form") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double k = 0.1 * std::pow(100.0, unit(rng));
    const double a = 1.0 + 2.0 * unit(rng);
    const double tau_max = 0.3 + 1.2 * unit(rng);
    const SwingKernel kernel{k, a, k * std::pow(tau_max, a)};
    const int n = 1 + static_cast<int>(unit(rng) * 5.0) % 5;
    Eigen::VectorXd taus(n);
    for (int i = 0; i < n; ++i) taus[i] = (0.01 + 0.99 * unit(rng)) * tau_max;
    const StepSequence seq(taus);
    const double d = disturbance_of_sequence(kernel, seq);
    CHECK(forward_check(kernel, seq, d) < 1e-10);
  }
}

TEST_CASE("regrouped-by-length evaluation agrees and stays positive") {
  // Collecting the coefficient of each step length gives yet another route:
  // d = sum_j l_j * (e^-T_j - e^-T_{j+1} + e^-T_{j+2} - ...), an alternating
  // sum of decreasing positives, so d > 0 for any valid sequence.
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const SwingKernel kernel{0.2 + 2.0 * unit(rng), 1.0 + 2.0 * unit(rng), 50.0};
    const int n = 1 + static_cast<int>(unit(rng) * 4.9999);
    Eigen::VectorXd taus(n);
    for (int i = 0; i < n; ++i) taus[i] = 0.02 + 1.5 * unit(rng);

    std::vector<double> cumulative(static_cast<std::size_t>(n));
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      total += taus[i];
      cumulative[static_cast<std::size_t>(i)] = total;
    }
    double regrouped = 0.0;
    for (int j = 0; j < n; ++j) {
      double weight = 0.0;
      double sign = 1.0;
      for (int i = j; i < n; ++i) {
        weight += sign * std::exp(-cumulative[static_cast<std::size_t>(i)]);
        sign = -sign;
      }
      regrouped += eval(kernel, taus[j]) * weight;
    }

    const double direct = disturbance_of_sequence(kernel, StepSequence(taus));
    CHECK(direct == doctest::Approx(regrouped).epsilon(1e-11));
    CHECK(direct > 0.0);
  }
}

TEST_CASE("forward_check residual is linear in the disturbance error") {
  const SwingKernel kernel{1.0, 1.66, 10.0};
  const StepSequence seq = make_seq({0.7, 1.1, 0.5});
  const double d = disturbance_of_sequence(kernel, seq);
  const double total_time = 0.7 + 1.1 + 0.5;
  CHECK(forward_check(kernel, seq, d + 0.01) ==
        doctest::Approx(0.01 * std::exp(total_time)).epsilon(1e-10));
  CHECK(forward_check(kernel, seq, d - 0.01) ==
        doctest::Approx(0.01 * std::exp(total_time)).epsilon(1e-10));
}

TEST_CASE("one_step_analytic against a fine grid scan") {
  for (const SwingKernel& kernel :
       {SwingKernel{1.0, 1.66, 100.0}, SwingKernel{1.0, 1.0, 0.5},
        SwingKernel{2.5, 2.0, 3.0}, SwingKernel{0.4, 1.2, 0.9}}) {
    const OneStepOptimum opt = one_step_analytic(kernel);
    const auto [scan_tau, scan_d] = grid_scan_one_step(kernel, 1000000);
    CHECK(opt.d_max == doctest::Approx(scan_d).epsilon(1e-9));
    CHECK(opt.tau_opt == doctest::Approx(scan_tau).epsilon(1e-4));
    CHECK(opt.d_max >= scan_d - 1e-12);
  }

  // Interior optimum at tau = a.
  const OneStepOptimum interior = one_step_analytic(SwingKernel{1.0, 1.66, 100.0});
  CHECK(interior.tau_opt == doctest::Approx(1.66).epsilon(1e-15));
  CHECK(interior.d_max == doctest::Approx(0.441).epsilon(1e-3));

  // Clamped: tau_max = 0.5 < a = 1.
  const OneStepOptimum clamped = one_step_analytic(SwingKernel{1.0, 1.0, 0.5});
  CHECK(clamped.tau_opt == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(clamped.d_max == doctest::Approx(0.5 * std::exp(-0.5)).epsilon(1e-14));

  // Vanishing actuation resists nothing.
  CHECK(one_step_analytic(SwingKernel{1e-12, 1.66, 1.0}).d_max < 1e-11);
}

TEST_CASE("max_disturbance matches the one-step closed form") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 12; ++trial) {
    const SwingKernel kernel{0.2 + 3.0 * unit(rng), 1.0 + 2.0 * unit(rng),
                             0.3 + 4.0 * unit(rng)};
    const CapturabilityResult res = max_disturbance(kernel, 1);
    const OneStepOptimum opt = one_step_analytic(kernel);
    CHECK(res.d == doctest::Approx(opt.d_max).epsilon(1e-8));
    CHECK(res.sequence.taus[0] == doctest::Approx(opt.tau_opt).epsilon(1e-6));
  }
}

TEST_CASE("max_disturbance regimes for two steps") {
  // Wide reach: the interior optimum of the unconstrained problem.
  const CapturabilityResult wide = max_disturbance(SwingKernel{1.0, 1.66, 9.0}, 2);
  CHECK(wide.regime == Regime::StepTime);
  CHECK(wide.d == doctest::Approx(0.489139914).epsilon(1e-7));
  CHECK(wide.sequence.taus[0] == doctest::Approx(1.3232661).epsilon(1e-5));
  CHECK(wide.sequence.taus[1] == doctest::Approx(2.5240676).epsilon(1e-5));

  // Tight reach: both steps pinned at the bound.
  const CapturabilityResult tight = max_disturbance(SwingKernel{1.0, 1.66, 1.0}, 2);
  CHECK(tight.regime == Regime::StepLength);
  CHECK(tight.sequence.taus[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(tight.sequence.taus[1] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(tight.d == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));

  // In-between reach pins only the later step.
  const CapturabilityResult middle = max_disturbance(SwingKernel{1.0, 1.66, 2.5}, 2);
  CHECK(middle.regime == Regime::Mixed);
  CHECK(middle.sequence.taus[1] ==
        doctest::Approx(SwingKernel{1.0, 1.66, 2.5}.tau_max()).epsilon(1e-9));
}

TEST_CASE("max_disturbance is monotone in k, l_max and n") {
  double prev = 0.0;
  for (double k : {0.5, 1.0, 2.0, 4.0}) {
    const double d = max_disturbance(SwingKernel{k, 1.66, 1.5}, 2).d;
    CHECK(d >= prev - 1e-12);
    prev = d;
  }
  prev = 0.0;
  for (double l : {0.5, 1.0, 2.0, 4.0}) {
    const double d = max_disturbance(SwingKernel{1.0, 1.66, l}, 2).d;
    CHECK(d >= prev - 1e-12);
    prev = d;
  }
  prev = 0.0;
  for (int n = 1; n <= 4; ++n) {
    const double d = max_disturbance(SwingKernel{1.0, 1.66, 1.5}, n).d;
    CHECK(d >= prev - 1e-12);
    prev = d;
  }
}

TEST_CASE("max_disturbance with an empty feasible box") {
  SolverOptions options;
  options.tau_floor = 0.5;
  const CapturabilityResult res = max_disturbance(SwingKernel{1.0, 1.0, 0.1}, 1, options);
  CHECK(res.regime == Regime::Infeasible);
}

TEST_CASE("max_disturbance is deterministic") {
  const CapturabilityResult a = max_disturbance(SwingKernel{0.7, 1.66, 1.3}, 3);
  const CapturabilityResult b = max_disturbance(SwingKernel{0.7, 1.66, 1.3}, 3);
  CHECK(a.d == b.d);
  CHECK((a.sequence.taus.array() == b.sequence.taus.array()).all());
}

TEST_CASE("min_actuation one-step analytic case") {
  // a=1, l_max=10, d=1: constraint e^tau <= 10 leaves the interior optimum
  // tau = 1 feasible, so f_obj = 1/e and k_min = e.
  const CapturabilityResult res = min_actuation(RobotSpec{1.0, 10.0, 100.0}, 1.0, 1);
  CHECK(res.regime == Regime::StepTime);
  CHECK(res.k_min == doctest::Approx(std::exp(1.0)).epsilon(1e-6));
  CHECK(res.sequence.taus[0] == doctest::Approx(1.0).epsilon(1e-6));

  // Constrained grid-search oracle for the same problem.
  double best = 0.0;
  for (int i = 1; i <= 200000; ++i) {
    const double tau = 4.0 * i / 200000;
    const double f = tau * std::exp(-tau);
    if (std::exp(tau) <= 10.0 && f > best) best = f;
  }
  CHECK(res.objective == doctest::Approx(best).epsilon(1e-6));
}

TEST_CASE("min_actuation infeasible when l_max equals d") {
  CHECK(min_actuation(RobotSpec{1.66, 1.0, 1e9}, 1.0, 1).regime == Regime::Infeasible);
  CHECK(min_actuation(RobotSpec{1.66, 1.0, 1e9}, 1.0, 2).regime == Regime::Infeasible);
  CHECK(min_actuation(RobotSpec{1.0, 2.0, 1e9}, 2.0, 2).regime == Regime::Infeasible);
}

TEST_CASE("min_actuation vanishing disturbance") {
  const CapturabilityResult res = min_actuation(RobotSpec{1.66, 1.0, 10.0}, 1e-9, 2);
  CHECK(res.regime == Regime::StepTime);
  CHECK(res.k_min < 1e-8);
  // Sequence sits at the unconstrained optimum.
  CHECK(res.sequence.taus[0] == doctest::Approx(1.3232661).epsilon(1e-5));
  CHECK(res.sequence.taus[1] == doctest::Approx(2.5240676).epsilon(1e-5));
}

TEST_CASE("min_actuation two-step length regime has a closed form") {
  // With both reach constraints active the steps are equal and
  // e^-tau = d / l_max, so k_min = l_max / ln(l_max/d)^a.
  const double d = 0.5, l_max = 1.0, a = 1.66;
  const CapturabilityResult res = min_actuation(RobotSpec{a, l_max, 100.0}, d, 2);
  CHECK(res.regime == Regime::StepLength);
  const double tau = std::log(l_max / d);
  CHECK(res.sequence.taus[0] == doctest::Approx(tau).epsilon(1e-9));
  CHECK(res.sequence.taus[1] == doctest::Approx(tau).epsilon(1e-9));
  CHECK(res.k_min == doctest::Approx(l_max / std::pow(tau, a)).epsilon(1e-9));
}

TEST_CASE("min_actuation mixed band between the regimes") {
  // Between the interior and the all-at-bound regimes only the later step's
  // reach constraint is active.
  const CapturabilityResult res = min_actuation(RobotSpec{1.66, 1.0, 100.0}, 0.2, 2);
  CHECK(res.regime == Regime::Mixed);
  CHECK(res.k_min == doctest::Approx(0.432052).epsilon(1e-4));
}

TEST_CASE("min_actuation respects k_max") {
  // Needs k about 1.84 but only 1.0 is available.
  const CapturabilityResult res = min_actuation(RobotSpec{1.66, 1.0, 1.0}, 0.5, 2);
  CHECK(res.regime == Regime::Infeasible);
  CHECK(res.k_min > 1.0);
  CHECK_THROWS_AS(min_actuation(RobotSpec{1.66, 1.0, 1.0}, -0.5, 2), std::invalid_argument);
  CHECK_THROWS_AS(min_actuation(RobotSpec{1.66, 1.0, 1.0}, 0.0, 2), std::invalid_argument);
}

TEST_CASE("decision boundary closed form for one step") {
  CHECK(decision_boundary(RobotSpec{1.0, 10.0, 1.0}, 1) ==
        doctest::Approx(10.0 * std::exp(-1.0)).epsilon(1e-7));
  CHECK(decision_boundary(RobotSpec{1.66, 1.0, 1.0}, 1) ==
        doctest::Approx(std::exp(-1.66)).epsilon(1e-6));
}

TEST_CASE("decision boundary separates interior from bound-active optima") {
  const RobotSpec spec{1.66, 1.0, 1e9};
  const double boundary = decision_boundary(spec, 2);
  // The interior leaves when the unconstrained optimum first touches the
  // constraint: d = l_max * f* / max(tau*)^a.
  const double predicted = 1.0 * 0.489139914 / std::pow(2.5240675, 1.66);
  CHECK(boundary == doctest::Approx(predicted).epsilon(1e-4));

  CHECK(min_actuation(spec, boundary * 0.98, 2).regime == Regime::StepTime);
  CHECK(min_actuation(spec, boundary * 1.02, 2).regime != Regime::StepTime);
}

TEST_CASE("planner finds the least-step plan and replays exactly") {
  // l_max/k = 2 so that every extra step genuinely buys capturability.
  const RobotSpec spec{1.66, 2.0, 1.0};
  PushRecoveryPlanner planner(spec, 1.0);

  const StepPlan empty = planner.plan(0.0, 4);
  CHECK(empty.capturable);
  CHECK(empty.steps.empty());

  const double d1max = planner.max_disturbance_for(1);
  const StepPlan one = planner.plan(d1max * 0.95, 4);
  CHECK(one.capturable);
  CHECK(one.n_steps == 1);

  const double d2max = planner.max_disturbance_for(2);
  CHECK(d2max > d1max);
  const StepPlan two = planner.plan(0.5 * (d1max + d2max), 4);
  CHECK(two.capturable);
  CHECK(two.n_steps == 2);

  // Replay every plan through the recursion oracle.
  for (const StepPlan* plan : {&one, &two}) {
    Eigen::VectorXd taus(static_cast<Eigen::Index>(plan->steps.size()));
    for (std::size_t i = 0; i < plan->steps.size(); ++i) {
      taus[static_cast<Eigen::Index>(i)] = plan->steps[i].tau;
    }
    const SwingKernel used{plan->k_used, spec.a, spec.l_max};
    CHECK(forward_check(used, StepSequence(taus), plan->d) < 1e-8);
    CHECK(plan->k_used <= 1.0 + 1e-6);
    for (const auto& step : plan->steps) {
      CHECK(step.length <= spec.l_max * (1.0 + 1e-9));
    }
  }

  const double d4max = planner.max_disturbance_for(4);
  CHECK_FALSE(planner.plan(d4max + 1e-3, 4).capturable);
  CHECK(planner.plan(d4max - 1e-6, 4).capturable);
}

TEST_CASE("small disturbances plan interior one-step timing") {
  // Below the decision boundary the plan keeps the unconstrained timing and
  // scales the actuation down, so tau equals the kernel exponent and the
  // capture equation holds exactly.
  const RobotSpec spec{1.66, 2.0, 1.0};
  PushRecoveryPlanner planner(spec, 1.0);
  const double boundary = planner.boundary_for(1);
  CHECK(boundary == doctest::Approx(2.0 * std::exp(-1.66)).epsilon(1e-6));

  const double d = 0.3;  // below the boundary, below d_1max
  REQUIRE(d < boundary);
  const StepPlan plan = planner.plan(d, 4);
  REQUIRE(plan.capturable);
  CHECK(plan.n_steps == 1);
  CHECK(plan.regime == Regime::StepTime);
  CHECK(plan.steps[0].tau == doctest::Approx(1.66).epsilon(1e-6));
  CHECK(plan.k_used == doctest::Approx(d / (std::pow(1.66, 1.66) * std::exp(-1.66))).epsilon(1e-6));
  // tau is the tangency root: with k_used the one-step maximum equals d.
  CHECK(one_step_analytic(SwingKernel{plan.k_used, spec.a, spec.l_max}).d_max ==
        doctest::Approx(d).epsilon(1e-9));
}

TEST_CASE("planner instances can be shared across threads") {
  const RobotSpec spec{1.66, 1.5, 1.0};
  PushRecoveryPlanner planner(spec, 1.0);
  const StepPlan reference = planner.plan(0.35, 3);

  std::vector<std::thread> workers;
  std::array<StepPlan, 8> plans;
  for (std::size_t t = 0; t < plans.size(); ++t) {
    workers.emplace_back([&planner, &plans, t] { plans[t] = planner.plan(0.35, 3); });
  }
  for (auto& w : workers) w.join();

  for (const StepPlan& plan : plans) {
    CHECK(plan.capturable == reference.capturable);
    CHECK(plan.n_steps == reference.n_steps);
    CHECK(plan.k_used == reference.k_used);
    REQUIRE(plan.steps.size() == reference.steps.size());
    for (std::size_t i = 0; i < plan.steps.size(); ++i) {
      CHECK(plan.steps[i].tau == reference.steps[i].tau);
    }
  }
}

TEST_CASE("plan_steps wrapper and CSV export") {
  const StepPlan plan = plan_steps(RobotSpec{1.66, 1.0, 1.0}, 1.0, 0.3, 4);
  CHECK(plan.capturable);
  std::ostringstream out;
  write_plan_csv(out, plan);
  const std::string text = out.str();
  CHECK(text.rfind("step_index,tau,length,cumulative_time\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') ==
        1 + static_cast<long>(plan.steps.size()));
}

TEST_CASE("step_lengths evaluates the kernel per step") {
  const SwingKernel kernel{2.0, 2.0, 10.0};
  const Eigen::VectorXd lengths = step_lengths(kernel, make_seq({0.5, 1.0}));
  CHECK(lengths[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(lengths[1] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("regime names are stable") {
  CHECK(to_string(Regime::StepTime) == "time");
  CHECK(to_string(Regime::StepLength) == "length");
  CHECK(to_string(Regime::Mixed) == "mixed");
  CHECK(to_string(Regime::Infeasible) == "infeasible");
}
