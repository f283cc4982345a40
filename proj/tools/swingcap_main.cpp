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

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "swingcap/capturability.hpp"
#include "swingcap/io.hpp"
#include "swingcap/margin_graph.hpp"
#include "swingcap/normalization.hpp"
#include "swingcap/sweep.hpp"
#include "swingcap/swing_kernel.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNotCapturable = 2;

namespace fs = std::filesystem;
using namespace swingcap;

std::ofstream open_output(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  const fs::path path = dir / name;
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  return out;
}

// Shared solver/CLI knobs. SI lengths are converted at this boundary when a
// CoM height is given; everything past main() is dimensionless.
struct CommonArgs {
  double a = 1.66;
  double k = 1.0;
  double lmax = 1.0;
  double kmax = 1.0;
  double d = 0.0;
  std::string out;
  unsigned seed = 12345;
  double si_com_height = 0.0;
  double si_gravity = 9.81;

  SolverOptions solver() const {
    SolverOptions options;
    options.seed = seed;
    return options;
  }
  double to_dimensionless_length(double meters) const {
    if (si_com_height <= 0.0) return meters;
    return Normalization(si_com_height, si_gravity).length(meters);
  }
};

// Flat `key = value` config files: values fill in options that were not set
// on the command line, so flags override config and config overrides defaults.
void apply_config(CLI::App* cmd, const std::string& path) {
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path);
  for (const auto& [key, value] : io::read_config(in)) {
    CLI::Option* option = cmd->get_option_no_throw("--" + key);
    if (option == nullptr || key == "config") {
      throw std::invalid_argument("unknown config key '" + key + "' for subcommand " +
                                  cmd->get_name());
    }
    if (option->count() == 0) {
      option->add_result(value);
      option->run_callback();
    }
  }
}

void print_result_block(std::ostream& out, const CapturabilityResult& res, int n) {
  out << "d_max=" << io::format_double(res.d) << '\n'
      << "regime=" << to_string(res.regime) << '\n'
      << "N=" << n << '\n';
  if (res.sequence.size() > 0) {
    std::vector<double> taus(res.sequence.taus.begin(), res.sequence.taus.end());
    out << "tau=" << io::join_doubles(taus) << '\n';
  }
}

int run_sweep_cmd(const CommonArgs& args, int n_max, const std::string& k_range,
                  const std::string& l_range, bool svg) {
  SweepGrid grid = SweepGrid::defaults();
  grid.a = args.a;
  grid.n_max = n_max;
  auto parse_range = [](const std::string& text) {
    const std::vector<double> v = io::parse_double_list(text);
    if (v.size() != 3 || v[2] < 2) {
      throw std::invalid_argument("range must be 'lo,hi,count' with count >= 2");
    }
    return v;
  };
  if (!k_range.empty()) {
    const auto v = parse_range(k_range);
    grid.k_values = SweepGrid::log_spaced(v[0], v[1], static_cast<int>(v[2]));
  }
  if (!l_range.empty()) {
    const auto v = parse_range(l_range);
    grid.l_values = SweepGrid::linear_spaced(v[0], v[1], static_cast<int>(v[2]));
  }

  const SweepReport report = run_sweep(grid, args.solver());

  const fs::path dir = args.out.empty() ? fs::path(".") : fs::path(args.out);
  {
    auto out = open_output(dir, "sweep.csv");
    write_sweep_csv(out, report);
  }
  {
    auto out = open_output(dir, "increments.csv");
    write_increments_csv(out, report);
  }
  if (svg) {
    for (int n = 1; n <= grid.n_max; ++n) {
      auto out = open_output(dir, "heatmap_" + std::to_string(n) + ".svg");
      write_heatmap_svg(out, report, n);
    }
  }

  std::cout << "cells=" << report.cells.size() << '\n';
  for (const auto& inc : report.increments) {
    std::cout << "mean_increase_" << inc.n_from << "_to_" << inc.n_to << '='
              << io::format_double(inc.mean_pct) << "%\n";
  }
  return kExitOk;
}

int run_plan_cmd(const CommonArgs& args, int n_max) {
  const RobotSpec spec{args.a, args.to_dimensionless_length(args.lmax), args.k};
  PushRecoveryPlanner planner(spec, args.k, args.solver());
  const StepPlan plan = planner.plan(args.to_dimensionless_length(args.d), n_max);

  if (!plan.capturable) {
    std::cout << "NOT-CAPTURABLE\n";
    std::cout << "d=" << io::format_double(plan.d) << '\n'
              << "N_max=" << n_max << '\n'
              << "d_max=" << io::format_double(planner.max_disturbance_for(n_max)) << '\n';
    return kExitNotCapturable;
  }

  std::cout << "N=" << plan.n_steps << '\n'
            << "regime=" << to_string(plan.regime) << '\n'
            << "k_min=" << io::format_double(plan.k_used) << '\n'
            << "d=" << io::format_double(plan.d) << '\n';
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const PlanStep& s = plan.steps[i];
    std::cout << "step " << (i + 1) << ": tau=" << io::format_double(s.tau)
              << " length=" << io::format_double(s.length)
              << " t=" << io::format_double(s.cumulative_time) << '\n';
  }
  if (!args.out.empty()) {
    auto out = open_output(args.out, "plan.csv");
    write_plan_csv(out, plan);
  }
  return kExitOk;
}

int run_maxd_cmd(const CommonArgs& args, int n_steps) {
  const SwingKernel kernel{args.k, args.a, args.to_dimensionless_length(args.lmax)};
  const CapturabilityResult res = max_disturbance(kernel, n_steps, args.solver());
  print_result_block(std::cout, res, n_steps);
  return res.regime == Regime::Infeasible ? kExitNotCapturable : kExitOk;
}

int run_mink_cmd(const CommonArgs& args, int n_steps) {
  const RobotSpec spec{args.a, args.to_dimensionless_length(args.lmax), args.kmax};
  const CapturabilityResult res =
      min_actuation(spec, args.to_dimensionless_length(args.d), n_steps, args.solver());
  std::cout << "k_min=" << io::format_double(res.k_min) << '\n'
            << "regime=" << to_string(res.regime) << '\n'
            << "N=" << n_steps << '\n'
            << "f_obj=" << io::format_double(res.objective) << '\n';
  if (res.sequence.size() > 0) {
    std::vector<double> taus(res.sequence.taus.begin(), res.sequence.taus.end());
    std::cout << "tau=" << io::join_doubles(taus) << '\n';
  }
  return res.regime == Regime::Infeasible ? kExitNotCapturable : kExitOk;
}

int run_calibrate_cmd(const CommonArgs& args, const std::string& torques_text,
                      double inertia, double tau_lo, double tau_hi, int tau_count,
                      double dt, const std::string& samples_file, bool dump_samples) {
  const fs::path dir = args.out.empty() ? fs::path(".") : fs::path(args.out);

  if (!samples_file.empty()) {
    std::ifstream in(samples_file);
    if (!in) throw std::runtime_error("cannot read " + samples_file);
    const CalibrationFit fit = calibrate(read_samples_csv(in));
    write_fit_report(std::cout, fit);
    return kExitOk;
  }

  const std::vector<double> torques = io::parse_double_list(torques_text);
  if (torques.empty()) throw std::invalid_argument("no torques given");
  if (tau_count < 3 || !(tau_hi > tau_lo) || !(tau_lo > 0.0)) {
    throw std::invalid_argument("tau grid must satisfy 0 < tau-min < tau-max, count >= 3");
  }
  const std::vector<double> grid = SweepGrid::linear_spaced(tau_lo, tau_hi, tau_count);

  auto out = open_output(dir, "calibration.csv");
  out << "torque,k,a,r2\n";
  for (double torque : torques) {
    const auto samples = swing_sim(torque, inertia, grid, dt);
    const CalibrationFit fit = calibrate(samples);
    out << io::format_double(torque) << ',' << io::format_double(fit.k) << ','
        << io::format_double(fit.a) << ',' << io::format_double(fit.r_squared) << '\n';
    std::cout << "torque=" << io::format_double(torque) << '\n';
    write_fit_report(std::cout, fit);
    if (dump_samples) {
      auto sample_out = open_output(dir, "samples_" + io::format_double(torque) + ".csv");
      write_samples_csv(sample_out, samples);
    }
  }
  return kExitOk;
}

int run_graph_cmd(const CommonArgs& args, int n_circles, double reach,
                  const std::string& margins_text, double uniform_margin, bool svg) {
  const double L = args.to_dimensionless_length(reach);
  MarginGraph graph;
  if (!margins_text.empty()) {
    graph = MarginGraph::from_margins(Eigen::Vector2d::Zero(), L,
                                      io::parse_double_list(margins_text));
  } else if (uniform_margin > 0.0) {
    graph = MarginGraph::uniform(Eigen::Vector2d::Zero(), L, uniform_margin, n_circles);
  } else {
    throw std::invalid_argument("graph needs either --margins or --du");
  }

  const fs::path dir = args.out.empty() ? fs::path(".") : fs::path(args.out);
  {
    auto out = open_output(dir, "radii.csv");
    write_radii_csv(out, graph);
  }
  if (svg) {
    auto out = open_output(dir, "graph.svg");
    write_graph_svg(out, graph, Eigen::Vector2d(L, 0.0));
  }
  write_radii_csv(std::cout, graph);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"swingcap: dimensionless capturability analysis and push-recovery planning"};
  app.require_subcommand(1);

  CommonArgs args;

  std::string config_path;
  auto add_common = [&args, &config_path](CLI::App* cmd) {
    cmd->add_option("--a", args.a, "kernel exponent")->capture_default_str();
    cmd->add_option("--seed", args.seed, "solver seed")->capture_default_str();
    cmd->add_option("--out", args.out, "output directory");
    cmd->add_option("--si-com-height", args.si_com_height,
                    "CoM height [m]; when set, lengths are read as meters");
    cmd->add_option("--si-gravity", args.si_gravity, "gravity [m/s^2]")->capture_default_str();
    cmd->add_option("--config", config_path, "flat `key = value` config; flags win");
  };

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "d_max over a k x l_max grid");
  std::string k_range, l_range;
  bool sweep_svg = false;
  int sweep_n = 4;
  add_common(sweep_cmd);
  sweep_cmd->add_option("--n", sweep_n, "maximum step count")->capture_default_str();
  sweep_cmd->add_option("--k-range", k_range, "log-spaced k grid as 'lo,hi,count'");
  sweep_cmd->add_option("--l-range", l_range, "linear l_max grid as 'lo,hi,count'");
  sweep_cmd->add_flag("--svg", sweep_svg, "emit heatmap_<n>.svg files");

  // plan
  auto* plan_cmd = app.add_subcommand("plan", "least-step push-recovery plan");
  int plan_n = 2;
  add_common(plan_cmd);
  plan_cmd->add_option("--k", args.k, "available actuation coefficient")->capture_default_str();
  plan_cmd->add_option("--lmax", args.lmax, "maximum step length")->capture_default_str();
  plan_cmd->add_option("--d", args.d, "disturbance (initial ICP offset)")->required();
  plan_cmd->add_option("--n", plan_n, "step budget")->capture_default_str();

  // maxd
  auto* maxd_cmd = app.add_subcommand("maxd", "maximum resisted disturbance");
  int maxd_n = 1;
  add_common(maxd_cmd);
  maxd_cmd->add_option("--k", args.k, "actuation coefficient")->capture_default_str();
  maxd_cmd->add_option("--lmax", args.lmax, "maximum step length")->capture_default_str();
  maxd_cmd->add_option("--n", maxd_n, "step count")->capture_default_str();

  // mink
  auto* mink_cmd = app.add_subcommand("mink", "minimal actuation for a disturbance");
  int mink_n = 1;
  add_common(mink_cmd);
  mink_cmd->add_option("--lmax", args.lmax, "maximum step length")->capture_default_str();
  mink_cmd->add_option("--kmax", args.kmax, "largest achievable actuation")->capture_default_str();
  mink_cmd->add_option("--d", args.d, "disturbance (initial ICP offset)")->required();
  mink_cmd->add_option("--n", mink_n, "step count")->capture_default_str();

  // calibrate
  auto* cal_cmd = app.add_subcommand("calibrate", "fit power-law kernels from swing simulation");
  std::string torques = "0.25,0.5,0.75,1,1.25,1.5";
  std::string samples_file;
  double inertia = 1.0, tau_lo = 0.1, tau_hi = 1.0, cal_dt = 1e-3;
  int tau_count = 20;
  bool dump_samples = false;
  add_common(cal_cmd);
  cal_cmd->add_option("--torques", torques, "comma-separated torque list")->capture_default_str();
  cal_cmd->add_option("--inertia", inertia, "leg inertia")->capture_default_str();
  cal_cmd->add_option("--tau-min", tau_lo, "smallest swing time")->capture_default_str();
  cal_cmd->add_option("--tau-max", tau_hi, "largest swing time")->capture_default_str();
  cal_cmd->add_option("--tau-count", tau_count, "grid size")->capture_default_str();
  cal_cmd->add_option("--dt", cal_dt, "integration step")->capture_default_str();
  cal_cmd->add_option("--samples", samples_file, "fit an existing tau,l CSV instead");
  cal_cmd->add_flag("--dump-samples", dump_samples, "also write per-torque sample CSVs");

  // graph
  auto* graph_cmd = app.add_subcommand("graph", "time-margin capture-region radii");
  double reach = 1.0, uniform_margin = 0.0;
  std::string margins_text;
  bool graph_svg = false;
  int graph_n = 5;
  add_common(graph_cmd);
  graph_cmd->add_option("--L", reach, "maximum foot reach")->capture_default_str();
  graph_cmd->add_option("--margins", margins_text, "comma-separated margins D_1..D_{N-1}");
  graph_cmd->add_option("--du", uniform_margin, "uniform margin (with --n circles)");
  graph_cmd->add_option("--n", graph_n, "number of circles for --du")->capture_default_str();
  graph_cmd->add_flag("--svg", graph_svg, "emit graph.svg");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    for (CLI::App* sub : app.get_subcommands()) apply_config(sub, config_path);
    if (sweep_cmd->parsed()) return run_sweep_cmd(args, sweep_n, k_range, l_range, sweep_svg);
    if (plan_cmd->parsed()) return run_plan_cmd(args, plan_n);
    if (maxd_cmd->parsed()) return run_maxd_cmd(args, maxd_n);
    if (mink_cmd->parsed()) return run_mink_cmd(args, mink_n);
    if (cal_cmd->parsed()) {
      return run_calibrate_cmd(args, torques, inertia, tau_lo, tau_hi, tau_count, cal_dt,
                               samples_file, dump_samples);
    }
    if (graph_cmd->parsed()) {
      return run_graph_cmd(args, graph_n, reach, margins_text, uniform_margin, graph_svg);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
