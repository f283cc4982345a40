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

#include "swingcap/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "swingcap/io.hpp"
#include "swingcap/svg.hpp"

namespace swingcap {

SweepGrid SweepGrid::defaults() {
  SweepGrid grid;
  grid.k_values = log_spaced(0.1, 1.0, 20);
  grid.l_values = linear_spaced(1.0, 2.0, 20);
  return grid;
}

std::vector<double> SweepGrid::log_spaced(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) {
    throw std::invalid_argument("log_spaced requires 0 < lo < hi and count >= 2");
  }
  std::vector<double> out(static_cast<std::size_t>(count));
  const double step = (std::log(hi) - std::log(lo)) / (count - 1);
  for (int i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = std::exp(std::log(lo) + step * i);
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> SweepGrid::linear_spaced(double lo, double hi, int count) {
  if (!(hi > lo) || count < 2) {
    throw std::invalid_argument("linear_spaced requires lo < hi and count >= 2");
  }
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
  }
  return out;
}

namespace {

void validate_grid(const SweepGrid& grid) {
  if (grid.k_values.empty() || grid.l_values.empty() || grid.n_max < 1 || !(grid.a > 0.0)) {
    throw std::invalid_argument("sweep grid must be non-empty with n_max >= 1 and a > 0");
  }
  auto sorted_positive = [](const std::vector<double>& v) {
    if (!(v.front() > 0.0)) return false;
    return std::is_sorted(v.begin(), v.end()) &&
           std::adjacent_find(v.begin(), v.end()) == v.end();
  };
  if (!sorted_positive(grid.k_values) || !sorted_positive(grid.l_values)) {
    throw std::invalid_argument("sweep grid values must be positive, sorted, distinct");
  }
}

// Appending a step that lands back on the captured point keeps d unchanged,
// so the (n-1)-step optimum embeds into the n-step problem as a warm start.
Eigen::VectorXd embed_previous_optimum(const Eigen::VectorXd& taus, double a, double tau_max) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < taus.size(); ++i) s = std::pow(taus[i], a) - s;
  Eigen::VectorXd extended(taus.size() + 1);
  extended.head(taus.size()) = taus;
  extended[taus.size()] = (s >= 0.0) ? std::min(std::pow(s, 1.0 / a), tau_max) : 0.0;
  return extended;
}

}  // namespace

const SweepCell& SweepReport::cell(int k_index, int l_index, int n) const {
  const int n_l = static_cast<int>(grid.l_values.size());
  const int idx = (k_index * n_l + l_index) * grid.n_max + (n - 1);
  return cells.at(static_cast<std::size_t>(idx));
}

SweepReport run_sweep(const SweepGrid& grid, const SolverOptions& options) {
  validate_grid(grid);

  SweepReport report;
  report.grid = grid;
  const int n_k = static_cast<int>(grid.k_values.size());
  const int n_l = static_cast<int>(grid.l_values.size());
  report.cells.reserve(static_cast<std::size_t>(n_k * n_l * grid.n_max));

  // Arg-max sequences kept for warm-starting neighbouring cells.
  std::vector<std::vector<Eigen::VectorXd>> row_optima(
      static_cast<std::size_t>(n_l), std::vector<Eigen::VectorXd>(static_cast<std::size_t>(grid.n_max)));
  auto prev_row = row_optima;

  for (int ik = 0; ik < n_k; ++ik) {
    std::swap(prev_row, row_optima);
    for (int il = 0; il < n_l; ++il) {
      const SwingKernel kernel{grid.k_values[static_cast<std::size_t>(ik)], grid.a,
                               grid.l_values[static_cast<std::size_t>(il)]};
      const double tau_max = kernel.tau_max();
      Eigen::VectorXd previous_taus;
      for (int n = 1; n <= grid.n_max; ++n) {
        SolverOptions cell_options = options;
        if (previous_taus.size() == n - 1 && n > 1) {
          cell_options.warm_starts.push_back(
              embed_previous_optimum(previous_taus, grid.a, tau_max));
        }
        if (ik > 0) {
          const auto& up = prev_row[static_cast<std::size_t>(il)][static_cast<std::size_t>(n - 1)];
          if (up.size() == n) cell_options.warm_starts.push_back(up);
        }
        if (il > 0) {
          const auto& left =
              row_optima[static_cast<std::size_t>(il - 1)][static_cast<std::size_t>(n - 1)];
          if (left.size() == n) cell_options.warm_starts.push_back(left);
        }

        const CapturabilityResult res = max_disturbance(kernel, n, cell_options);
        report.cells.push_back(
            {kernel.k, kernel.l_max, n, res.d, res.regime});
        previous_taus = res.sequence.taus;
        row_optima[static_cast<std::size_t>(il)][static_cast<std::size_t>(n - 1)] =
            res.sequence.taus;
      }
    }
  }

  for (int n = 1; n < grid.n_max; ++n) {
    IncrementStats stats;
    stats.n_from = n;
    stats.n_to = n + 1;
    stats.min_pct = std::numeric_limits<double>::infinity();
    stats.max_pct = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    int count = 0;
    for (int ik = 0; ik < n_k; ++ik) {
      for (int il = 0; il < n_l; ++il) {
        const double before = report.cell(ik, il, n).d_max;
        const double after = report.cell(ik, il, n + 1).d_max;
        if (!(before > 0.0)) continue;
        const double pct = (after - before) / before * 100.0;
        stats.min_pct = std::min(stats.min_pct, pct);
        stats.max_pct = std::max(stats.max_pct, pct);
        sum += pct;
        ++count;
      }
    }
    if (count > 0) {
      stats.mean_pct = sum / count;
      report.increments.push_back(stats);
    }
  }
  return report;
}

void write_sweep_csv(std::ostream& out, const SweepReport& report) {
  out << "k,l_max,n,d_max,regime\n";
  for (const auto& cell : report.cells) {
    out << io::format_double(cell.k) << ',' << io::format_double(cell.l_max) << ',' << cell.n
        << ',' << io::format_double(cell.d_max) << ',' << to_string(cell.regime) << '\n';
  }
}

void write_increments_csv(std::ostream& out, const SweepReport& report) {
  out << "n_from,n_to,min_pct,max_pct,mean_pct\n";
  for (const auto& inc : report.increments) {
    out << inc.n_from << ',' << inc.n_to << ',' << io::format_double(inc.min_pct) << ','
        << io::format_double(inc.max_pct) << ',' << io::format_double(inc.mean_pct) << '\n';
  }
}

void write_heatmap_svg(std::ostream& out, const SweepReport& report, int n) {
  const int n_k = static_cast<int>(report.grid.k_values.size());
  const int n_l = static_cast<int>(report.grid.l_values.size());
  if (n < 1 || n > report.grid.n_max) {
    throw std::invalid_argument("write_heatmap_svg: n outside the swept range");
  }

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int ik = 0; ik < n_k; ++ik) {
    for (int il = 0; il < n_l; ++il) {
      const double v = report.cell(ik, il, n).d_max;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  const double span = (hi > lo) ? hi - lo : 1.0;

  const double margin = 40.0;
  const double cell_px = 20.0;
  svg::Document doc(margin * 2 + cell_px * n_l, margin * 2 + cell_px * n_k);
  for (int ik = 0; ik < n_k; ++ik) {
    for (int il = 0; il < n_l; ++il) {
      const double v = report.cell(ik, il, n).d_max;
      // l_max on x, k on y, largest k at the top.
      doc.rect(margin + cell_px * il, margin + cell_px * (n_k - 1 - ik), cell_px, cell_px,
               svg::heat_color((v - lo) / span));
    }
  }
  doc.text(margin, margin - 10.0, "d_max, n=" + std::to_string(n));
  doc.text(margin, margin * 2 + cell_px * n_k - 10.0, "x: l_max, y: k");
  doc.write(out);
}

}  // namespace swingcap
