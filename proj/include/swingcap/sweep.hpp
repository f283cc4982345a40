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
#include <vector>

#include "swingcap/capturability.hpp"

namespace swingcap {

/**
 * @brief Grid of (k, l_max) cells for the capability sweep.
 *
 * Defaults: 20 log-spaced actuation coefficients in [0.1, 1], 20 linear reach
 * limits in [1, 2], up to 4 steps, exponent 1.66. The ranges are chosen so the
 * sweep shows interior, bound and mixed optima, the small-k plateau, and a
 * decaying gain per added step.
 */
struct SweepGrid {
  std::vector<double> k_values;
  std::vector<double> l_values;
  int n_max = 4;
  double a = 1.66;

  static SweepGrid defaults();
  static std::vector<double> log_spaced(double lo, double hi, int count);
  static std::vector<double> linear_spaced(double lo, double hi, int count);
};

struct SweepCell {
  double k = 0.0;
  double l_max = 0.0;
  int n = 0;
  double d_max = 0.0;
  Regime regime = Regime::Infeasible;
};

/// Per-step relative increase of d_max across the grid, in percent.
struct IncrementStats {
  int n_from = 0;
  int n_to = 0;
  double min_pct = 0.0;
  double max_pct = 0.0;
  double mean_pct = 0.0;
};

struct SweepReport {
  SweepGrid grid;
  std::vector<SweepCell> cells;  ///< ordered by (k, l_max, n)
  std::vector<IncrementStats> increments;

  const SweepCell& cell(int k_index, int l_index, int n) const;
};

/// Fills every cell via max_disturbance. Neighbour optima are fed back as
/// warm starts, which keeps d_max monotone along k, l_max and n.
SweepReport run_sweep(const SweepGrid& grid, const SolverOptions& options = {});

/// CSV `k,l_max,n,d_max,regime`.
void write_sweep_csv(std::ostream& out, const SweepReport& report);

/// CSV `n_from,n_to,min_pct,max_pct,mean_pct`.
void write_increments_csv(std::ostream& out, const SweepReport& report);

/// Heatmap of d_max over the (l_max, k) plane for one step count.
void write_heatmap_svg(std::ostream& out, const SweepReport& report, int n);

}  // namespace swingcap
