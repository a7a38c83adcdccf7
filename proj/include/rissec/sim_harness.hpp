// SPDX-License-Identifier: Apache-2.0
//
// rissec: secrecy-rate design for RIS-assisted MIMO links under RIS-boosted eavesdropping
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

// Monte-Carlo experiment runner: for every sweep point and realization it
// draws the channels, solves the legitimate design, lets Eve respond with the
// chosen stream count and records the actual rates.

#include "rissec/channel.hpp"
#include "rissec/sim_config.hpp"
#include "rissec/summary.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace rissec {

struct SweepPoint {
  Variant variant = Variant::statistical;
  double P_dBm = 0.0;
  int L = 0;      // as configured; the no-ris variant runs with L = 0
  int Lambda = 0;
  double rx_x = 0.0;
  double rx_y = 0.0;
  double rx_h = 0.0;
  double ris_l_fraction = 0.125;
};

enum class StallCode { none = 0, stalled = 1, failed = 2 };

struct ExperimentRecord {
  int realization = 0;
  std::uint64_t seed = 0;
  std::string variant;
  std::string setup;
  double P_dBm = 0.0;
  int L = 0;
  int Lambda = 0;
  double rx_x = 0.0;
  double rx_y = 0.0;
  int Nd = 0;
  double R_RX = 0.0;
  double R_E = 0.0;
  double R_s = 0.0;
  double R_E_ub = 0.0;
  int iterations = 0;
  StallCode stall = StallCode::none;
  std::string error; // set when stall == failed
  double wall_seconds = 0.0;
};

/// Scenario for one sweep point. The no-ris variant gets L = 0.
Scenario make_scenario(const SimulationConfig &cfg, const SweepPoint &pt);

/// Sweep points in output order: variant, then P, then L, then Lambda (and
/// grid position for the AoI experiment).
std::vector<SweepPoint> sweep_points(const SimulationConfig &cfg);

/// One realization at one sweep point. Solver failures are caught and
/// reported through the record.
ExperimentRecord run_realization(const SimulationConfig &cfg,
                                 const SweepPoint &pt, int realization);

struct ExperimentResult {
  std::vector<SweepPoint> points;
  /// records[p * mc_runs + r]
  std::vector<ExperimentRecord> records;
};

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// Runs every (point, realization) on a bounded worker pool. Records land in
/// fixed slots, so the output never depends on scheduling.
ExperimentResult run_experiment(const SimulationConfig &cfg,
                                const ProgressFn &progress = {});

struct AoiCell {
  double x = 0.0;
  double y = 0.0;
  double mean_rs = 0.0;
  double mean_rs_no_ris = 0.0;
  double boost_ratio = 0.0; // mean_rs / mean_rs_no_ris
};

std::vector<AoiCell> aoi_cells(const SimulationConfig &cfg,
                               const ExperimentResult &res);

// Output files. Numbers use "%.9g" with the C locale.
extern const char *const kRecordsHeader;
void write_records_csv(std::ostream &out,
                       const std::vector<ExperimentRecord> &records);
std::vector<ExperimentRecord> read_records_csv(std::istream &in);
void write_timing_csv(std::ostream &out,
                      const std::vector<ExperimentRecord> &records);
nlohmann::json summary_json(const SimulationConfig &cfg,
                            const ExperimentResult &res);
void write_aoi_csv(std::ostream &out, const std::vector<AoiCell> &cells);

/// Writes records.csv, timing.csv, summary.json (and aoi.csv for the grid)
/// into cfg.out_dir, creating it if needed.
void write_outputs(const SimulationConfig &cfg, const ExperimentResult &res);

} // namespace rissec
