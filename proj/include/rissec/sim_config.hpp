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

// Experiment configuration: JSON documents mirroring SimulationConfig, with
// per-experiment defaults and strict key checking.

#include "rissec/eve_solver.hpp"
#include "rissec/legit_solver.hpp"

#include "json.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rissec {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind {
  rates_vs_power,
  secrecy_vs_l,
  stream_histogram,
  rate_cdf,
  aoi_grid
};

std::string to_string(ExperimentKind k);
ExperimentKind experiment_from_string(const std::string &s);

struct AoiSettings {
  int nx = 16;
  int ny = 16;
  double x0 = -3.75;
  double y0 = 56.25;
  double dx = 0.75;
  double dy = 2.25;
  double height = 1.5;
  double ris_l_fraction = 0.625; // RIS_L at (w/2, 5l/8, 5)
};

struct SimulationConfig {
  ExperimentKind experiment = ExperimentKind::rates_vs_power;
  std::string setup = "a"; // a, b or custom
  double ris_l_fraction = 0.125;
  int N = 8;
  int M = 4;
  int K = 4;
  std::vector<double> power_dbm;
  std::vector<int> ris_elements;
  std::vector<int> malicious_elements;
  int mc_runs = 50;
  std::uint64_t seed = 1;
  double noise_dbm = -105.0;
  double rice_db = 13.2;
  double correlation = 0.5;
  std::vector<Variant> variants;
  std::string out_dir = "out";
  int threads = 0; // 0: hardware concurrency
  LegitSolverConfig legit;
  EveSolverConfig eve;
  AoiSettings aoi;

  /// Throws ConfigError.
  void validate() const;
  nlohmann::json to_json() const;
  /// FNV-1a 64 of the canonical JSON without out_dir and threads.
  std::uint64_t hash() const;
};

/// Defaults of an experiment family.
SimulationConfig default_config(ExperimentKind kind);

/// Applies `doc` on top of `base`. Unknown keys, wrong types and invalid
/// values raise ConfigError.
SimulationConfig apply_json(SimulationConfig base, const nlohmann::json &doc);

SimulationConfig load_config(const std::string &path, ExperimentKind kind);

std::string hash_hex(std::uint64_t h);

} // namespace rissec
