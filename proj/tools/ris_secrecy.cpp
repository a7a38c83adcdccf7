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

// Command-line front end for the Monte-Carlo experiments.
//
//   ris_secrecy <experiment> [--config file.json] [overrides...]
//
// Exit codes: 0 success, 1 configuration error, 2 runtime failure.

#include "rissec/sim_harness.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <optional>

namespace {

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> mc_runs;
  std::optional<std::string> out_dir;
  std::vector<std::string> variants;
  std::optional<std::string> setup;
  std::vector<double> power_dbm;
  std::vector<int> ris_elements;
  std::vector<int> malicious_elements;
  std::optional<int> threads;
  bool quiet = false;
};

nlohmann::json override_doc(const Overrides &o) {
  nlohmann::json j = nlohmann::json::object();
  if (o.seed)
    j["seed"] = *o.seed;
  if (o.mc_runs)
    j["mc_runs"] = *o.mc_runs;
  if (o.out_dir)
    j["out_dir"] = *o.out_dir;
  if (!o.variants.empty())
    j["variants"] = o.variants;
  if (o.setup)
    j["setup"] = *o.setup;
  if (!o.power_dbm.empty())
    j["power_dbm"] = o.power_dbm;
  if (!o.ris_elements.empty())
    j["ris_elements"] = o.ris_elements;
  if (!o.malicious_elements.empty())
    j["malicious_elements"] = o.malicious_elements;
  if (o.threads)
    j["threads"] = *o.threads;
  return j;
}

void add_flags(CLI::App *cmd, Overrides &o) {
  cmd->add_option("--config", o.config, "JSON configuration file")
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "64-bit base seed");
  cmd->add_option("--mc-runs", o.mc_runs, "Monte-Carlo realizations per point");
  cmd->add_option("--out-dir", o.out_dir, "output directory");
  cmd->add_option("--variant", o.variants,
                  "statistical, perfect or no-ris (comma separated)")
      ->delimiter(',');
  cmd->add_option("--setup", o.setup, "a, b or custom");
  cmd->add_option("--power-dbm", o.power_dbm, "transmit powers in dBm")
      ->delimiter(',');
  cmd->add_option("--ris-elements", o.ris_elements, "legitimate RIS sizes L")
      ->delimiter(',');
  cmd->add_option("--malicious-elements", o.malicious_elements,
                  "malicious RIS sizes Lambda")
      ->delimiter(',');
  cmd->add_option("--threads", o.threads, "worker threads (0: all cores)");
  cmd->add_flag("--quiet", o.quiet, "no progress output");
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Secrecy-rate experiments with a legitimate and a malicious RIS"};
  app.require_subcommand(1);
  Overrides o;
  const std::vector<rissec::ExperimentKind> kinds = {
      rissec::ExperimentKind::rates_vs_power,
      rissec::ExperimentKind::secrecy_vs_l,
      rissec::ExperimentKind::stream_histogram,
      rissec::ExperimentKind::rate_cdf, rissec::ExperimentKind::aoi_grid};
  std::vector<CLI::App *> cmds;
  for (auto k : kinds) {
    std::string name = rissec::to_string(k);
    if (k == rissec::ExperimentKind::secrecy_vs_l)
      name = "secrecy-vs-L";
    CLI::App *cmd = app.add_subcommand(name, "run the " + name + " experiment");
    if (k == rissec::ExperimentKind::secrecy_vs_l)
      cmd->alias("secrecy-vs-l");
    add_flags(cmd, o);
    cmds.push_back(cmd);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  rissec::ExperimentKind kind = kinds.front();
  for (std::size_t i = 0; i < cmds.size(); ++i)
    if (cmds[i]->parsed())
      kind = kinds[i];

  rissec::SimulationConfig cfg;
  try {
    cfg = o.config.empty() ? rissec::default_config(kind)
                           : rissec::load_config(o.config, kind);
    cfg = rissec::apply_json(cfg, override_doc(o));
  } catch (const std::exception &e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  }

  try {
    rissec::ProgressFn progress;
    if (!o.quiet)
      progress = [](std::size_t done, std::size_t total) {
        if (done == total || done % 10 == 0)
          std::cerr << "\r" << done << "/" << total << std::flush;
        if (done == total)
          std::cerr << '\n';
      };
    const rissec::ExperimentResult res = rissec::run_experiment(cfg, progress);
    rissec::write_outputs(cfg, res);
    std::size_t failed = 0;
    for (const auto &r : res.records)
      failed += r.stall == rissec::StallCode::failed;
    std::cout << "wrote " << res.records.size() << " records to "
              << cfg.out_dir << " (config " << rissec::hash_hex(cfg.hash())
              << ", " << failed << " failed)\n";
  } catch (const std::exception &e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
