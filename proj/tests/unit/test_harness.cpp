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

#include "rissec/sim_harness.hpp"
#include "rissec/summary.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace rissec;
using nlohmann::json;

namespace {

SimulationConfig tiny(ExperimentKind kind) {
  SimulationConfig c = default_config(kind);
  json doc = {{"N", 2},
              {"M", 2},
              {"K", 2},
              {"power_dbm", {20}},
              {"ris_elements", {4}},
              {"malicious_elements", {4}},
              {"mc_runs", 2},
              {"seed", 5},
              {"threads", 1},
              {"solver", {{"max_inner_iters", 5}, {"eve_max_rounds", 3}}}};
  return apply_json(c, doc);
}

std::string records_text(const ExperimentResult &r) {
  std::ostringstream os;
  write_records_csv(os, r.records);
  return os.str();
}

std::string slurp(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

} // namespace

TEST(Summary, MeanStderr) {
  const MeanStderr m = mean_stderr({1.0, 2.0, 3.0, 4.0});
  EXPECT_DOUBLE_EQ(m.mean, 2.5);
  EXPECT_NEAR(m.stderr_, std::sqrt(5.0 / 3.0) / 2.0, 1e-15);
  EXPECT_EQ(m.count, 4u);
  EXPECT_EQ(mean_stderr({7.0}).stderr_, 0.0);
  EXPECT_THROW(mean_stderr({}), std::invalid_argument);
}

TEST(Summary, CdfStepFunction) {
  const auto single = empirical_cdf({3.0});
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].probability, 1.0);
  EXPECT_EQ(cdf_at(single, 2.999), 0.0);
  EXPECT_EQ(cdf_at(single, 3.0), 1.0);
  const auto c = empirical_cdf({2.0, 1.0, 2.0, 5.0});
  ASSERT_EQ(c.size(), 3u);
  EXPECT_DOUBLE_EQ(c[0].probability, 0.25);
  EXPECT_DOUBLE_EQ(c[1].probability, 0.75);
  EXPECT_DOUBLE_EQ(c[2].probability, 1.0);
  EXPECT_DOUBLE_EQ(cdf_at(c, 2.0), 0.75);
  EXPECT_DOUBLE_EQ(cdf_at(c, 4.0), 0.75);
  EXPECT_THROW(empirical_cdf({}), std::invalid_argument);
}

TEST(Summary, Histogram) {
  const auto h = histogram({2, 2});
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h.at(2), 1.0);
  const auto h2 = histogram({1, 2, 2, 3, 3, 3, 4});
  double total = 0.0;
  for (const auto &[k, v] : h2)
    total += v;
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_NEAR(h2.at(3), 3.0 / 7.0, 1e-15);
  EXPECT_THROW(histogram({}), std::invalid_argument);
}

TEST(Summary, KolmogorovSelfTest) {
  std::mt19937_64 g(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> s(1000);
  for (double &x : s)
    x = u(g);
  const double d = ks_distance(s, [](double x) {
    return std::clamp(x, 0.0, 1.0);
  });
  EXPECT_LE(d, 1.628 / std::sqrt(1000.0)); // 1% critical value
  EXPECT_GT(ks_distance(s, [](double x) { return std::clamp(x / 2.0, 0.0, 1.0); }),
            0.3);
}

TEST(Config, DefaultsPerExperiment) {
  const SimulationConfig a = default_config(ExperimentKind::rates_vs_power);
  EXPECT_EQ(a.N, 8);
  EXPECT_EQ(a.K, 4);
  EXPECT_EQ(a.M, 4);
  EXPECT_EQ(a.mc_runs, 50);
  EXPECT_EQ(a.malicious_elements, (std::vector<int>{0, 20, 100}));
  const SimulationConfig l = default_config(ExperimentKind::secrecy_vs_l);
  EXPECT_EQ(l.ris_elements, (std::vector<int>{10, 20, 40}));
  const SimulationConfig b =
      apply_json(default_config(ExperimentKind::rate_cdf), json{{"setup", "b"}});
  EXPECT_EQ(b.N, 16);
  EXPECT_EQ(b.K, 8);
  const SimulationConfig aoi = default_config(ExperimentKind::aoi_grid);
  EXPECT_EQ(aoi.aoi.nx * aoi.aoi.ny, 256);
  EXPECT_EQ(aoi.power_dbm, (std::vector<double>{25.0}));
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  const SimulationConfig base = default_config(ExperimentKind::rate_cdf);
  EXPECT_THROW(apply_json(base, json{{"bogus", 1}}), ConfigError);
  EXPECT_THROW(apply_json(base, json{{"solver", {{"bogus", 1}}}}), ConfigError);
  EXPECT_THROW(apply_json(base, json{{"solver", {{"line_search", {{"x", 1}}}}}}),
               ConfigError);
  EXPECT_THROW(apply_json(base, json{{"mc_runs", 0}}), ConfigError);
  EXPECT_THROW(apply_json(base, json{{"mc_runs", "ten"}}), ConfigError);
  EXPECT_THROW(apply_json(base, json{{"power_dbm", json::array()}}), ConfigError);
  EXPECT_THROW(apply_json(base, json{{"setup", "z"}}), ConfigError);
  EXPECT_THROW(apply_json(base, json{{"variants", {"fancy"}}}), ConfigError);
  EXPECT_THROW(apply_json(base, json{{"experiment", "aoi-grid"}}), ConfigError);
  EXPECT_NO_THROW(apply_json(base, json{{"power_dbm", 12.5}}));
}

TEST(Config, HashIgnoresOutputLocation) {
  SimulationConfig a = default_config(ExperimentKind::rate_cdf);
  SimulationConfig b = a;
  b.out_dir = "elsewhere";
  b.threads = 3;
  EXPECT_EQ(a.hash(), b.hash());
  b.seed = 99;
  EXPECT_NE(a.hash(), b.hash());
  const SimulationConfig c = apply_json(default_config(ExperimentKind::rate_cdf),
                                        a.to_json());
  EXPECT_EQ(c.hash(), a.hash());
}

TEST(Config, LoadFromFile) {
  const auto dir = std::filesystem::temp_directory_path() / "rissec_cfg_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "cfg.json";
  {
    std::ofstream f(path);
    f << R"({"mc_runs": 3, "power_dbm": [10, 20]})";
  }
  const SimulationConfig c = load_config(path.string(), ExperimentKind::rates_vs_power);
  EXPECT_EQ(c.mc_runs, 3);
  EXPECT_EQ(c.power_dbm.size(), 2u);
  {
    std::ofstream f(path);
    f << "{ not json";
  }
  EXPECT_THROW(load_config(path.string(), ExperimentKind::rates_vs_power),
               ConfigError);
  EXPECT_THROW(load_config((dir / "missing.json").string(),
                           ExperimentKind::rates_vs_power),
               ConfigError);
}

TEST(Harness, SweepOrderAndNoRisScenario) {
  SimulationConfig c = tiny(ExperimentKind::rates_vs_power);
  c = apply_json(c, json{{"power_dbm", {0, 10}}, {"malicious_elements", {0, 4}}});
  const auto pts = sweep_points(c);
  ASSERT_EQ(pts.size(), 2u * 2u * 2u); // variants x P x Lambda
  EXPECT_EQ(pts[0].variant, Variant::statistical);
  EXPECT_EQ(pts[0].P_dBm, 0.0);
  EXPECT_EQ(pts[1].Lambda, 4);
  EXPECT_EQ(pts[2].P_dBm, 10.0);
  EXPECT_EQ(pts[4].variant, Variant::no_legit_ris);
  EXPECT_EQ(make_scenario(c, pts[4]).dims.L, 0);
  EXPECT_EQ(make_scenario(c, pts[0]).dims.L, 4);
}

TEST(Harness, DeterministicAcrossRunsAndThreads) {
  SimulationConfig c = tiny(ExperimentKind::rate_cdf);
  const ExperimentResult a = run_experiment(c);
  c.threads = 2;
  const ExperimentResult b = run_experiment(c);
  ASSERT_EQ(a.records.size(), 2u * 2u); // 2 variants x 2 runs
  EXPECT_EQ(records_text(a), records_text(b));
  for (const auto &r : a.records) {
    EXPECT_NE(r.stall, StallCode::failed) << r.error;
    EXPECT_EQ(r.R_s, std::max(0.0, r.R_RX - r.R_E));
    EXPECT_GE(r.Nd, 1);
    EXPECT_LE(r.Nd, 2);
  }
}

TEST(Harness, RecordsCsvRoundTrip) {
  const SimulationConfig c = tiny(ExperimentKind::rate_cdf);
  const ExperimentResult a = run_experiment(c);
  const std::string text = records_text(a);
  EXPECT_EQ(text.substr(0, text.find('\n')), std::string(kRecordsHeader));
  std::istringstream in(text);
  const auto back = read_records_csv(in);
  ASSERT_EQ(back.size(), a.records.size());
  std::ostringstream again;
  write_records_csv(again, back);
  EXPECT_EQ(again.str(), text);
  std::istringstream bad("realization,seed\n1,2\n");
  EXPECT_THROW(read_records_csv(bad), std::runtime_error);
}

TEST(Harness, NoRisWithoutMaliciousRis) {
  SimulationConfig c = tiny(ExperimentKind::rate_cdf);
  c = apply_json(c, json{{"variants", {"no-ris"}}, {"malicious_elements", {0}},
                         {"mc_runs", 3}});
  const ExperimentResult r = run_experiment(c);
  ASSERT_EQ(r.records.size(), 3u);
  for (const auto &rec : r.records) {
    EXPECT_EQ(rec.L, 0);
    EXPECT_EQ(rec.Lambda, 0);
    EXPECT_EQ(rec.stall == StallCode::failed, false) << rec.error;
    EXPECT_GE(rec.R_RX, 0.0);
    EXPECT_GE(rec.R_E, 0.0);
    EXPECT_EQ(rec.R_s, std::max(0.0, rec.R_RX - rec.R_E));
    // Eve only sees the direct path, which is weaker than the RX link here
    EXPECT_LT(rec.R_E, rec.R_RX);
  }
}

TEST(Harness, SummaryJsonContents) {
  const SimulationConfig c = tiny(ExperimentKind::rate_cdf);
  const ExperimentResult r = run_experiment(c);
  const json s = summary_json(c, r);
  EXPECT_EQ(s["experiment"], "rate-cdf");
  EXPECT_EQ(s["config_hash"], hash_hex(c.hash()));
  ASSERT_EQ(s["points"].size(), 2u);
  const json &p = s["points"][0];
  EXPECT_EQ(p["runs"], 2);
  EXPECT_TRUE(p["R_s"].contains("mean"));
  EXPECT_TRUE(p["R_s"].contains("stderr"));
  double total = 0.0;
  for (const auto &[k, v] : p["Nd_histogram"].items())
    total += v.get<double>();
  EXPECT_NEAR(total, 1.0, 1e-12);
  const auto &cdf = p["cdf"]["R_s"];
  EXPECT_EQ(cdf.back()[1].get<double>(), 1.0);
}

TEST(Harness, SingleCellAoi) {
  SimulationConfig c = tiny(ExperimentKind::aoi_grid);
  c = apply_json(c, json{{"aoi", {{"nx", 1}, {"ny", 1}}}});
  const auto pts = sweep_points(c);
  ASSERT_EQ(pts.size(), 2u); // with and without the legitimate RIS
  EXPECT_EQ(pts[0].rx_x, c.aoi.x0);
  EXPECT_EQ(pts[0].rx_y, c.aoi.y0);
  const ExperimentResult r = run_experiment(c);
  const auto cells = aoi_cells(c, r);
  ASSERT_EQ(cells.size(), 1u);
  double with = 0.0, without = 0.0;
  for (int k = 0; k < c.mc_runs; ++k) {
    with += run_realization(c, pts[0], k).R_s;
    without += run_realization(c, pts[1], k).R_s;
  }
  EXPECT_DOUBLE_EQ(cells[0].mean_rs, with / c.mc_runs);
  EXPECT_DOUBLE_EQ(cells[0].mean_rs_no_ris, without / c.mc_runs);
}

TEST(Harness, FullAoiGridHas256Positions) {
  const SimulationConfig c = default_config(ExperimentKind::aoi_grid);
  const auto pts = sweep_points(c);
  EXPECT_EQ(pts.size(), 2u * 256u);
}

TEST(Harness, WriteOutputsCreatesFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "rissec_out_test";
  std::filesystem::remove_all(dir);
  SimulationConfig c = tiny(ExperimentKind::aoi_grid);
  c = apply_json(c, json{{"aoi", {{"nx", 2}, {"ny", 1}}}, {"mc_runs", 1},
                         {"out_dir", (dir / "nested").string()}});
  const ExperimentResult r = run_experiment(c);
  write_outputs(c, r);
  for (const char *f : {"records.csv", "timing.csv", "summary.json", "aoi.csv"})
    EXPECT_TRUE(std::filesystem::exists(dir / "nested" / f)) << f;
  const std::string aoi = slurp(dir / "nested" / "aoi.csv");
  EXPECT_EQ(aoi.substr(0, aoi.find('\n')), "x,y,mean_rs,mean_rs_no_ris,boost_ratio");
  const json s = json::parse(slurp(dir / "nested" / "summary.json"));
  EXPECT_EQ(s["aoi"]["nx"], 2);
  const std::string first = slurp(dir / "nested" / "records.csv");
  write_outputs(c, run_experiment(c));
  EXPECT_EQ(slurp(dir / "nested" / "records.csv"), first);
}

TEST(Harness, AoiExtentsInSummary) {
  const SimulationConfig c = default_config(ExperimentKind::aoi_grid);
  const json s = summary_json(c, ExperimentResult{});
  EXPECT_EQ(s["aoi"]["nx"], 16);
  EXPECT_EQ(s["aoi"]["ny"], 16);
  EXPECT_DOUBLE_EQ(s["aoi"]["width"].get<double>(), 11.25);
  EXPECT_DOUBLE_EQ(s["aoi"]["length"].get<double>(), 33.75);
}
