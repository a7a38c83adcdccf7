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

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace rissec {

using nlohmann::json;

namespace {

SystemGeometry base_geometry(const SimulationConfig &cfg) {
  if (cfg.experiment == ExperimentKind::aoi_grid)
    return SystemGeometry::standard(cfg.aoi.ris_l_fraction);
  if (cfg.setup == "a")
    return SystemGeometry::setup_a();
  if (cfg.setup == "b")
    return SystemGeometry::setup_b();
  return SystemGeometry::standard(cfg.ris_l_fraction);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

} // namespace

Scenario make_scenario(const SimulationConfig &cfg, const SweepPoint &pt) {
  Scenario s;
  s.geom = SystemGeometry::standard(pt.ris_l_fraction);
  s.geom.rx = {pt.rx_x, pt.rx_y, pt.rx_h};
  const int l = pt.variant == Variant::no_legit_ris ? 0 : pt.L;
  s.dims = SystemDims::make(cfg.N, cfg.M, cfg.K, l, pt.Lambda);
  s.kappa = db_to_linear(cfg.rice_db);
  s.rho_corr = cfg.correlation;
  return s;
}

std::vector<SweepPoint> sweep_points(const SimulationConfig &cfg) {
  const SystemGeometry g = base_geometry(cfg);
  const double frac = g.ris_l.y / g.length;
  std::vector<SweepPoint> out;
  if (cfg.experiment == ExperimentKind::aoi_grid) {
    for (Variant v : {cfg.variants.front(), Variant::no_legit_ris})
      for (int iy = 0; iy < cfg.aoi.ny; ++iy)
        for (int ix = 0; ix < cfg.aoi.nx; ++ix) {
          SweepPoint p;
          p.variant = v;
          p.P_dBm = cfg.power_dbm.front();
          p.L = cfg.ris_elements.front();
          p.Lambda = cfg.malicious_elements.front();
          p.rx_x = cfg.aoi.x0 + ix * cfg.aoi.dx;
          p.rx_y = cfg.aoi.y0 + iy * cfg.aoi.dy;
          p.rx_h = cfg.aoi.height;
          p.ris_l_fraction = frac;
          out.push_back(p);
        }
    return out;
  }
  for (Variant v : cfg.variants)
    for (double pw : cfg.power_dbm)
      for (int l : cfg.ris_elements)
        for (int lam : cfg.malicious_elements) {
          SweepPoint p;
          p.variant = v;
          p.P_dBm = pw;
          p.L = l;
          p.Lambda = lam;
          p.rx_x = g.rx.x;
          p.rx_y = g.rx.y;
          p.rx_h = g.rx.h;
          p.ris_l_fraction = frac;
          out.push_back(p);
        }
  return out;
}

ExperimentRecord run_realization(const SimulationConfig &cfg,
                                 const SweepPoint &pt, int realization) {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentRecord rec;
  rec.realization = realization;
  rec.seed = cfg.seed;
  rec.variant = to_string(pt.variant);
  rec.setup = cfg.experiment == ExperimentKind::aoi_grid ? "aoi" : cfg.setup;
  rec.P_dBm = pt.P_dBm;
  rec.L = pt.variant == Variant::no_legit_ris ? 0 : pt.L;
  rec.Lambda = pt.Lambda;
  rec.rx_x = pt.rx_x;
  rec.rx_y = pt.rx_y;
  try {
    const Scenario s = make_scenario(cfg, pt);
    const StatisticalCsi stats =
        build_statistical_csi(s.geom, s.dims, s.kappa, s.rho_corr);
    const ChannelSet ch = draw_channel_set(s, stats, cfg.seed,
                                           static_cast<std::uint64_t>(realization));
    const bool perfect = pt.variant == Variant::perfect;
    const StatisticalCsi csi = perfect ? perfect_csi(ch.H_E, ch.G_E) : stats;
    const double P = dbm_to_watts(pt.P_dBm);
    const double sigma2 = dbm_to_watts(cfg.noise_dbm);

    const LegitResult legit =
        solve_legit(make_legit_problem(ch, csi, P, sigma2), cfg.legit);

    EveProblem ep;
    const EveKnowledge know = eve_los_knowledge(s.geom, s.dims);
    ep.G2 = ch.G2;
    ep.g1 = know.g1;
    ep.g2 = know.g2;
    if (perfect)
      ep.G1_exact = ch.G1;
    ep.P = P;
    ep.sigma2 = sigma2;
    ep.Nd = legit.Nd;
    ep.cfg = cfg.eve;
    const EveSolution eve = solve_eve(ep);

    const RateReport r =
        evaluate_rates(ch, csi, legit.design, eve.design, sigma2);
    rec.Nd = legit.Nd;
    rec.R_RX = r.R_RX;
    rec.R_E = r.R_E;
    rec.R_s = r.R_s;
    rec.R_E_ub = r.R_E_ub;
    rec.iterations = legit.iterations;
    if (legit.stalled || eve.stalled)
      rec.stall = StallCode::stalled;
  } catch (const std::exception &e) {
    rec.stall = StallCode::failed;
    rec.error = e.what();
    rec.Nd = 0;
    rec.R_RX = rec.R_E = rec.R_s = rec.R_E_ub = std::nan("");
  }
  rec.wall_seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
  return rec;
}

ExperimentResult run_experiment(const SimulationConfig &cfg,
                                const ProgressFn &progress) {
  cfg.validate();
  ExperimentResult res;
  res.points = sweep_points(cfg);
  const std::size_t runs = static_cast<std::size_t>(cfg.mc_runs);
  const std::size_t total = res.points.size() * runs;
  res.records.resize(total);

  unsigned workers = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                     : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(total)));
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      res.records[i] = run_realization(cfg, res.points[i / runs],
                                       static_cast<int>(i % runs));
      const std::size_t d = ++done;
      if (progress) {
        std::lock_guard<std::mutex> lock(progress_mutex);
        progress(d, total);
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back(work);
    for (auto &t : pool)
      t.join();
  }
  return res;
}

std::vector<AoiCell> aoi_cells(const SimulationConfig &cfg,
                               const ExperimentResult &res) {
  if (cfg.experiment != ExperimentKind::aoi_grid)
    throw std::invalid_argument("aoi_cells: not an aoi-grid experiment");
  const std::size_t cells = static_cast<std::size_t>(cfg.aoi.nx) * cfg.aoi.ny;
  const std::size_t runs = static_cast<std::size_t>(cfg.mc_runs);
  if (res.points.size() != 2 * cells || res.records.size() != 2 * cells * runs)
    throw std::invalid_argument("aoi_cells: result does not match the grid");
  auto mean_rs = [&](std::size_t point) {
    std::vector<double> v;
    for (std::size_t r = 0; r < runs; ++r) {
      const ExperimentRecord &rec = res.records[point * runs + r];
      if (rec.stall != StallCode::failed)
        v.push_back(rec.R_s);
    }
    return v.empty() ? std::nan("") : mean_stderr(v).mean;
  };
  std::vector<AoiCell> out;
  for (std::size_t c = 0; c < cells; ++c) {
    AoiCell cell;
    cell.x = res.points[c].rx_x;
    cell.y = res.points[c].rx_y;
    cell.mean_rs = mean_rs(c);
    cell.mean_rs_no_ris = mean_rs(cells + c);
    cell.boost_ratio = cell.mean_rs_no_ris > 0.0
                           ? cell.mean_rs / cell.mean_rs_no_ris
                           : std::numeric_limits<double>::infinity();
    out.push_back(cell);
  }
  return out;
}

const char *const kRecordsHeader =
    "realization,seed,variant,setup,P_dBm,L,Lambda,rx_x,rx_y,Nd,R_RX,R_E,R_s,"
    "R_E_ub,iterations,stall";

void write_records_csv(std::ostream &out,
                       const std::vector<ExperimentRecord> &records) {
  out << kRecordsHeader << '\n';
  for (const ExperimentRecord &r : records) {
    out << r.realization << ',' << r.seed << ',' << r.variant << ',' << r.setup
        << ',' << fmt(r.P_dBm) << ',' << r.L << ',' << r.Lambda << ','
        << fmt(r.rx_x) << ',' << fmt(r.rx_y) << ',' << r.Nd << ','
        << fmt(r.R_RX) << ',' << fmt(r.R_E) << ',' << fmt(r.R_s) << ','
        << fmt(r.R_E_ub) << ',' << r.iterations << ','
        << static_cast<int>(r.stall) << '\n';
  }
}

namespace {

std::vector<std::string> split_csv(const std::string &line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ','))
    out.push_back(field);
  if (!line.empty() && line.back() == ',')
    out.emplace_back();
  return out;
}

double to_double(const std::string &s) {
  char *end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw std::runtime_error("records.csv: bad number '" + s + "'");
  return v;
}

long long to_int(const std::string &s) {
  char *end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0')
    throw std::runtime_error("records.csv: bad integer '" + s + "'");
  return v;
}

} // namespace

std::vector<ExperimentRecord> read_records_csv(std::istream &in) {
  std::string line;
  if (!std::getline(in, line) || line != kRecordsHeader)
    throw std::runtime_error("records.csv: unexpected header");
  std::vector<ExperimentRecord> out;
  while (std::getline(in, line)) {
    if (line.empty())
      continue;
    const auto f = split_csv(line);
    if (f.size() != 16)
      throw std::runtime_error("records.csv: expected 16 fields");
    ExperimentRecord r;
    r.realization = static_cast<int>(to_int(f[0]));
    r.seed = std::strtoull(f[1].c_str(), nullptr, 10);
    r.variant = f[2];
    r.setup = f[3];
    r.P_dBm = to_double(f[4]);
    r.L = static_cast<int>(to_int(f[5]));
    r.Lambda = static_cast<int>(to_int(f[6]));
    r.rx_x = to_double(f[7]);
    r.rx_y = to_double(f[8]);
    r.Nd = static_cast<int>(to_int(f[9]));
    r.R_RX = to_double(f[10]);
    r.R_E = to_double(f[11]);
    r.R_s = to_double(f[12]);
    r.R_E_ub = to_double(f[13]);
    r.iterations = static_cast<int>(to_int(f[14]));
    r.stall = static_cast<StallCode>(to_int(f[15]));
    out.push_back(r);
  }
  return out;
}

void write_timing_csv(std::ostream &out,
                      const std::vector<ExperimentRecord> &records) {
  out << "realization,variant,P_dBm,L,Lambda,rx_x,rx_y,wall_seconds\n";
  for (const ExperimentRecord &r : records)
    out << r.realization << ',' << r.variant << ',' << fmt(r.P_dBm) << ','
        << r.L << ',' << r.Lambda << ',' << fmt(r.rx_x) << ',' << fmt(r.rx_y)
        << ',' << fmt(r.wall_seconds) << '\n';
}

namespace {

json stat_json(const std::vector<double> &v) {
  if (v.empty())
    return nullptr;
  const MeanStderr m = mean_stderr(v);
  return {{"mean", m.mean}, {"stderr", m.stderr_}};
}

json cdf_json(const std::vector<double> &v) {
  json out = json::array();
  if (v.empty())
    return out;
  for (const CdfPoint &p : empirical_cdf(v))
    out.push_back({p.value, p.probability});
  return out;
}

} // namespace

json summary_json(const SimulationConfig &cfg, const ExperimentResult &res) {
  json j;
  j["experiment"] = to_string(cfg.experiment);
  j["config_hash"] = hash_hex(cfg.hash());
  j["seed"] = cfg.seed;
  j["mc_runs"] = cfg.mc_runs;
  j["config"] = cfg.to_json();
  j["config"].erase("out_dir");
  j["config"].erase("threads");
  const std::size_t runs = static_cast<std::size_t>(cfg.mc_runs);
  json points = json::array();
  json failures = json::array();
  for (std::size_t p = 0; p < res.points.size(); ++p) {
    const SweepPoint &pt = res.points[p];
    std::vector<double> rx, e, s, ub;
    std::vector<int> nd;
    int failed = 0, stalled = 0;
    for (std::size_t r = 0; r < runs; ++r) {
      const ExperimentRecord &rec = res.records[p * runs + r];
      if (rec.stall == StallCode::failed) {
        ++failed;
        failures.push_back({{"point", p},
                            {"realization", rec.realization},
                            {"error", rec.error}});
        continue;
      }
      if (rec.stall == StallCode::stalled)
        ++stalled;
      rx.push_back(rec.R_RX);
      e.push_back(rec.R_E);
      s.push_back(rec.R_s);
      ub.push_back(rec.R_E_ub);
      nd.push_back(rec.Nd);
    }
    json hist = json::object();
    if (!nd.empty())
      for (const auto &[k, f] : histogram(nd))
        hist[std::to_string(k)] = f;
    points.push_back(
        {{"variant", to_string(pt.variant)},
         {"P_dBm", pt.P_dBm},
         {"L", pt.variant == Variant::no_legit_ris ? 0 : pt.L},
         {"Lambda", pt.Lambda},
         {"rx_x", pt.rx_x},
         {"rx_y", pt.rx_y},
         {"runs", runs},
         {"failed", failed},
         {"stalled", stalled},
         {"R_RX", stat_json(rx)},
         {"R_E", stat_json(e)},
         {"R_s", stat_json(s)},
         {"R_E_ub", stat_json(ub)},
         {"Nd_histogram", hist},
         {"cdf", {{"R_RX", cdf_json(rx)}, {"R_E", cdf_json(e)}, {"R_s", cdf_json(s)}}}});
  }
  j["points"] = points;
  j["failures"] = failures;
  if (cfg.experiment == ExperimentKind::aoi_grid) {
    j["aoi"] = {{"nx", cfg.aoi.nx},
                {"ny", cfg.aoi.ny},
                {"x0", cfg.aoi.x0},
                {"y0", cfg.aoi.y0},
                {"dx", cfg.aoi.dx},
                {"dy", cfg.aoi.dy},
                {"width", (cfg.aoi.nx - 1) * cfg.aoi.dx},
                {"length", (cfg.aoi.ny - 1) * cfg.aoi.dy},
                {"reference_max_rs", {{"no_ris", 4.72}, {"with_ris", 17.67}}}};
  }
  return j;
}

void write_aoi_csv(std::ostream &out, const std::vector<AoiCell> &cells) {
  out << "x,y,mean_rs,mean_rs_no_ris,boost_ratio\n";
  for (const AoiCell &c : cells)
    out << fmt(c.x) << ',' << fmt(c.y) << ',' << fmt(c.mean_rs) << ','
        << fmt(c.mean_rs_no_ris) << ',' << fmt(c.boost_ratio) << '\n';
}

void write_outputs(const SimulationConfig &cfg, const ExperimentResult &res) {
  namespace fs = std::filesystem;
  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  auto open = [&](const char *name) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f)
      throw std::runtime_error("cannot write " + (dir / name).string());
    return f;
  };
  {
    std::ofstream f = open("records.csv");
    write_records_csv(f, res.records);
  }
  {
    std::ofstream f = open("timing.csv");
    write_timing_csv(f, res.records);
  }
  {
    std::ofstream f = open("summary.json");
    f << summary_json(cfg, res).dump(2) << '\n';
  }
  if (cfg.experiment == ExperimentKind::aoi_grid) {
    std::ofstream f = open("aoi.csv");
    write_aoi_csv(f, aoi_cells(cfg, res));
  }
}

} // namespace rissec
