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

#include "rissec/sim_config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace rissec {

using nlohmann::json;

std::string to_string(ExperimentKind k) {
  switch (k) {
  case ExperimentKind::rates_vs_power:
    return "rates-vs-power";
  case ExperimentKind::secrecy_vs_l:
    return "secrecy-vs-L";
  case ExperimentKind::stream_histogram:
    return "stream-histogram";
  case ExperimentKind::rate_cdf:
    return "rate-cdf";
  case ExperimentKind::aoi_grid:
    return "aoi-grid";
  }
  return "unknown";
}

ExperimentKind experiment_from_string(const std::string &s) {
  for (ExperimentKind k :
       {ExperimentKind::rates_vs_power, ExperimentKind::secrecy_vs_l,
        ExperimentKind::stream_histogram, ExperimentKind::rate_cdf,
        ExperimentKind::aoi_grid})
    if (to_string(k) == s)
      return k;
  throw ConfigError("unknown experiment '" + s + "'");
}

SimulationConfig default_config(ExperimentKind kind) {
  SimulationConfig c;
  c.experiment = kind;
  c.variants = {Variant::statistical};
  c.ris_elements = {20};
  c.malicious_elements = {100};
  switch (kind) {
  case ExperimentKind::rates_vs_power:
    c.power_dbm = {0, 10, 20, 30, 40};
    c.malicious_elements = {0, 20, 100};
    c.variants = {Variant::statistical, Variant::no_legit_ris};
    break;
  case ExperimentKind::secrecy_vs_l:
    c.power_dbm = {25};
    c.ris_elements = {10, 20, 40};
    break;
  case ExperimentKind::stream_histogram:
    c.power_dbm = {10, 20, 30, 40};
    break;
  case ExperimentKind::rate_cdf:
    c.power_dbm = {30};
    c.variants = {Variant::statistical, Variant::perfect};
    break;
  case ExperimentKind::aoi_grid:
    c.power_dbm = {25};
    break;
  }
  return c;
}

namespace {

void fail(const std::string &where, const std::string &what) {
  throw ConfigError(where + ": " + what);
}

void check_keys(const json &obj, const std::set<std::string> &allowed,
                const std::string &where) {
  if (!obj.is_object())
    fail(where, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      fail(where, "unknown key '" + it.key() + "'");
}

double get_number(const json &v, const std::string &where) {
  if (!v.is_number())
    fail(where, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d))
    fail(where, "expected a finite number");
  return d;
}

int get_int(const json &v, const std::string &where) {
  if (!v.is_number_integer())
    fail(where, "expected an integer");
  const auto i = v.get<long long>();
  if (i < -2147483647LL || i > 2147483647LL)
    fail(where, "integer out of range");
  return static_cast<int>(i);
}

std::string get_string(const json &v, const std::string &where) {
  if (!v.is_string())
    fail(where, "expected a string");
  return v.get<std::string>();
}

template <class T, class F>
std::vector<T> get_list(const json &v, const std::string &where, F item) {
  std::vector<T> out;
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i)
      out.push_back(item(v[i], where + "[" + std::to_string(i) + "]"));
  } else {
    out.push_back(item(v, where)); // a scalar means a one-point sweep
  }
  return out;
}

void apply_line_search(LineSearchConfig &ls, const json &doc,
                       const std::string &where) {
  check_keys(doc,
             {"rho", "mu", "nu", "max_backtracks", "eps_grad", "max_iters"},
             where);
  if (doc.contains("rho"))
    ls.rho = get_number(doc["rho"], where + ".rho");
  if (doc.contains("mu"))
    ls.mu = get_number(doc["mu"], where + ".mu");
  if (doc.contains("nu"))
    ls.nu = get_number(doc["nu"], where + ".nu");
  if (doc.contains("max_backtracks"))
    ls.max_backtracks = get_int(doc["max_backtracks"], where + ".max_backtracks");
  if (doc.contains("eps_grad"))
    ls.eps_grad = get_number(doc["eps_grad"], where + ".eps_grad");
  if (doc.contains("max_iters"))
    ls.max_iters = get_int(doc["max_iters"], where + ".max_iters");
}

void apply_solver(SimulationConfig &c, const json &doc) {
  const std::string w = "solver";
  check_keys(doc,
             {"epsilon", "max_inner_iters", "kappa_tolerance",
              "lambda_tolerance", "no_an_start", "eve_epsilon",
              "eve_max_rounds", "line_search"},
             w);
  if (doc.contains("epsilon"))
    c.legit.epsilon = get_number(doc["epsilon"], w + ".epsilon");
  if (doc.contains("max_inner_iters"))
    c.legit.max_inner_iters =
        get_int(doc["max_inner_iters"], w + ".max_inner_iters");
  if (doc.contains("kappa_tolerance"))
    c.legit.kappa_tolerance =
        get_number(doc["kappa_tolerance"], w + ".kappa_tolerance");
  if (doc.contains("lambda_tolerance"))
    c.legit.lambda_tolerance =
        get_number(doc["lambda_tolerance"], w + ".lambda_tolerance");
  if (doc.contains("no_an_start")) {
    if (!doc["no_an_start"].is_boolean())
      fail(w + ".no_an_start", "expected true or false");
    c.legit.no_an_start = doc["no_an_start"].get<bool>();
  }
  if (doc.contains("eve_epsilon"))
    c.eve.epsilon = get_number(doc["eve_epsilon"], w + ".eve_epsilon");
  if (doc.contains("eve_max_rounds"))
    c.eve.max_rounds = get_int(doc["eve_max_rounds"], w + ".eve_max_rounds");
  if (doc.contains("line_search")) {
    apply_line_search(c.legit.manifold, doc["line_search"],
                      w + ".line_search");
    c.eve.manifold = c.legit.manifold;
  }
}

void apply_aoi(AoiSettings &a, const json &doc) {
  const std::string w = "aoi";
  check_keys(doc, {"nx", "ny", "x0", "y0", "dx", "dy", "height",
                   "ris_l_fraction"},
             w);
  if (doc.contains("nx"))
    a.nx = get_int(doc["nx"], w + ".nx");
  if (doc.contains("ny"))
    a.ny = get_int(doc["ny"], w + ".ny");
  if (doc.contains("x0"))
    a.x0 = get_number(doc["x0"], w + ".x0");
  if (doc.contains("y0"))
    a.y0 = get_number(doc["y0"], w + ".y0");
  if (doc.contains("dx"))
    a.dx = get_number(doc["dx"], w + ".dx");
  if (doc.contains("dy"))
    a.dy = get_number(doc["dy"], w + ".dy");
  if (doc.contains("height"))
    a.height = get_number(doc["height"], w + ".height");
  if (doc.contains("ris_l_fraction"))
    a.ris_l_fraction = get_number(doc["ris_l_fraction"], w + ".ris_l_fraction");
}

} // namespace

SimulationConfig apply_json(SimulationConfig c, const json &doc) {
  check_keys(doc,
             {"experiment", "setup", "ris_l_fraction", "N", "M", "K",
              "power_dbm", "ris_elements", "malicious_elements", "mc_runs",
              "seed", "noise_dbm", "rice_db", "correlation", "variants",
              "out_dir", "threads", "solver", "aoi"},
             "config");
  if (doc.contains("experiment")) {
    const ExperimentKind k =
        experiment_from_string(get_string(doc["experiment"], "experiment"));
    if (k != c.experiment)
      fail("experiment", "config is for '" + to_string(k) +
                             "' but '" + to_string(c.experiment) +
                             "' was requested");
  }
  if (doc.contains("setup")) {
    c.setup = get_string(doc["setup"], "setup");
    // Setup (b) is the larger system
    if (c.setup == "b" && !doc.contains("N"))
      c.N = 16;
    if (c.setup == "b" && !doc.contains("K"))
      c.K = 8;
  }
  if (doc.contains("ris_l_fraction"))
    c.ris_l_fraction = get_number(doc["ris_l_fraction"], "ris_l_fraction");
  if (doc.contains("N"))
    c.N = get_int(doc["N"], "N");
  if (doc.contains("M"))
    c.M = get_int(doc["M"], "M");
  if (doc.contains("K"))
    c.K = get_int(doc["K"], "K");
  if (doc.contains("power_dbm"))
    c.power_dbm = get_list<double>(doc["power_dbm"], "power_dbm", get_number);
  if (doc.contains("ris_elements"))
    c.ris_elements = get_list<int>(doc["ris_elements"], "ris_elements", get_int);
  if (doc.contains("malicious_elements"))
    c.malicious_elements =
        get_list<int>(doc["malicious_elements"], "malicious_elements", get_int);
  if (doc.contains("mc_runs"))
    c.mc_runs = get_int(doc["mc_runs"], "mc_runs");
  if (doc.contains("seed")) {
    const json &s = doc["seed"];
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0))
      fail("seed", "expected a non-negative 64-bit integer");
    c.seed = s.get<std::uint64_t>();
  }
  if (doc.contains("noise_dbm"))
    c.noise_dbm = get_number(doc["noise_dbm"], "noise_dbm");
  if (doc.contains("rice_db"))
    c.rice_db = get_number(doc["rice_db"], "rice_db");
  if (doc.contains("correlation"))
    c.correlation = get_number(doc["correlation"], "correlation");
  if (doc.contains("variants")) {
    c.variants = get_list<Variant>(
        doc["variants"], "variants", [](const json &v, const std::string &w) {
          try {
            return variant_from_string(get_string(v, w));
          } catch (const std::invalid_argument &e) {
            throw ConfigError(w + ": " + e.what());
          }
        });
  }
  if (doc.contains("out_dir"))
    c.out_dir = get_string(doc["out_dir"], "out_dir");
  if (doc.contains("threads"))
    c.threads = get_int(doc["threads"], "threads");
  if (doc.contains("solver"))
    apply_solver(c, doc["solver"]);
  if (doc.contains("aoi"))
    apply_aoi(c.aoi, doc["aoi"]);
  c.validate();
  return c;
}

void SimulationConfig::validate() const {
  if (setup != "a" && setup != "b" && setup != "custom")
    fail("setup", "expected a, b or custom");
  if (!(ris_l_fraction > 0.0 && ris_l_fraction <= 1.0))
    fail("ris_l_fraction", "must lie in (0, 1]");
  if (N < 1 || M < 1 || K < 1)
    fail("antennas", "N, M and K must be >= 1");
  if (K < M)
    fail("antennas", "Eve needs K >= M antennas");
  if (power_dbm.empty())
    fail("power_dbm", "sweep must not be empty");
  if (ris_elements.empty() || malicious_elements.empty())
    fail("ris_elements", "element sweeps must not be empty");
  for (int l : ris_elements)
    if (l < 1)
      fail("ris_elements", "must be >= 1 (use the no-ris variant for L = 0)");
  for (int l : malicious_elements)
    if (l < 0)
      fail("malicious_elements", "must be >= 0");
  if (mc_runs < 1)
    fail("mc_runs", "must be >= 1");
  if (!(correlation >= 0.0 && correlation < 1.0))
    fail("correlation", "must lie in [0, 1)");
  if (variants.empty())
    fail("variants", "must not be empty");
  if (threads < 0)
    fail("threads", "must be >= 0");
  if (out_dir.empty())
    fail("out_dir", "must not be empty");
  try {
    legit.validate();
  } catch (const std::invalid_argument &e) {
    fail("solver", e.what());
  }
  if (!(eve.epsilon > 0.0) || eve.max_rounds < 1)
    fail("solver", "Eve tolerances must be positive");
  if (experiment == ExperimentKind::aoi_grid) {
    if (aoi.nx < 1 || aoi.ny < 1)
      fail("aoi", "grid needs at least one point per axis");
    if (!(aoi.dx > 0.0) || !(aoi.dy > 0.0) || !(aoi.height > 0.0))
      fail("aoi", "spacings and height must be positive");
    if (!(aoi.ris_l_fraction > 0.0 && aoi.ris_l_fraction <= 1.0))
      fail("aoi.ris_l_fraction", "must lie in (0, 1]");
    if (power_dbm.size() != 1 || ris_elements.size() != 1 ||
        malicious_elements.size() != 1)
      fail("aoi", "the grid runs a single power, L and Lambda");
    if (variants.front() == Variant::no_legit_ris)
      fail("variants", "the first variant of an aoi grid must use the RIS");
  }
}

json SimulationConfig::to_json() const {
  json j;
  j["experiment"] = to_string(experiment);
  j["setup"] = setup;
  j["ris_l_fraction"] = ris_l_fraction;
  j["N"] = N;
  j["M"] = M;
  j["K"] = K;
  j["power_dbm"] = power_dbm;
  j["ris_elements"] = ris_elements;
  j["malicious_elements"] = malicious_elements;
  j["mc_runs"] = mc_runs;
  j["seed"] = seed;
  j["noise_dbm"] = noise_dbm;
  j["rice_db"] = rice_db;
  j["correlation"] = correlation;
  std::vector<std::string> vs;
  for (Variant v : variants)
    vs.push_back(to_string(v));
  j["variants"] = vs;
  j["out_dir"] = out_dir;
  j["threads"] = threads;
  const LineSearchConfig &ls = legit.manifold;
  j["solver"] = {{"epsilon", legit.epsilon},
                 {"max_inner_iters", legit.max_inner_iters},
                 {"kappa_tolerance", legit.kappa_tolerance},
                 {"lambda_tolerance", legit.lambda_tolerance},
                 {"no_an_start", legit.no_an_start},
                 {"eve_epsilon", eve.epsilon},
                 {"eve_max_rounds", eve.max_rounds},
                 {"line_search",
                  {{"rho", ls.rho},
                   {"mu", ls.mu},
                   {"nu", ls.nu},
                   {"max_backtracks", ls.max_backtracks},
                   {"eps_grad", ls.eps_grad},
                   {"max_iters", ls.max_iters}}}};
  if (experiment == ExperimentKind::aoi_grid)
    j["aoi"] = {{"nx", aoi.nx},         {"ny", aoi.ny}, {"x0", aoi.x0},
                {"y0", aoi.y0},         {"dx", aoi.dx}, {"dy", aoi.dy},
                {"height", aoi.height}, {"ris_l_fraction", aoi.ris_l_fraction}};
  return j;
}

std::uint64_t SimulationConfig::hash() const {
  json j = to_json();
  j.erase("out_dir");
  j.erase("threads");
  const std::string text = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

SimulationConfig load_config(const std::string &path, ExperimentKind kind) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error &e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  return apply_json(default_config(kind), doc);
}

} // namespace rissec
