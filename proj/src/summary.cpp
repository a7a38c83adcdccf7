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

#include "rissec/summary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rissec {

MeanStderr mean_stderr(const std::vector<double> &samples) {
  if (samples.empty())
    throw std::invalid_argument("mean_stderr: no samples");
  MeanStderr out;
  out.count = samples.size();
  double sum = 0.0;
  for (double x : samples)
    sum += x;
  out.mean = sum / static_cast<double>(out.count);
  if (out.count > 1) {
    double ss = 0.0;
    for (double x : samples)
      ss += (x - out.mean) * (x - out.mean);
    const double n = static_cast<double>(out.count);
    out.stderr_ = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return out;
}

std::vector<CdfPoint> empirical_cdf(std::vector<double> samples) {
  if (samples.empty())
    throw std::invalid_argument("empirical_cdf: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  std::vector<CdfPoint> out;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (i + 1 < samples.size() && samples[i + 1] == samples[i])
      continue;
    out.push_back({samples[i], static_cast<double>(i + 1) / n});
  }
  out.back().probability = 1.0;
  return out;
}

double cdf_at(const std::vector<CdfPoint> &cdf, double x) {
  auto it = std::upper_bound(
      cdf.begin(), cdf.end(), x,
      [](double v, const CdfPoint &p) { return v < p.value; });
  if (it == cdf.begin())
    return 0.0;
  return std::prev(it)->probability;
}

double ks_distance(std::vector<double> samples,
                   const std::function<double(double)> &reference) {
  if (samples.empty())
    throw std::invalid_argument("ks_distance: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = reference(samples[i]);
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
  }
  return d;
}

std::map<int, double> histogram(const std::vector<int> &samples) {
  if (samples.empty())
    throw std::invalid_argument("histogram: no samples");
  std::map<int, std::size_t> counts;
  for (int s : samples)
    ++counts[s];
  std::map<int, double> out;
  const double n = static_cast<double>(samples.size());
  for (const auto &[k, c] : counts)
    out[k] = static_cast<double>(c) / n;
  return out;
}

} // namespace rissec
