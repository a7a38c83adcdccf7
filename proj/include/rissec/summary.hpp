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

// Aggregates over Monte-Carlo samples: mean with standard error, empirical
// CDFs and stream-count histograms.

#include <functional>
#include <map>
#include <vector>

namespace rissec {

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0; // sample sd / sqrt(n); 0 for a single sample
  std::size_t count = 0;
};

/// Throws std::invalid_argument on empty input.
MeanStderr mean_stderr(const std::vector<double> &samples);

struct CdfPoint {
  double value = 0.0;
  double probability = 0.0; // P(X <= value)
};

/// Right-continuous step function: one point per distinct sample value.
std::vector<CdfPoint> empirical_cdf(std::vector<double> samples);

/// F(x) of a step CDF built by empirical_cdf.
double cdf_at(const std::vector<CdfPoint> &cdf, double x);

/// sup_x |F_n(x) - F(x)| for a continuous reference CDF F.
double ks_distance(std::vector<double> samples,
                   const std::function<double(double)> &reference);

/// Fraction of samples per distinct value; fractions sum to 1.
std::map<int, double> histogram(const std::vector<int> &samples);

} // namespace rissec
