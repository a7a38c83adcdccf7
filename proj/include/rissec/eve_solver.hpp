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

// Eve's design: alternate between her combiner W and the malicious RIS
// phases psi to maximize the rate she believes she gets, knowing only G2 and
// the LOS part g1 g2^H of the BS -> malicious RIS channel.

#include "rissec/manifold.hpp"
#include "rissec/rates.hpp"

#include <vector>

namespace rissec {

struct EveSolverConfig {
  double epsilon = 1e-6;
  int max_rounds = 100;
  LineSearchConfig manifold;
};

struct EveProblem {
  ComplexMatrix G2;       // K x Lambda
  ComplexVector g1;       // Lambda
  ComplexVector g2;       // N
  ComplexMatrix G1_exact; // Lambda x N; when non-empty Eve knows all of G1
  double P = 1.0;
  double sigma2 = 1.0;
  int Nd = 1;
  EveSolverConfig cfg;

  int K() const { return static_cast<int>(G2.rows()); }
  int N() const {
    return static_cast<int>(G1_exact.size() ? G1_exact.cols() : g2.size());
  }
  int Lambda() const { return static_cast<int>(G2.cols()); }
  /// The BS -> malicious RIS channel as Eve knows it.
  ComplexMatrix G1_known() const;
  void validate() const;
};

struct EveSolution {
  EveDesign design;
  double believed_rate = 0.0; // bps/Hz
  std::vector<double> trace;  // believed rate after each round
  int rounds = 0;
  bool degenerate = false; // H_bar = 0, any unit-norm W
  bool stalled = false;    // a psi sub-solve or the round loop hit its cap
};

/// Believed rate for the given W and psi, via the full matrix form.
double eve_believed_rate(const EveProblem &prob, const ComplexMatrix &W,
                         const ComplexVector &psi);

/// One MSE-based combiner step starting from W_prev.
ComplexMatrix update_w(const EveProblem &prob, const ComplexVector &psi,
                       const ComplexMatrix &W_prev, bool *degenerate = nullptr);

/// -R_bar_E(psi) for fixed W, in bps/Hz, with its Euclidean gradient.
ManifoldObjective build_psi_objective(const EveProblem &prob,
                                      const ComplexMatrix &W);

/// Scaled dominant left singular block of H_bar, normalized to ||W||_F = 1.
ComplexMatrix initial_eve_combiner(const EveProblem &prob,
                                   const ComplexVector &psi,
                                   bool *degenerate = nullptr);

EveSolution solve_eve(const EveProblem &prob);

} // namespace rissec
