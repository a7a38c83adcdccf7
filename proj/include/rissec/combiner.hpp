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

// Norm-constrained linear combiner update shared by the RX combiner U and
// Eve's combiner W:
//
//   min tr(S M(U)) s.t. ||U||_F^2 <= budget
//
// whose stationarity condition E U F + kappa U = J is solved in vectorized
// form vec(U) = (F^T kron E + kappa I)^+ vec(J), with kappa found by bisection
// on sum_p |c_p|^2 / (xi_p + kappa)^2 = budget.

#include "rissec/numerics.hpp"

namespace rissec {

struct CombinerSystem {
  HermitianEig eig;     // of F^T kron E
  ComplexVector coeffs; // Qbar^H vec(J)
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
};

CombinerSystem make_combiner_system(const ComplexMatrix &E,
                                    const ComplexMatrix &F,
                                    const ComplexMatrix &J);

/// sum_p |c_p|^2 / (xi_p + kappa)^2 over the non-null eigenvalues; the
/// left-hand side of the kappa equation. Equals ||U(kappa)||_F^2.
double combiner_norm2(const CombinerSystem &sys, double kappa);

/// U(kappa) = unvec(Qbar (Xi + kappa I)^+ Qbar^H vec(J)).
ComplexMatrix combiner_at(const CombinerSystem &sys, double kappa);

struct CombinerSolution {
  ComplexMatrix U;
  double kappa = 0.0;
  double norm2 = 0.0;
  bool bracket_failed = false;
};

CombinerSolution solve_combiner(const ComplexMatrix &E, const ComplexMatrix &F,
                                const ComplexMatrix &J, double budget = 1.0,
                                double tolerance = 1e-12);

/// Polar factor of U scaled to ||.||_F = 1. Its range contains range(U), so
/// a projection-based rate never decreases, and it stays full column rank
/// when a column of U fades out.
ComplexMatrix balanced_combiner(const ComplexMatrix &U);

} // namespace rissec
