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

// Secrecy design for the legitimate link: block coordinate ascent over the
// auxiliary MSE variables, the combiner U, the precoder V with artificial
// noise factor Ztilde, and the RIS phases phi (minorize-maximize with a
// manifold CG inner solver), repeated for every stream count Nd.
//
// Rates inside the solver are natural-log quantities; reported objectives are
// in bps/Hz. The lower bound being maximized is
//   R_RX(U, V, Z, phi) - R_E^ub(V, Z, phi)
// where R_E^ub uses only the second moments Q_HE and Q_GE of Eve's channels.

#include "rissec/manifold.hpp"
#include "rissec/rates.hpp"

#include <string>
#include <vector>

namespace rissec {

enum class Variant { statistical, perfect, no_legit_ris };

std::string to_string(Variant v);
Variant variant_from_string(const std::string &s);

struct LegitSolverConfig {
  double epsilon = 1e-6;
  int max_inner_iters = 200;
  double kappa_tolerance = 1e-12;
  double lambda_tolerance = 1e-12;
  /// Also run from the no-artificial-noise start and keep the better result.
  bool no_an_start = true;
  LineSearchConfig manifold;

  void validate() const;
};

/// Everything the BS knows when designing.
struct LegitProblem {
  ComplexMatrix H;    // M x N
  ComplexMatrix H1;   // L x N
  ComplexMatrix H2;   // M x L
  ComplexMatrix q_he; // N x N
  ComplexMatrix q_ge; // L x L
  double P = 1.0;
  double sigma2 = 1.0;

  int N() const { return static_cast<int>(H.cols()); }
  int M() const { return static_cast<int>(H.rows()); }
  int L() const { return static_cast<int>(H1.rows()); }
  void validate() const;
  /// Same problem with channels scaled so that the noise variance is 1.
  LegitProblem normalized() const;
};

LegitProblem make_legit_problem(const ChannelSet &ch, const StatisticalCsi &csi,
                                double P, double sigma2);

struct AuxiliaryVars {
  ComplexMatrix A1; // Nd x Nd
  ComplexMatrix A2; // N x N
  ComplexMatrix S1; // Nd x Nd
  ComplexMatrix S2; // N x N
  ComplexMatrix S3; // N x N
  bool regularized = false;
};

/// H + H2 diag(phi) H1.
ComplexMatrix legit_h_tilde(const LegitProblem &p, const ComplexVector &phi);
/// Q_HE + H1^H Phi^H Q_GE Phi H1.
ComplexMatrix legit_q(const LegitProblem &p, const ComplexVector &phi);

AuxiliaryVars update_aux(const LegitProblem &p, const LegitimateDesign &d);

struct CombinerUpdate {
  ComplexMatrix U;
  double kappa = 0.0;
  bool bracket_failed = false;
};
CombinerUpdate update_u(const LegitProblem &p, const LegitimateDesign &d,
                        const AuxiliaryVars &aux);

/// Pieces of the combiner equation E U F + kappa U = J.
struct CombinerTerms {
  ComplexMatrix E, F, J;
};
CombinerTerms combiner_terms(const LegitProblem &p, const LegitimateDesign &d,
                             const AuxiliaryVars &aux);

struct PrecoderUpdate {
  ComplexMatrix V;
  ComplexMatrix Ztilde;
  double lambda = 0.0;
  double power = 0.0;
  bool bracket_failed = false;
};

/// Quadratic/linear terms of the (V, Ztilde) subproblem.
struct PrecoderTerms {
  ComplexMatrix RV1, RV2, RZ1, RZ2;
};
PrecoderTerms precoder_terms(const LegitProblem &p, const LegitimateDesign &d,
                             const AuxiliaryVars &aux);
PrecoderUpdate update_vz(const LegitProblem &p, const LegitimateDesign &d,
                         const AuxiliaryVars &aux, double tolerance = 1e-12);

/// g(phi | anchor) = -(phi^H T phi + 2 Re{phi^H conj(v)} + c).
struct PhiSurrogate {
  ComplexMatrix T;
  ComplexVector v;
  double c = 0.0;
  ComplexVector anchor;

  double value(const ComplexVector &phi) const;
  /// Euclidean gradient of -g, i.e. 2 (T phi + conj(v)).
  ComplexVector descent_gradient(const ComplexVector &phi) const;
};

/// Builds the surrogate at d.phi. `aux` must be current for d.
PhiSurrogate build_phi_surrogate(const LegitProblem &p,
                                 const LegitimateDesign &d,
                                 const AuxiliaryVars &aux);

/// The phi-dependent objective being minorized (nats): the RX MSE bound
/// with A1, S1 frozen plus the two Eve log-determinant terms.
double phi_objective(const LegitProblem &p, const LegitimateDesign &d,
                     const AuxiliaryVars &aux, const ComplexVector &phi);

ManifoldResult update_phi(const PhiSurrogate &s, const LegitSolverConfig &cfg);

/// R_RX(U, V, Z, phi) - R_E^ub(V, Z, phi) in bps/Hz.
double lower_bound_objective(const LegitProblem &p, const LegitimateDesign &d);

LegitimateDesign initial_design(const LegitProblem &p, int Nd);
/// initial_design with all power on V and Z = 0. The Z update keeps Z at
/// zero from here, so this start explores the designs without artificial noise.
LegitimateDesign no_an_design(const LegitProblem &p, int Nd);

struct IterationLog {
  double objective = 0.0; // bps/Hz after the iteration
  double kappa = 0.0;
  double lambda = 0.0;
  double power = 0.0;
  double u_norm2 = 0.0;
  double kappa_slackness = 0.0;  // |kappa (||U||^2 - 1)|
  double lambda_slackness = 0.0; // |lambda (power - P)| / P
  double phi_grad_norm2 = 0.0;   // manifold CG exit gradient
  bool phi_stalled = false;
};

struct FixedNdResult {
  LegitimateDesign design;
  std::vector<double> objective_trace; // entry 0 at the initial point
  std::vector<IterationLog> iterations;
  double objective = 0.0;
  bool converged = false;
  bool stalled = false;
  bool regularized = false;
};

FixedNdResult solve_fixed_nd(const LegitProblem &p, int Nd,
                             const LegitSolverConfig &cfg);

struct LegitResult {
  LegitimateDesign design; // in the caller's units
  int Nd = 1;
  double objective = 0.0;
  std::vector<FixedNdResult> per_nd; // index m - 1
  int iterations = 0;                // of the chosen Nd
  bool stalled = false;
};

LegitResult solve_legit(const LegitProblem &p, const LegitSolverConfig &cfg);

} // namespace rissec
