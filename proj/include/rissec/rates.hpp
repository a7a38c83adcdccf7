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

// Rate expressions: actual RX and Eve rates, the rate Eve believes when
// designing her malicious RIS, and the BS-side instantaneous and ergodic
// upper-bound Eve rates. All rates are in bps/Hz.

#include "rissec/channel.hpp"
#include "rissec/numerics.hpp"

namespace rissec {

struct LegitimateDesign {
  ComplexMatrix V;      // N x Nd
  ComplexMatrix Z;      // N x N, equals Ztilde Ztilde^H
  ComplexMatrix Ztilde; // N x N
  ComplexMatrix U;      // M x Nd
  ComplexVector phi;    // L
  int Nd = 1;

  double power() const;
};

struct EveDesign {
  ComplexMatrix W;   // K x Nd
  ComplexVector psi; // Lambda
};

struct RateReport {
  double R_RX = 0.0;
  double R_E = 0.0;
  double R_s = 0.0;
  double R_E_ub = 0.0;
  bool regularized = false;
};

struct EffectiveChannels {
  ComplexMatrix H_tilde;  // H + H2 Phi H1
  ComplexMatrix HE_tilde; // H_E + G_E Phi H1 + G2 Psi G1
  ComplexMatrix HE_hat;   // H_E + G_E Phi H1
};

EffectiveChannels effective_channels(const ChannelSet &ch,
                                     const ComplexVector &phi,
                                     const ComplexVector &psi);

/// H + H2 diag(phi) H1.
ComplexMatrix cascade(const ComplexMatrix &direct, const ComplexMatrix &second,
                      const ComplexVector &phases, const ComplexMatrix &first);

/// log2|I + S^{-1/2} G S^{-H/2}| with S the interference-plus-noise Gram and
/// G the signal Gram. S is ridge-regularized by 1e-12 max|S| when it is not
/// positive definite; `regularized` reports that.
double capacity_rate(const ComplexMatrix &signal, const ComplexMatrix &noise,
                     bool *regularized = nullptr);

/// Rate of a linear combiner C on y = G x + n with E[xx^H] split into the
/// useful VV^H and the interfering Z: log2|I + C^H G V V^H G^H C
/// (C^H (sigma2 I + G Z G^H) C)^{-1}|.
double combiner_rate(const ComplexMatrix &channel, const ComplexMatrix &V,
                     const ComplexMatrix &Z, const ComplexMatrix &combiner,
                     double sigma2, bool *regularized = nullptr);

double rate_rx(const ChannelSet &ch, const LegitimateDesign &d, double sigma2,
               bool *regularized = nullptr);

double rate_eve_actual(const ChannelSet &ch, const LegitimateDesign &d,
                       const EveDesign &e, double sigma2,
                       bool *regularized = nullptr);

/// Eve's believed rate with H_bar = G2 diag(psi) G1_known and the isotropic
/// precoder V V^H = (P/N) I: log2|I + sigma^-2 W^H H_bar VV^H H_bar^H W C^-1|,
/// C = W^H W.
double rate_eve_believed(const ComplexMatrix &G2, const ComplexMatrix &G1_known,
                         double P, const ComplexMatrix &W,
                         const ComplexVector &psi, double sigma2);

/// D_hat = diag(g1)^H G2^H W C^-1 W^H G2 diag(g1).
ComplexMatrix eve_d_hat(const ComplexMatrix &G2, const ComplexVector &g1,
                        const ComplexMatrix &W);

/// Reduced form log2(1 + sigma_t^-2 psi^H D_hat psi) for G1_known = g1 g2^H,
/// sigma_t^-2 = sigma^-2 (P/N) ||g2||^2.
double rate_eve_believed_reduced(const ComplexMatrix &G2,
                                 const ComplexVector &g1,
                                 const ComplexVector &g2, double P,
                                 const ComplexMatrix &W,
                                 const ComplexVector &psi, double sigma2);

/// Q_HE + H1^H Phi^H Q_GE Phi H1.
ComplexMatrix eve_q_matrix(const ComplexMatrix &q_he, const ComplexMatrix &q_ge,
                           const ComplexMatrix &H1, const ComplexVector &phi);

/// Ergodic upper bound log2|I + sigma^-2 Q Xbar| - log2|I + sigma^-2 Q Z|,
/// Xbar = VV^H + Z.
double rate_eve_bs_upper(const StatisticalCsi &csi, const ChannelSet &ch,
                         const ComplexMatrix &V, const ComplexMatrix &Z,
                         const ComplexVector &phi, double sigma2);

/// Same bound for an already assembled Q.
double rate_eve_bound_q(const ComplexMatrix &Q, const ComplexMatrix &V,
                        const ComplexMatrix &Z, double sigma2);

/// log2|I + He V V^H He^H (sigma2 I + He Z He^H)^-1|.
double rate_eve_bs_inst(const ComplexMatrix &HE_hat, const ComplexMatrix &V,
                        const ComplexMatrix &Z, double sigma2);

/// Actual rates of a realization; R_E_ub is evaluated with the statistics the
/// BS designed with.
RateReport evaluate_rates(const ChannelSet &ch, const StatisticalCsi &csi,
                          const LegitimateDesign &d, const EveDesign &e,
                          double sigma2);

} // namespace rissec
