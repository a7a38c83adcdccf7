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

#include "rissec/rates.hpp"

#include <algorithm>
#include <cmath>

namespace rissec {

double LegitimateDesign::power() const {
  return V.squaredNorm() + Z.trace().real();
}

ComplexMatrix cascade(const ComplexMatrix &direct, const ComplexMatrix &second,
                      const ComplexVector &phases, const ComplexMatrix &first) {
  if (phases.size() == 0)
    return direct;
  if (second.cols() != phases.size() || first.rows() != phases.size() ||
      second.rows() != direct.rows() || first.cols() != direct.cols())
    throw DimensionError("cascade: shape mismatch");
  return direct + second * phases.asDiagonal() * first;
}

EffectiveChannels effective_channels(const ChannelSet &ch,
                                     const ComplexVector &phi,
                                     const ComplexVector &psi) {
  EffectiveChannels e;
  e.H_tilde = cascade(ch.H, ch.H2, phi, ch.H1);
  e.HE_hat = cascade(ch.H_E, ch.G_E, phi, ch.H1);
  e.HE_tilde = cascade(e.HE_hat, ch.G2, psi, ch.G1);
  return e;
}

double capacity_rate(const ComplexMatrix &signal, const ComplexMatrix &noise,
                     bool *regularized) {
  if (signal.rows() != noise.rows() || signal.cols() != noise.cols() ||
      signal.rows() != signal.cols())
    throw DimensionError("capacity_rate: shape mismatch");
  const Eigen::Index n = noise.rows();
  if (n == 0)
    return 0.0;
  require_finite(signal, "capacity_rate signal");
  require_finite(noise, "capacity_rate noise");
  ComplexMatrix s = hermitian_part(noise);
  // A combiner with a (numerically) vanishing column makes S nearly
  // singular; the ridge keeps such directions from contributing noise.
  const RealVector ev = hermitian_eig(s).values;
  const double largest = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  if (ev(n - 1) <= 1e-12 * largest) {
    if (regularized)
      *regularized = true;
    s.diagonal().array() += 1e-12 * largest;
  }
  Eigen::LLT<ComplexMatrix> llt(s);
  if (llt.info() != Eigen::Success)
    throw NumericError("capacity_rate: interference Gram not invertible");
  // L^-1 G L^-H
  const auto l = llt.matrixL();
  ComplexMatrix x = l.solve(hermitian_part(signal));
  x = l.solve(x.adjoint()).adjoint();
  // x is PSD in exact arithmetic; rounding can leave small negative
  // eigenvalues when G dominates S, so they are clamped to zero.
  const HermitianEig eig = hermitian_eig(hermitian_part(x));
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    acc += std::log1p(std::max(0.0, eig.values(i)));
  return acc / kLn2;
}

double combiner_rate(const ComplexMatrix &channel, const ComplexMatrix &V,
                     const ComplexMatrix &Z, const ComplexMatrix &combiner,
                     double sigma2, bool *regularized) {
  if (!(sigma2 > 0.0))
    throw std::invalid_argument("noise variance must be positive");
  const ComplexMatrix cg = combiner.adjoint() * channel;
  const ComplexMatrix signal = (cg * V) * (cg * V).adjoint();
  ComplexMatrix noise = sigma2 * combiner.adjoint() * combiner;
  if (Z.size() > 0)
    noise += cg * Z * cg.adjoint();
  return capacity_rate(signal, noise, regularized);
}

double rate_rx(const ChannelSet &ch, const LegitimateDesign &d, double sigma2,
               bool *regularized) {
  const ComplexMatrix h = cascade(ch.H, ch.H2, d.phi, ch.H1);
  return combiner_rate(h, d.V, d.Z, d.U, sigma2, regularized);
}

double rate_eve_actual(const ChannelSet &ch, const LegitimateDesign &d,
                       const EveDesign &e, double sigma2, bool *regularized) {
  if (e.W.squaredNorm() <= 0.0)
    throw std::invalid_argument("rate_eve_actual: Eve combiner is zero");
  const EffectiveChannels eff = effective_channels(ch, d.phi, e.psi);
  return combiner_rate(eff.HE_tilde, d.V, d.Z, e.W, sigma2, regularized);
}

double rate_eve_believed(const ComplexMatrix &G2, const ComplexMatrix &G1_known,
                         double P, const ComplexMatrix &W,
                         const ComplexVector &psi, double sigma2) {
  const Eigen::Index n = G1_known.cols();
  if (psi.size() == 0 || n == 0)
    return 0.0;
  const ComplexMatrix hbar = G2 * psi.asDiagonal() * G1_known;
  const ComplexMatrix v = std::sqrt(P / static_cast<double>(n)) *
                          ComplexMatrix::Identity(n, n);
  return combiner_rate(hbar, v, ComplexMatrix(), W, sigma2);
}

ComplexMatrix eve_d_hat(const ComplexMatrix &G2, const ComplexVector &g1,
                        const ComplexMatrix &W) {
  const ComplexMatrix b =
      psd_pinv_quadratic(W.adjoint() * W, W.adjoint() * G2);
  return hermitian_part(g1.conjugate().asDiagonal() * b * g1.asDiagonal());
}

double rate_eve_believed_reduced(const ComplexMatrix &G2,
                                 const ComplexVector &g1,
                                 const ComplexVector &g2, double P,
                                 const ComplexMatrix &W,
                                 const ComplexVector &psi, double sigma2) {
  if (psi.size() == 0)
    return 0.0;
  const double snr = P / static_cast<double>(g2.size()) * g2.squaredNorm() /
                     sigma2;
  const ComplexMatrix d = eve_d_hat(G2, g1, W);
  const double q = (psi.adjoint() * d * psi)(0, 0).real();
  return std::log2(1.0 + snr * std::max(0.0, q));
}

ComplexMatrix eve_q_matrix(const ComplexMatrix &q_he, const ComplexMatrix &q_ge,
                           const ComplexMatrix &H1, const ComplexVector &phi) {
  if (phi.size() == 0)
    return q_he;
  const ComplexMatrix ph1 = phi.asDiagonal() * H1;
  return hermitian_part(q_he + ph1.adjoint() * q_ge * ph1);
}

double rate_eve_bound_q(const ComplexMatrix &Q, const ComplexMatrix &V,
                        const ComplexMatrix &Z, double sigma2) {
  const Eigen::Index n = Q.rows();
  const ComplexMatrix qs = psd_sqrt(Q);
  const ComplexMatrix xbar = V * V.adjoint() + Z;
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const double with_signal =
      logdet_psd(hermitian_part(id + qs * xbar * qs / sigma2));
  const double noise_only =
      logdet_psd(hermitian_part(id + qs * Z * qs / sigma2));
  return std::max(0.0, with_signal - noise_only);
}

double rate_eve_bs_upper(const StatisticalCsi &csi, const ChannelSet &ch,
                         const ComplexMatrix &V, const ComplexMatrix &Z,
                         const ComplexVector &phi, double sigma2) {
  return rate_eve_bound_q(eve_q_matrix(csi.q_he, csi.q_ge, ch.H1, phi), V, Z,
                          sigma2);
}

double rate_eve_bs_inst(const ComplexMatrix &HE_hat, const ComplexMatrix &V,
                        const ComplexMatrix &Z, double sigma2) {
  if (!(sigma2 > 0.0))
    throw std::invalid_argument("noise variance must be positive");
  const Eigen::Index k = HE_hat.rows();
  const ComplexMatrix s =
      sigma2 * ComplexMatrix::Identity(k, k) + HE_hat * Z * HE_hat.adjoint();
  const ComplexMatrix g = HE_hat * V * V.adjoint() * HE_hat.adjoint();
  return capacity_rate(g, s);
}

RateReport evaluate_rates(const ChannelSet &ch, const StatisticalCsi &csi,
                          const LegitimateDesign &d, const EveDesign &e,
                          double sigma2) {
  RateReport r;
  bool reg = false;
  r.R_RX = rate_rx(ch, d, sigma2, &reg);
  r.R_E = rate_eve_actual(ch, d, e, sigma2, &reg);
  r.R_s = std::max(0.0, r.R_RX - r.R_E);
  r.R_E_ub = rate_eve_bs_upper(csi, ch, d.V, d.Z, d.phi, sigma2);
  r.regularized = reg;
  return r;
}

} // namespace rissec
