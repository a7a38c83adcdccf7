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

#include "rissec/legit_solver.hpp"

#include "rissec/combiner.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rissec {

std::string to_string(Variant v) {
  switch (v) {
  case Variant::statistical:
    return "statistical";
  case Variant::perfect:
    return "perfect";
  case Variant::no_legit_ris:
    return "no-ris";
  }
  return "unknown";
}

Variant variant_from_string(const std::string &s) {
  if (s == "statistical")
    return Variant::statistical;
  if (s == "perfect")
    return Variant::perfect;
  if (s == "no-ris")
    return Variant::no_legit_ris;
  throw std::invalid_argument("unknown variant '" + s +
                              "' (expected statistical, perfect or no-ris)");
}

void LegitSolverConfig::validate() const {
  if (!(epsilon > 0.0))
    throw std::invalid_argument("solver epsilon must be positive");
  if (max_inner_iters < 1)
    throw std::invalid_argument("max_inner_iters must be >= 1");
  if (!(kappa_tolerance > 0.0) || !(lambda_tolerance > 0.0))
    throw std::invalid_argument("bisection tolerances must be positive");
  manifold.validate();
}

void LegitProblem::validate() const {
  const Eigen::Index n = H.cols(), m = H.rows(), l = H1.rows();
  if (n < 1 || m < 1)
    throw DimensionError("legit problem: empty direct channel");
  if (H1.cols() != n || H2.rows() != m || H2.cols() != l)
    throw DimensionError("legit problem: cascade channel shapes");
  if (q_he.rows() != n || q_he.cols() != n || q_ge.rows() != l ||
      q_ge.cols() != l)
    throw DimensionError("legit problem: second-moment shapes");
  if (!(P > 0.0) || !(sigma2 > 0.0))
    throw std::invalid_argument("legit problem: P and sigma2 must be positive");
  require_hermitian(q_he, "Q_HE");
  require_hermitian(q_ge, "Q_GE");
}

LegitProblem LegitProblem::normalized() const {
  LegitProblem out = *this;
  const double s = std::sqrt(sigma2);
  out.H /= s;
  out.H2 /= s;
  out.q_he /= sigma2;
  out.q_ge /= sigma2;
  out.sigma2 = 1.0;
  return out;
}

LegitProblem make_legit_problem(const ChannelSet &ch, const StatisticalCsi &csi,
                                double P, double sigma2) {
  LegitProblem p;
  p.H = ch.H;
  p.H1 = ch.H1;
  p.H2 = ch.H2;
  p.q_he = csi.q_he;
  p.q_ge = csi.q_ge;
  p.P = P;
  p.sigma2 = sigma2;
  return p;
}

ComplexMatrix legit_h_tilde(const LegitProblem &p, const ComplexVector &phi) {
  return cascade(p.H, p.H2, phi, p.H1);
}

ComplexMatrix legit_q(const LegitProblem &p, const ComplexVector &phi) {
  return eve_q_matrix(p.q_he, p.q_ge, p.H1, phi);
}

namespace {

ComplexMatrix eye(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

ComplexMatrix inv(const ComplexMatrix &a, bool &reg) {
  bool r = false;
  ComplexMatrix out = hpd_inverse(a, &r);
  reg = reg || r;
  return out;
}

double logdet(const ComplexMatrix &a) { return logdet_hpd(hermitian_part(a)); }

} // namespace

AuxiliaryVars update_aux(const LegitProblem &p, const LegitimateDesign &d) {
  AuxiliaryVars aux;
  const double s2 = p.sigma2;
  const ComplexMatrix h = legit_h_tilde(p, d.phi);
  const ComplexMatrix q = legit_q(p, d.phi);
  const ComplexMatrix qs = psd_sqrt(q);
  const ComplexMatrix Z = d.Ztilde * d.Ztilde.adjoint();
  const ComplexMatrix xbar = d.V * d.V.adjoint() + Z;
  const ComplexMatrix uh = d.U.adjoint() * h; // Nd x N
  const ComplexMatrix utu = d.U.adjoint() * d.U;
  const Eigen::Index n = p.N(), nd = d.V.cols();

  // U may lose rank when a stream is switched off; only U A1 and the
  // column space of U matter, so pseudo-inverses are used here.
  const ComplexMatrix uhv = uh * d.V;
  aux.A1 = hermitian_pinv(hermitian_part(s2 * utu + uh * xbar * uh.adjoint())) *
           uhv;
  aux.S1 = hermitian_part(
      eye(nd) + psd_pinv_quadratic(s2 * utu + uh * Z * uh.adjoint(), uhv));
  aux.A2 = inv(s2 * eye(n) + qs * Z * qs, aux.regularized) * qs * d.Ztilde;
  aux.S2 = hermitian_part(eye(n) + d.Ztilde.adjoint() * q * d.Ztilde / s2);
  aux.S3 = hermitian_part(inv(eye(n) + qs * xbar * qs / s2, aux.regularized));
  return aux;
}

CombinerTerms combiner_terms(const LegitProblem &p, const LegitimateDesign &d,
                             const AuxiliaryVars &aux) {
  const ComplexMatrix h = legit_h_tilde(p, d.phi);
  const ComplexMatrix xbar =
      d.V * d.V.adjoint() + d.Ztilde * d.Ztilde.adjoint();
  CombinerTerms t;
  t.E = hermitian_part(p.sigma2 * eye(p.M()) + h * xbar * h.adjoint());
  t.F = hermitian_part(aux.A1 * aux.S1 * aux.A1.adjoint());
  t.J = h * d.V * aux.S1 * aux.A1.adjoint();
  return t;
}

CombinerUpdate update_u(const LegitProblem &p, const LegitimateDesign &d,
                        const AuxiliaryVars &aux) {
  const CombinerTerms t = combiner_terms(p, d, aux);
  const CombinerSolution sol = solve_combiner(t.E, t.F, t.J, 1.0);
  CombinerUpdate out;
  out.U = sol.U;
  out.kappa = sol.kappa;
  out.bracket_failed = sol.bracket_failed;
  return out;
}

PrecoderTerms precoder_terms(const LegitProblem &p, const LegitimateDesign &d,
                             const AuxiliaryVars &aux) {
  const ComplexMatrix h = legit_h_tilde(p, d.phi);
  const ComplexMatrix qs = psd_sqrt(legit_q(p, d.phi));
  const ComplexMatrix hu = h.adjoint() * d.U * aux.A1; // N x Nd
  const ComplexMatrix k = hu * aux.S1 * hu.adjoint();
  const ComplexMatrix g3 = qs * aux.S3 * qs / p.sigma2;
  PrecoderTerms t;
  t.RV1 = hermitian_part(k + g3);
  t.RV2 = hu * aux.S1;
  t.RZ1 = hermitian_part(k + qs * aux.A2 * aux.S2 * aux.A2.adjoint() * qs + g3);
  t.RZ2 = qs * aux.A2 * aux.S2;
  return t;
}

namespace {

struct QuadraticBlock {
  HermitianEig eig;
  ComplexMatrix coeffs; // Q^H R2
  RealVector weights;   // row norms^2 of coeffs, zero on the null space

  explicit QuadraticBlock(const ComplexMatrix &r1, const ComplexMatrix &r2)
      : eig(hermitian_eig(r1)), coeffs(eig.vectors.adjoint() * r2) {
    const double largest =
        eig.values.size() ? eig.values.cwiseAbs().maxCoeff() : 0.0;
    weights.resize(eig.values.size());
    for (Eigen::Index i = 0; i < weights.size(); ++i) {
      const bool null = !(eig.values(i) > kPinvRelative * largest);
      if (null)
        coeffs.row(i).setZero();
      weights(i) = coeffs.row(i).squaredNorm();
    }
  }
  double power(double lambda) const {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < weights.size(); ++i)
      if (weights(i) > 0.0) {
        const double den = eig.values(i) + lambda;
        acc += weights(i) / (den * den);
      }
    return acc;
  }
  ComplexMatrix solution(double lambda) const {
    ComplexMatrix scaled = coeffs;
    for (Eigen::Index i = 0; i < weights.size(); ++i)
      if (weights(i) > 0.0)
        scaled.row(i) /= eig.values(i) + lambda;
    return eig.vectors * scaled;
  }
};

} // namespace

PrecoderUpdate update_vz(const LegitProblem &p, const LegitimateDesign &d,
                         const AuxiliaryVars &aux, double tolerance) {
  const PrecoderTerms t = precoder_terms(p, d, aux);
  const QuadraticBlock v(t.RV1, t.RV2), z(t.RZ1, t.RZ2);
  PrecoderUpdate out;
  BisectionProblem bp;
  bp.evaluate = [&](double lam) { return v.power(lam) + z.power(lam); };
  bp.target = p.P;
  bp.lower = 0.0;
  bp.upper = 1.0;
  bp.tolerance = tolerance * p.P;
  try {
    out.lambda = bisect(bp);
  } catch (const NoRootError &) {
    out.lambda = 0.0;
    out.bracket_failed = true;
  }
  out.V = v.solution(out.lambda);
  out.Ztilde = z.solution(out.lambda);
  out.power = out.V.squaredNorm() + out.Ztilde.squaredNorm();
  if (out.power > p.P) { // rounding on the feasible side
    const double s = std::sqrt(p.P / out.power);
    out.V *= s;
    out.Ztilde *= s;
    out.power = out.V.squaredNorm() + out.Ztilde.squaredNorm();
  }
  return out;
}

double PhiSurrogate::value(const ComplexVector &phi) const {
  const double quad = (phi.adjoint() * T * phi)(0, 0).real();
  const double lin = 2.0 * phi.dot(v.conjugate()).real();
  return -(quad + lin + c);
}

ComplexVector PhiSurrogate::descent_gradient(const ComplexVector &phi) const {
  return 2.0 * (T * phi + v.conjugate());
}

PhiSurrogate build_phi_surrogate(const LegitProblem &p,
                                 const LegitimateDesign &d,
                                 const AuxiliaryVars &aux) {
  const double s2 = p.sigma2;
  const Eigen::Index n = p.N();
  const Eigen::Index nd = d.V.cols();
  const ComplexMatrix &H = p.H, &H1 = p.H1, &H2 = p.H2;
  const ComplexMatrix &V = d.V, &U = d.U, &Zt = d.Ztilde;
  const ComplexMatrix Z = Zt * Zt.adjoint();
  const ComplexMatrix xbar = V * V.adjoint() + Z;
  const ComplexMatrix vv = V * V.adjoint();
  const ComplexMatrix &A1 = aux.A1, &S1 = aux.S1;
  bool reg = false;

  // receiver MSE term
  const ComplexMatrix B = U * A1 * S1 * A1.adjoint() * U.adjoint();
  const ComplexMatrix D1 = H1 * vv * H.adjoint() * B * H2;
  const ComplexMatrix D2 = H2.adjoint() * B * H2;
  const ComplexMatrix D3 = H1 * vv * H1.adjoint();
  const ComplexMatrix D4 = H1 * Z * H1.adjoint();
  const ComplexMatrix D5 = H1 * V * S1 * A1.adjoint() * U.adjoint() * H2;
  const ComplexMatrix D6 = H1 * Z * H.adjoint() * B * H2;
  const double k_rx =
      static_cast<double>(nd) + logdet(S1) - S1.trace().real() -
      s2 * (S1 * A1.adjoint() * U.adjoint() * U * A1).trace().real() -
      (B * H * xbar * H.adjoint()).trace().real() +
      2.0 * (S1 * A1.adjoint() * U.adjoint() * H * V).trace().real();

  // artificial-noise term log|I + s^-2 Zt^H Q(phi) Zt| as an MMSE bound
  const ComplexMatrix R = psd_sqrt(p.q_ge);
  const ComplexMatrix qt =
      hermitian_part(eye(n) + Zt.adjoint() * p.q_he * Zt / s2);
  const ComplexMatrix qt_inv = inv(qt, reg);
  const ComplexMatrix Ft =
      Zt.adjoint() * H1.adjoint() * d.phi.conjugate().asDiagonal() * R;
  const ComplexMatrix Yt = s2 * eye(p.L()) + Ft.adjoint() * qt_inv * Ft;
  const ComplexMatrix Jt = inv(Yt, reg) * Ft.adjoint() * qt_inv; // L x N
  const ComplexMatrix W = hermitian_part(qt + Ft * Ft.adjoint() / s2);
  const ComplexMatrix D7 = R * Jt * W * Jt.adjoint() * R;
  const ComplexMatrix D8 = H1 * Zt * qt_inv * Zt.adjoint() * H1.adjoint();
  const ComplexMatrix D9 = H1 * Zt * qt_inv * W * Jt.adjoint() * R;
  const double k_an = logdet(W) + static_cast<double>(n) -
                      (W * qt_inv).trace().real() -
                      s2 * (W * Jt.adjoint() * Jt).trace().real();

  // -log|I + s^-2 X^{1/2} Q(phi) X^{1/2}| by its tangent plane
  const ComplexMatrix xs = psd_sqrt(xbar);
  const ComplexMatrix q_anchor = legit_q(p, d.phi);
  const ComplexMatrix m3 = hermitian_part(eye(n) + xs * q_anchor * xs / s2);
  const ComplexMatrix m3_inv = inv(m3, reg);
  const ComplexMatrix D10 = H1 * xs * m3_inv * xs * H1.adjoint() / s2;
  const double k_e = -logdet(m3) + static_cast<double>(n) -
                     m3_inv.trace().real() -
                     (m3_inv * xs * p.q_he * xs).trace().real() / s2;

  PhiSurrogate s;
  s.anchor = d.phi;
  s.T = hermitian_part(hadamard(D2, (D3 + D4).transpose()) +
                       hadamard(D7, D8.transpose()) +
                       hadamard(p.q_ge, D10.transpose()));
  s.v = vec_d(D1 + D6 - D5 - D9);
  s.c = -(k_rx + k_an + k_e);
  return s;
}

double phi_objective(const LegitProblem &p, const LegitimateDesign &d,
                     const AuxiliaryVars &aux, const ComplexVector &phi) {
  const double s2 = p.sigma2;
  const Eigen::Index n = p.N();
  const Eigen::Index nd = d.V.cols();
  const ComplexMatrix h = legit_h_tilde(p, phi);
  const ComplexMatrix q = legit_q(p, phi);
  const ComplexMatrix Z = d.Ztilde * d.Ztilde.adjoint();
  const ComplexMatrix xbar = d.V * d.V.adjoint() + Z;
  const ComplexMatrix e = eye(nd) - aux.A1.adjoint() * d.U.adjoint() * h * d.V;
  const ComplexMatrix ua = d.U * aux.A1;
  const ComplexMatrix m1 =
      e * e.adjoint() +
      ua.adjoint() * (s2 * eye(p.M()) + h * Z * h.adjoint()) * ua;
  const double rx = static_cast<double>(nd) + logdet(aux.S1) -
                    (aux.S1 * m1).trace().real();
  const double an =
      logdet(eye(n) + d.Ztilde.adjoint() * q * d.Ztilde / s2);
  const ComplexMatrix xs = psd_sqrt(xbar);
  const double sig = logdet(eye(n) + xs * q * xs / s2);
  return rx + an - sig;
}

ManifoldResult update_phi(const PhiSurrogate &s, const LegitSolverConfig &cfg) {
  ManifoldObjective obj;
  obj.value = [&s](const ComplexVector &phi) { return -s.value(phi); };
  obj.euclidean_gradient = [&s](const ComplexVector &phi) {
    return s.descent_gradient(phi);
  };
  return cg_minimize(obj, s.anchor, cfg.manifold);
}

double lower_bound_objective(const LegitProblem &p, const LegitimateDesign &d) {
  const ComplexMatrix h = legit_h_tilde(p, d.phi);
  const double rx = combiner_rate(h, d.V, d.Z, d.U, p.sigma2);
  const double eve = rate_eve_bound_q(legit_q(p, d.phi), d.V, d.Z, p.sigma2);
  return rx - eve;
}

LegitimateDesign initial_design(const LegitProblem &p, int Nd) {
  LegitimateDesign d;
  d.Nd = Nd;
  d.phi = ComplexVector::Ones(p.L());
  const ComplexMatrix h = legit_h_tilde(p, d.phi);
  Eigen::JacobiSVD<ComplexMatrix> svd(h, Eigen::ComputeFullU |
                                             Eigen::ComputeFullV);
  const double n = static_cast<double>(p.N());
  d.V = std::sqrt(p.P / (2.0 * Nd)) * svd.matrixV().leftCols(Nd);
  d.Ztilde = std::sqrt(p.P / (2.0 * n)) * eye(p.N());
  d.Z = d.Ztilde * d.Ztilde.adjoint();
  d.U = svd.matrixU().leftCols(Nd) / std::sqrt(static_cast<double>(Nd));
  return d;
}

namespace {
constexpr double kCombinerShrink = 1e-2;
} // namespace

namespace {

FixedNdResult run_inner(const LegitProblem &p, LegitimateDesign d,
                        const LegitSolverConfig &cfg) {
  FixedNdResult res;
  double obj = lower_bound_objective(p, d);
  res.objective_trace.push_back(obj);
  const bool has_ris = p.L() > 0;

  for (int it = 0; it < cfg.max_inner_iters; ++it) {
    IterationLog log;
    try {
      // R_RX sees only range(U). Stepping from a shrunken copy keeps the
      // norm constraint slack, so the step is the plain MSE minimizer
      // instead of a kappa-damped one that crawls at high SNR.
      LegitimateDesign shrunk = d;
      shrunk.U *= kCombinerShrink;
      AuxiliaryVars aux = update_aux(p, shrunk);
      const CombinerUpdate cu = update_u(p, shrunk, aux);
      log.kappa = cu.kappa;
      log.u_norm2 = cu.U.squaredNorm();
      log.kappa_slackness = std::abs(cu.kappa * (log.u_norm2 - 1.0));
      // the rate only sees range(U); keep that range well conditioned
      d.U = balanced_combiner(cu.U);

      aux = update_aux(p, d);
      const PrecoderUpdate pu = update_vz(p, d, aux, cfg.lambda_tolerance);
      d.V = pu.V;
      d.Ztilde = pu.Ztilde;
      d.Z = hermitian_part(d.Ztilde * d.Ztilde.adjoint());
      log.lambda = pu.lambda;
      log.power = pu.power;
      log.lambda_slackness = std::abs(pu.lambda * (pu.power - p.P)) / p.P;

      aux = update_aux(p, d);
      res.regularized = res.regularized || aux.regularized;
      if (has_ris) {
        const PhiSurrogate sur = build_phi_surrogate(p, d, aux);
        const ManifoldResult mr = update_phi(sur, cfg);
        if (sur.value(mr.phi) >= sur.value(d.phi))
          d.phi = mr.phi;
        log.phi_grad_norm2 = mr.grad_norm2;
        log.phi_stalled = mr.stalled;
        res.stalled = res.stalled || mr.stalled;
      }
    } catch (const std::exception &e) {
      std::ostringstream msg;
      msg << "inner iteration " << it << ": " << e.what();
      throw NumericError(msg.str());
    }
    const double next = lower_bound_objective(p, d);
    log.objective = next;
    res.iterations.push_back(log);
    res.objective_trace.push_back(next);
    const double change = std::abs(next - obj);
    obj = next;
    if (change <= cfg.epsilon * std::max(std::abs(next), 1e-9)) {
      res.converged = true;
      break;
    }
  }
  res.design = d;
  res.objective = obj;
  return res;
}

} // namespace

LegitimateDesign no_an_design(const LegitProblem &p, int Nd) {
  LegitimateDesign d = initial_design(p, Nd);
  d.V *= std::sqrt(2.0);
  d.Ztilde.setZero();
  d.Z.setZero();
  return d;
}

FixedNdResult solve_fixed_nd(const LegitProblem &p_in, int Nd,
                             const LegitSolverConfig &cfg) {
  p_in.validate();
  cfg.validate();
  if (Nd < 1 || Nd > std::min(p_in.M(), p_in.N()))
    throw std::invalid_argument("stream count out of range");
  const LegitProblem p = p_in.normalized();
  FixedNdResult res = run_inner(p, initial_design(p, Nd), cfg);
  if (cfg.no_an_start) {
    FixedNdResult alt = run_inner(p, no_an_design(p, Nd), cfg);
    if (alt.objective > res.objective + 1e-9)
      res = std::move(alt);
  }
  return res;
}

LegitResult solve_legit(const LegitProblem &p, const LegitSolverConfig &cfg) {
  const int m_max = std::min(p.M(), p.N());
  LegitResult out;
  int best = -1;
  for (int m = 1; m <= m_max; ++m) {
    out.per_nd.push_back(solve_fixed_nd(p, m, cfg));
    const double v = out.per_nd.back().objective;
    if (best < 0 || v > out.per_nd[best].objective + 1e-9)
      best = m - 1;
  }
  const FixedNdResult &chosen = out.per_nd[best];
  out.design = chosen.design;
  out.Nd = best + 1;
  out.objective = chosen.objective;
  out.iterations = static_cast<int>(chosen.iterations.size());
  out.stalled = chosen.stalled;
  return out;
}

} // namespace rissec
