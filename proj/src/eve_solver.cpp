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

#include "rissec/eve_solver.hpp"

#include "rissec/combiner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rissec {

ComplexMatrix EveProblem::G1_known() const {
  if (G1_exact.size() > 0)
    return G1_exact;
  return g1 * g2.adjoint();
}

void EveProblem::validate() const {
  if (!(P > 0.0) || !(sigma2 > 0.0))
    throw std::invalid_argument("Eve problem: power and noise must be positive");
  if (Nd < 1 || Nd > K())
    throw std::invalid_argument("Eve problem: stream count out of range");
  if (G1_exact.size() == 0) {
    if (g1.size() != G2.cols())
      throw DimensionError("Eve problem: g1 does not match G2");
    if (G2.cols() > 0 && !(g1.norm() > 0.0 && g2.norm() > 0.0))
      throw std::invalid_argument("Eve problem: g1 and g2 must be non-zero");
  } else if (G1_exact.rows() != G2.cols()) {
    throw DimensionError("Eve problem: G1 does not match G2");
  }
}

namespace {

ComplexMatrix hbar(const EveProblem &prob, const ComplexVector &psi) {
  if (prob.Lambda() == 0)
    return ComplexMatrix::Zero(prob.K(), prob.N());
  return prob.G2 * psi.asDiagonal() * prob.G1_known();
}

ComplexMatrix identity_columns(int k, int nd) {
  return ComplexMatrix::Identity(k, nd) / std::sqrt(static_cast<double>(nd));
}

} // namespace

double eve_believed_rate(const EveProblem &prob, const ComplexMatrix &W,
                         const ComplexVector &psi) {
  if (prob.Lambda() == 0)
    return 0.0;
  return rate_eve_believed(prob.G2, prob.G1_known(), prob.P, W, psi,
                           prob.sigma2);
}

ComplexMatrix initial_eve_combiner(const EveProblem &prob,
                                   const ComplexVector &psi, bool *degenerate) {
  const ComplexMatrix h = hbar(prob, psi);
  if (degenerate)
    *degenerate = false;
  if (!(h.norm() > 0.0)) {
    if (degenerate)
      *degenerate = true;
    return identity_columns(prob.K(), prob.Nd);
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(h, Eigen::ComputeFullU);
  return svd.matrixU().leftCols(prob.Nd) /
         std::sqrt(static_cast<double>(prob.Nd));
}

ComplexMatrix update_w(const EveProblem &prob, const ComplexVector &psi,
                       const ComplexMatrix &W_prev, bool *degenerate) {
  const ComplexMatrix h = hbar(prob, psi) / std::sqrt(prob.sigma2);
  if (degenerate)
    *degenerate = false;
  if (!(h.norm() > 0.0)) {
    if (degenerate)
      *degenerate = true;
    return identity_columns(prob.K(), prob.Nd);
  }
  const double c = std::sqrt(prob.P / static_cast<double>(prob.N()));
  const Eigen::Index n = h.cols(), k = h.rows();
  const ComplexMatrix wh = W_prev.adjoint() * h; // Nd x N
  const ComplexMatrix C = W_prev.adjoint() * W_prev;
  const ComplexMatrix A =
      hermitian_pinv(hermitian_part(C + c * c * wh * wh.adjoint())) *
      (c * wh); // Nd x N
  const ComplexMatrix S =
      ComplexMatrix::Identity(n, n) +
      c * c * psd_pinv_quadratic(C, wh); // N x N
  const ComplexMatrix E =
      ComplexMatrix::Identity(k, k) + c * c * h * h.adjoint();
  const ComplexMatrix F = A * S * A.adjoint();
  const ComplexMatrix J = c * h * S * A.adjoint();
  CombinerSolution sol = solve_combiner(E, F, J);
  if (!(sol.U.norm() > 0.0))
    return W_prev;
  return balanced_combiner(sol.U);
}

ManifoldObjective build_psi_objective(const EveProblem &prob,
                                      const ComplexMatrix &W) {
  const double c2 = prob.P / static_cast<double>(prob.N());
  const ComplexMatrix pw =
      W * hermitian_pinv(hermitian_part(W.adjoint() * W)) *
      W.adjoint(); // projector onto range(W)
  const ComplexMatrix B = hermitian_part(prob.G2.adjoint() * pw * prob.G2);
  ManifoldObjective obj;
  if (prob.G1_exact.size() == 0) {
    // G1 = g1 g2^H: the rate collapses to log2(1 + s psi^H D psi)
    const double s = c2 * prob.g2.squaredNorm() / prob.sigma2;
    const ComplexMatrix D =
        hermitian_part(prob.g1.conjugate().asDiagonal() * B * prob.g1.asDiagonal());
    obj.value = [D, s](const ComplexVector &psi) {
      const double q = std::max(0.0, (psi.adjoint() * D * psi)(0, 0).real());
      return -std::log2(1.0 + s * q);
    };
    obj.euclidean_gradient = [D, s](const ComplexVector &psi) {
      const double q = std::max(0.0, (psi.adjoint() * D * psi)(0, 0).real());
      return ComplexVector(-(2.0 * s / kLn2) * (D * psi) / (1.0 + s * q));
    };
    return obj;
  }
  const ComplexMatrix G1 = prob.G1_exact;
  const double s = c2 / prob.sigma2;
  const Eigen::Index n = G1.cols();
  auto y_of = [G1, B, s, n](const ComplexVector &psi) {
    const ComplexMatrix pg = psi.asDiagonal() * G1;
    return ComplexMatrix(hermitian_part(ComplexMatrix::Identity(n, n) +
                                        s * pg.adjoint() * B * pg));
  };
  obj.value = [y_of](const ComplexVector &psi) {
    return -logdet_psd(y_of(psi));
  };
  obj.euclidean_gradient = [y_of, G1, B, s](const ComplexVector &psi) {
    const ComplexMatrix y_inv = hpd_inverse(y_of(psi));
    const ComplexMatrix m = B * psi.asDiagonal() * G1 * y_inv * G1.adjoint();
    return ComplexVector(-(2.0 * s / kLn2) * m.diagonal());
  };
  return obj;
}

EveSolution solve_eve(const EveProblem &prob) {
  prob.validate();
  EveSolution out;
  const int lambda = prob.Lambda();
  ComplexVector psi = ComplexVector::Ones(lambda);
  bool degenerate = false;
  ComplexMatrix W = initial_eve_combiner(prob, psi, &degenerate);
  if (degenerate || lambda == 0) {
    out.design = {W, psi};
    out.degenerate = true;
    out.believed_rate = eve_believed_rate(prob, W, psi);
    out.trace.push_back(out.believed_rate);
    return out;
  }
  double rate = eve_believed_rate(prob, W, psi);
  bool converged = false;
  for (int round = 0; round < prob.cfg.max_rounds; ++round) {
    const ComplexMatrix W_new = update_w(prob, psi, W, &degenerate);
    if (eve_believed_rate(prob, W_new, psi) >= eve_believed_rate(prob, W, psi))
      W = W_new;
    const ManifoldResult mr =
        cg_minimize(build_psi_objective(prob, W), psi, prob.cfg.manifold);
    out.stalled = out.stalled || mr.stalled;
    psi = mr.phi;
    const double next = eve_believed_rate(prob, W, psi);
    out.trace.push_back(next);
    out.rounds = round + 1;
    const double change = std::abs(next - rate) / std::max(std::abs(next), 1e-12);
    rate = next;
    if (change <= prob.cfg.epsilon) {
      converged = true;
      break;
    }
  }
  out.stalled = out.stalled || !converged;
  out.design = {W, psi};
  out.believed_rate = rate;
  return out;
}

} // namespace rissec
