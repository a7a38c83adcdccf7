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

#include "rissec/combiner.hpp"
#include "rissec/legit_solver.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace rissec;
using namespace testutil;

namespace {

LegitProblem random_problem(std::mt19937_64 &g, int N, int M, int L,
                            double P = 10.0) {
  LegitProblem p;
  p.H = random_matrix(g, M, N);
  p.H1 = random_matrix(g, L, N);
  p.H2 = random_matrix(g, M, L, 0.5);
  p.q_he = 0.3 * random_psd(g, N);
  p.q_ge = 0.1 * random_psd(g, L);
  p.P = P;
  p.sigma2 = 1.0;
  return p;
}

LegitProblem scalar_problem(Complex h, double q, double P) {
  LegitProblem p;
  p.H = ComplexMatrix::Constant(1, 1, h);
  p.H1 = ComplexMatrix(0, 1);
  p.H2 = ComplexMatrix(1, 0);
  p.q_he = ComplexMatrix::Constant(1, 1, q);
  p.q_ge = ComplexMatrix(0, 0);
  p.P = P;
  p.sigma2 = 1.0;
  return p;
}

LegitimateDesign random_state(std::mt19937_64 &g, const LegitProblem &p,
                              int Nd) {
  LegitimateDesign d = initial_design(p, Nd);
  d.phi = random_phases(g, p.L());
  d.V = random_matrix(g, p.N(), Nd);
  d.Ztilde = random_matrix(g, p.N(), p.N(), 0.5);
  const double scale =
      std::sqrt(p.P / (d.V.squaredNorm() + d.Ztilde.squaredNorm()));
  d.V *= scale;
  d.Ztilde *= scale;
  d.Z = d.Ztilde * d.Ztilde.adjoint();
  d.U = random_matrix(g, p.M(), Nd);
  d.U /= d.U.norm();
  return d;
}

double secrecy_scalar(double h2, double q, double pv, double pz) {
  return std::log2(1.0 + h2 * pv / (1.0 + h2 * pz)) -
         (std::log2(1.0 + q * (pv + pz)) - std::log2(1.0 + q * pz));
}

} // namespace

TEST(UpdateAux, ScalarSanity) {
  const LegitProblem p = scalar_problem(1.0, 0.5, 1.0);
  LegitimateDesign d;
  d.Nd = 1;
  d.V = ComplexMatrix::Ones(1, 1);
  d.Ztilde = ComplexMatrix::Zero(1, 1);
  d.Z = ComplexMatrix::Zero(1, 1);
  d.U = ComplexMatrix::Ones(1, 1);
  d.phi = ComplexVector(0);
  const AuxiliaryVars aux = update_aux(p, d);
  EXPECT_NEAR(std::abs(aux.A1(0, 0) - 0.5), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(aux.S1(0, 0) - 2.0), 0.0, 1e-14);
  EXPECT_NEAR(aux.A2.norm(), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(aux.S2(0, 0) - 1.0), 0.0, 1e-14);
}

TEST(UpdateAux, NoArtificialNoise) {
  std::mt19937_64 g(91);
  const LegitProblem p = random_problem(g, 4, 2, 5);
  LegitimateDesign d = random_state(g, p, 2);
  d.Ztilde.setZero();
  d.Z.setZero();
  const AuxiliaryVars aux = update_aux(p, d);
  EXPECT_EQ(aux.A2.rows(), 4);
  EXPECT_EQ(aux.A2.cols(), 4);
  EXPECT_LT(aux.A2.norm(), 1e-14);
  EXPECT_LT((aux.S2 - ComplexMatrix::Identity(4, 4)).norm(), 1e-14);
}

TEST(UpdateAux, LogDetMseIdentity) {
  std::mt19937_64 g(92);
  for (int t = 0; t < 20; ++t) {
    const LegitProblem p = random_problem(g, 4, 3, 5);
    const LegitimateDesign d = random_state(g, p, 1 + t % 3);
    const AuxiliaryVars aux = update_aux(p, d);
    const ComplexMatrix h = legit_h_tilde(p, d.phi);
    const double rate = combiner_rate(h, d.V, d.Z, d.U, p.sigma2);
    EXPECT_NEAR(logdet_hpd(aux.S1), kLn2 * rate, 1e-9);
    // the whole reformulated objective equals the lower bound at A_opt, S_opt
    EXPECT_NEAR(phi_objective(p, d, aux, d.phi),
                kLn2 * lower_bound_objective(p, d), 1e-8);
  }
}

TEST(UpdateU, ScalarClippedMmse) {
  std::mt19937_64 g(93);
  for (int t = 0; t < 20; ++t) {
    const Complex h = random_vector(g, 1, 3.0)(0);
    const LegitProblem p = scalar_problem(h, 0.2, 4.0);
    LegitimateDesign d;
    d.Nd = 1;
    d.V = random_matrix(g, 1, 1);
    d.Ztilde = random_matrix(g, 1, 1, 0.5);
    d.Z = d.Ztilde * d.Ztilde.adjoint();
    d.U = random_matrix(g, 1, 1, t % 2 ? 5.0 : 0.05);
    d.phi = ComplexVector(0);
    const AuxiliaryVars aux = update_aux(p, d);
    const Complex a = aux.A1(0, 0), v = d.V(0, 0);
    const double s = aux.S1(0, 0).real();
    const double e = 1.0 + std::norm(h) * (std::norm(v) + d.Z(0, 0).real());
    const Complex j = h * v * s * std::conj(a);
    const Complex mmse = j / (e * std::norm(a) * s);
    const Complex want = std::abs(mmse) <= 1.0 ? mmse : j / std::abs(j);
    const CombinerUpdate cu = update_u(p, d, aux);
    EXPECT_NEAR(std::abs(cu.U(0, 0) - want), 0.0, 1e-9);
  }
}

TEST(UpdateU, VectorizedNormIdentity) {
  // ||U||^2 = trace((F^T kron E + kappa I)^-2 vec(J) vec(J)^H)
  std::mt19937_64 g(94);
  for (int t = 0; t < 20; ++t) {
    const LegitProblem p = random_problem(g, 4, 3, 5);
    const LegitimateDesign d = random_state(g, p, 1 + t % 3);
    const AuxiliaryVars aux = update_aux(p, d);
    const CombinerTerms ct = combiner_terms(p, d, aux);
    const CombinerUpdate cu = update_u(p, d, aux);
    const Eigen::Index n = ct.E.rows() * ct.F.rows();
    const ComplexMatrix a = kron(ct.F.transpose(), ct.E) +
                            cu.kappa * ComplexMatrix::Identity(n, n);
    const ComplexMatrix ai = a.inverse();
    const ComplexMatrix vj = vec(ct.J);
    const double rhs = (ai * ai * vj * vj.adjoint()).trace().real();
    EXPECT_NEAR(cu.U.squaredNorm(), rhs, 1e-9 * (1.0 + rhs));
    EXPECT_LE(cu.U.squaredNorm(), 1.0 + 1e-9);
    EXPECT_LE(std::abs(cu.kappa * (cu.U.squaredNorm() - 1.0)), 1e-6);
  }
}

TEST(UpdateVz, PowerResidualAndSlackness) {
  std::mt19937_64 g(95);
  for (int t = 0; t < 20; ++t) {
    const LegitProblem p = random_problem(g, 4, 3, 5, 5.0 + t);
    const LegitimateDesign d = random_state(g, p, 2);
    const AuxiliaryVars aux = update_aux(p, d);
    const PrecoderUpdate pu = update_vz(p, d, aux);
    EXPECT_LE(pu.power, p.P * (1.0 + 1e-6));
    if (pu.lambda > 0.0) {
      EXPECT_LE(std::abs(pu.power - p.P), 1e-6 * p.P);
    }
    EXPECT_NEAR(pu.power, pu.V.squaredNorm() + pu.Ztilde.squaredNorm(), 1e-12);
  }
}

TEST(UpdateVz, ZeroLinearTermsAndHugePower) {
  std::mt19937_64 g(96);
  LegitProblem p = random_problem(g, 3, 2, 4);
  LegitimateDesign d = random_state(g, p, 1);
  d.V.setZero();
  d.Ztilde.setZero();
  d.Z.setZero();
  AuxiliaryVars aux = update_aux(p, d);
  PrecoderUpdate pu = update_vz(p, d, aux);
  EXPECT_EQ(pu.lambda, 0.0);
  EXPECT_LT(pu.V.norm(), 1e-14);
  EXPECT_LT(pu.Ztilde.norm(), 1e-14);

  d = random_state(g, p, 1);
  aux = update_aux(p, d);
  p.P = 1e12;
  pu = update_vz(p, d, aux);
  EXPECT_EQ(pu.lambda, 0.0);
}

TEST(PhiSurrogate, MinorizationTangencyAndGradient) {
  std::mt19937_64 g(97);
  for (int t = 0; t < 10; ++t) {
    const LegitProblem p = random_problem(g, 4, 3, 6);
    LegitimateDesign d = random_state(g, p, 1 + t % 3);
    if (t == 9) {
      d.Ztilde.setZero();
      d.Z.setZero();
    }
    const AuxiliaryVars aux = update_aux(p, d);
    const PhiSurrogate s = build_phi_surrogate(p, d, aux);
    EXPECT_TRUE(is_hermitian(s.T));
    const double at = phi_objective(p, d, aux, d.phi);
    EXPECT_NEAR(s.value(d.phi), at, 1e-8 * (1.0 + std::abs(at)));
    for (int k = 0; k < 50; ++k) {
      const ComplexVector phi = random_phases(g, p.L());
      const double f = phi_objective(p, d, aux, phi);
      EXPECT_LE(s.value(phi), f + 1e-8 * (1.0 + std::abs(f)));
    }
    const ComplexVector phi = random_phases(g, p.L());
    const ComplexVector grad = s.descent_gradient(phi);
    for (int k = 0; k < 5; ++k) {
      const ComplexVector dir = random_vector(g, p.L());
      const double h = 1e-6;
      const double fd = (-s.value(phi + h * dir) + s.value(phi - h * dir)) / (2 * h);
      const double an = grad.dot(dir).real();
      EXPECT_LE(std::abs(fd - an), 1e-6 * std::max(1.0, std::abs(an)));
    }
  }
}

TEST(PhiSurrogate, HadamardTraceIdentity) {
  std::mt19937_64 g(98);
  const ComplexMatrix A = random_matrix(g, 5, 5), B = random_matrix(g, 5, 5);
  const ComplexVector phi = random_phases(g, 5);
  const ComplexMatrix P = phi.asDiagonal();
  const Complex lhs = (P.adjoint() * A * P * B).trace();
  const Complex rhs = (phi.adjoint() * hadamard(A, B.transpose()) * phi)(0, 0);
  EXPECT_LT(std::abs(lhs - rhs), 1e-10);
}

TEST(UpdatePhi, SeparableAlignment) {
  std::mt19937_64 g(99);
  PhiSurrogate s;
  s.T = ComplexMatrix::Zero(6, 6);
  s.v = random_vector(g, 6);
  s.anchor = random_phases(g, 6);
  const ManifoldResult r = update_phi(s, LegitSolverConfig{});
  const ComplexVector want =
      -s.v.conjugate().cwiseQuotient(s.v.cwiseAbs().cast<Complex>());
  EXPECT_LT((r.phi - want).cwiseAbs().maxCoeff(), 1e-4);
  EXPECT_GE(s.value(r.phi), s.value(s.anchor) - 1e-9);
}

TEST(UpdatePhi, RankOneOracle) {
  std::mt19937_64 g(100);
  for (int t = 0; t < 10; ++t) {
    PhiSurrogate s;
    ComplexVector a = random_vector(g, 5);
    if (t % 2)
      a(0) *= 10.0; // one dominant entry: the minimum is positive
    s.T = a * a.adjoint();
    s.v = ComplexVector::Zero(5);
    s.anchor = random_phases(g, 5);
    const ManifoldResult r = update_phi(s, LegitSolverConfig{});
    const double biggest = a.cwiseAbs().maxCoeff(), total = a.cwiseAbs().sum();
    const double want = std::pow(std::max(0.0, 2.0 * biggest - total), 2);
    EXPECT_NEAR(-s.value(r.phi), want, 1e-6 * (1.0 + want));
  }
}

TEST(SolveFixedNd, MonotoneAndFeasible) {
  std::mt19937_64 g(101);
  LegitSolverConfig cfg;
  cfg.max_inner_iters = 60;
  for (int t = 0; t < 3; ++t) {
    const LegitProblem p = random_problem(g, 4, 3, 6);
    for (int nd = 1; nd <= 3; ++nd) {
      const FixedNdResult r = solve_fixed_nd(p, nd, cfg);
      for (std::size_t k = 1; k < r.objective_trace.size(); ++k) {
        const double prev = r.objective_trace[k - 1];
        EXPECT_GE(r.objective_trace[k], prev - 1e-8 * (1.0 + std::abs(prev)));
      }
      EXPECT_LE(r.design.power(), p.P * (1.0 + 1e-6));
      EXPECT_LE(r.design.U.squaredNorm(), 1.0 + 1e-9);
      EXPECT_LE(unit_modulus_residual(r.design.phi), 1e-12);
      EXPECT_EQ(r.design.V.cols(), nd);
      EXPECT_NEAR(r.objective, r.objective_trace.back(), 0.0);
    }
  }
}

TEST(SolveFixedNd, NoEavesdropperStatistics) {
  std::mt19937_64 g(102);
  LegitProblem p = random_problem(g, 3, 2, 4);
  p.q_he.setZero();
  p.q_ge.setZero();
  LegitSolverConfig cfg;
  cfg.max_inner_iters = 40;
  const FixedNdResult r = solve_fixed_nd(p, 2, cfg);
  const double rx = combiner_rate(legit_h_tilde(p, r.design.phi), r.design.V,
                                  r.design.Z, r.design.U, p.sigma2);
  EXPECT_NEAR(r.objective, rx, 1e-9);
  EXPECT_GT(r.objective, 0.0);
}

TEST(SolveFixedNd, VanishingPower) {
  std::mt19937_64 g(103);
  const LegitProblem p = random_problem(g, 3, 2, 4, 1e-12);
  LegitSolverConfig cfg;
  cfg.max_inner_iters = 20;
  const FixedNdResult r = solve_fixed_nd(p, 1, cfg);
  EXPECT_LT(std::abs(r.objective), 1e-9);
  EXPECT_LE(r.design.power(), 1e-12 * (1.0 + 1e-6));
}

TEST(SolveFixedNd, ScalarGridOracle) {
  std::mt19937_64 g(104);
  for (int t = 0; t < 5; ++t) {
    const Complex h = random_vector(g, 1, 3.0)(0);
    const double q = std::norm(random_vector(g, 1)(0));
    const LegitProblem p = scalar_problem(h, q, 10.0);
    const FixedNdResult r = solve_fixed_nd(p, 1, LegitSolverConfig{});
    double best = -1e300;
    for (int k = 0; k < 200; ++k) {
      const double f = static_cast<double>(k) / 199.0;
      best = std::max(best, secrecy_scalar(std::norm(h), q, f * p.P, (1 - f) * p.P));
    }
    EXPECT_NEAR(r.objective, best, 0.02);
  }
}

TEST(SolveLegit, SingleStreamAndBookkeeping) {
  std::mt19937_64 g(105);
  LegitSolverConfig cfg;
  cfg.max_inner_iters = 30;
  const LegitProblem one = random_problem(g, 3, 1, 4);
  const LegitResult r1 = solve_legit(one, cfg);
  EXPECT_EQ(r1.Nd, 1);
  EXPECT_EQ(r1.per_nd.size(), 1u);
  const LegitProblem p = random_problem(g, 3, 2, 4);
  const LegitResult r = solve_legit(p, cfg);
  ASSERT_EQ(r.per_nd.size(), 2u);
  EXPECT_EQ(r.objective, r.per_nd[r.Nd - 1].objective_trace.back());
  for (const auto &f : r.per_nd)
    EXPECT_LE(f.objective, r.objective + 1e-9);
}

TEST(SolveFixedNd, InvalidInputs) {
  std::mt19937_64 g(106);
  const LegitProblem p = random_problem(g, 3, 2, 4);
  EXPECT_THROW(solve_fixed_nd(p, 3, LegitSolverConfig{}), std::invalid_argument);
  EXPECT_THROW(solve_fixed_nd(p, 0, LegitSolverConfig{}), std::invalid_argument);
  LegitSolverConfig bad;
  bad.epsilon = 0.0;
  EXPECT_THROW(solve_fixed_nd(p, 1, bad), std::invalid_argument);
  LegitProblem q = p;
  q.q_he(0, 1) += 1.0;
  EXPECT_THROW(solve_fixed_nd(q, 1, LegitSolverConfig{}), std::exception);
}

TEST(Variant, StringRoundTrip) {
  for (Variant v : {Variant::statistical, Variant::perfect, Variant::no_legit_ris})
    EXPECT_EQ(variant_from_string(to_string(v)), v);
  EXPECT_THROW(variant_from_string("bogus"), std::invalid_argument);
}

TEST(SolveFixedNd, NoAnStartEscapesHighPowerPlateau) {
  // At high power the equal split sits on a flat region with secrecy near 0,
  // while the optimum puts all power on V.
  const Complex h(1.2, -0.7);
  const double q = 0.6;
  const LegitProblem p = scalar_problem(h, q, 1000.0);
  const LegitimateDesign d0 = no_an_design(p, 1);
  EXPECT_LT(d0.Z.norm(), 1e-300);
  EXPECT_NEAR(d0.power(), p.P, 1e-9 * p.P);
  LegitSolverConfig one;
  one.no_an_start = false;
  const FixedNdResult r1 = solve_fixed_nd(p, 1, one);
  const FixedNdResult r2 = solve_fixed_nd(p, 1, LegitSolverConfig{});
  const double best = secrecy_scalar(std::norm(h), q, p.P, 0.0);
  EXPECT_NEAR(r2.objective, best, 1e-3);
  EXPECT_GE(r2.objective, r1.objective - 1e-9);
  EXPECT_LT(r1.objective, best - 0.5);
}
