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

#include "rissec/manifold.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace rissec;
using namespace testutil;

namespace {

double tangency_residual(const ComplexVector &r, const ComplexVector &phi) {
  return (r.array() * phi.conjugate().array()).real().abs().maxCoeff();
}

// f(phi) = phi^H T phi + 2 Re{phi^H b}, Euclidean gradient 2 (T phi + b)
ManifoldObjective quadratic(const ComplexMatrix &T, const ComplexVector &b) {
  ManifoldObjective o;
  o.value = [T, b](const ComplexVector &p) {
    return (p.adjoint() * T * p)(0, 0).real() + 2.0 * p.dot(b).real();
  };
  o.euclidean_gradient = [T, b](const ComplexVector &p) -> ComplexVector {
    return 2.0 * (T * p + b);
  };
  return o;
}

} // namespace

TEST(RiemannianGradient, RadialAndTangentInputs) {
  std::mt19937_64 g(51);
  const ComplexVector phi = random_phases(g, 5);
  EXPECT_LT(riemannian_gradient(2.5 * phi, phi).norm(), 1e-14);
  const ComplexVector t = Complex(0.0, 1.0) * phi;
  EXPECT_LT((riemannian_gradient(t, phi) - t).norm(), 1e-14);
  const ComplexVector r = riemannian_gradient(random_vector(g, 5), phi);
  EXPECT_LE(tangency_residual(r, phi), 1e-12);
}

TEST(Retract, Examples) {
  ComplexVector x(2);
  x << 2.0, Complex(1.0, 1.0);
  const ComplexVector r = retract(x);
  EXPECT_NEAR(std::abs(r(0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(r(1) - Complex(1.0, 1.0) / std::sqrt(2.0)), 0.0, 1e-15);
  std::mt19937_64 g(52);
  const ComplexVector phi = random_phases(g, 6);
  EXPECT_LT((retract(phi) - phi).norm(), 1e-15);
  x(0) = 0.0;
  EXPECT_THROW(retract(x), NumericError);
}

TEST(Retract, SecondOrderCurvatureError) {
  std::mt19937_64 g(53);
  const ComplexVector phi = random_phases(g, 4);
  const ComplexVector t = riemannian_gradient(random_vector(g, 4), phi);
  double prev = 0.0;
  for (double s : {1e-1, 1e-2, 1e-3}) {
    const double err = (retract(phi + s * t) - (phi + s * t)).norm();
    if (prev > 0.0) {
      EXPECT_LT(err, prev * 0.02); // O(s^2): a factor 100 per decade
    }
    prev = err;
  }
}

TEST(Transport, ProjectionProperties) {
  std::mt19937_64 g(54);
  const ComplexVector phi = random_phases(g, 5);
  EXPECT_LT(transport(phi, phi).norm(), 1e-14);
  const ComplexVector t = riemannian_gradient(random_vector(g, 5), phi);
  EXPECT_LT((transport(t, phi) - t).norm(), 1e-14);
  const ComplexVector r = random_vector(g, 5);
  const ComplexVector once = transport(r, phi);
  EXPECT_LT((transport(once, phi) - once).norm(), 1e-14);
  EXPECT_LE(tangency_residual(once, phi), 1e-12);
}

TEST(CgMinimize, SingleCircleAlignment) {
  ManifoldObjective o;
  o.value = [](const ComplexVector &p) { return -p.sum().real(); };
  o.euclidean_gradient = [](const ComplexVector &p) -> ComplexVector {
    return -ComplexVector::Ones(p.size());
  };
  ComplexVector p0(1);
  p0(0) = std::polar(1.0, 2.0);
  const ManifoldResult r = cg_minimize(o, p0, LineSearchConfig{});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(std::abs(r.phi(0) - 1.0), 0.0, 1e-4);
}

TEST(CgMinimize, RankOneAlignmentOracle) {
  std::mt19937_64 g(55);
  for (int t = 0; t < 10; ++t) {
    const ComplexVector d = random_vector(g, 8);
    const ManifoldObjective o =
        quadratic(-(d * d.adjoint()), ComplexVector::Zero(8));
    const ManifoldResult r = cg_minimize(o, random_phases(g, 8), LineSearchConfig{});
    const double want = -std::pow(d.cwiseAbs().sum(), 2);
    EXPECT_NEAR(r.trace.back(), want, 1e-6 * std::abs(want));
  }
}

TEST(CgMinimize, BeatsRandomFeasiblePoints) {
  std::mt19937_64 g(56);
  const ComplexMatrix T = random_psd(g, 10);
  const ManifoldObjective o = quadratic(T, ComplexVector::Zero(10));
  const ManifoldResult r = cg_minimize(o, random_phases(g, 10), LineSearchConfig{});
  for (int t = 0; t < 100; ++t)
    EXPECT_LE(r.trace.back(), o.value(random_phases(g, 10)) + 1e-9);
}

TEST(CgMinimize, FeasibleMonotoneAndConverged) {
  std::mt19937_64 g(57);
  for (int t = 0; t < 10; ++t) {
    const ComplexMatrix T = random_hermitian(g, 12) * 5.0;
    const ComplexVector b = random_vector(g, 12);
    const ManifoldResult r =
        cg_minimize(quadratic(T, b), random_phases(g, 12), LineSearchConfig{});
    EXPECT_LE(unit_modulus_residual(r.phi), 1e-12);
    for (std::size_t k = 1; k < r.trace.size(); ++k)
      EXPECT_LE(r.trace[k],
                r.trace[k - 1] + 1e-12 * (1.0 + std::abs(r.trace[k - 1])));
    EXPECT_TRUE(r.converged);
    EXPECT_LE(r.grad_norm2, 1e-8);
  }
}

TEST(CgMinimize, StationaryStartReturnsImmediately) {
  // f = -Re{sum phi} is stationary at all-ones
  ManifoldObjective o;
  o.value = [](const ComplexVector &p) { return -p.sum().real(); };
  o.euclidean_gradient = [](const ComplexVector &p) -> ComplexVector {
    return -ComplexVector::Ones(p.size());
  };
  const ComplexVector p0 = ComplexVector::Ones(4);
  const ManifoldResult r = cg_minimize(o, p0, LineSearchConfig{});
  EXPECT_EQ(r.iterations, 0);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.phi, p0);
  EXPECT_EQ(r.trace.size(), 1u);
}

TEST(CgMinimize, RiemannianGradientMatchesFiniteDifferences) {
  std::mt19937_64 g(58);
  const ComplexMatrix T = random_hermitian(g, 6);
  const ComplexVector b = random_vector(g, 6);
  const ManifoldObjective o = quadratic(T, b);
  const ComplexVector phi = random_phases(g, 6);
  const ComplexVector rg = riemannian_gradient(o.euclidean_gradient(phi), phi);
  for (int t = 0; t < 10; ++t) {
    const ComplexVector dir = riemannian_gradient(random_vector(g, 6), phi);
    const double h = 1e-6;
    const double fd = (o.value(phi + h * dir) - o.value(phi - h * dir)) / (2 * h);
    const double an = rg.dot(dir).real();
    EXPECT_LE(std::abs(fd - an), 1e-5 * std::max(1.0, std::abs(an)));
  }
}

TEST(LineSearchConfig, Validation) {
  LineSearchConfig c;
  EXPECT_NO_THROW(c.validate());
  c.nu = 1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = LineSearchConfig{};
  c.mu = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = LineSearchConfig{};
  c.rho = -1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}
