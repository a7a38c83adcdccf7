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

// Conjugate-gradient minimization on the complex circle manifold
// {phi : |phi_i| = 1}. The objective supplies its value and its Euclidean
// gradient 2 df/dphi^*; tangent projection, retraction and transport are
// handled here.

#include "rissec/numerics.hpp"

#include <functional>
#include <vector>

namespace rissec {

struct ManifoldObjective {
  std::function<double(const ComplexVector &)> value;
  std::function<ComplexVector(const ComplexVector &)> euclidean_gradient;
};

struct LineSearchConfig {
  double rho = 1.0;  // initial step
  double mu = 1e-4;  // sufficient decrease
  double nu = 0.5;   // backtracking factor
  int max_backtracks = 50;
  double eps_grad = 1e-8; // on the squared Riemannian gradient norm
  int max_iters = 500;

  void validate() const;
};

struct ManifoldResult {
  ComplexVector phi;
  std::vector<double> trace; // objective values, first entry at phi0
  double grad_norm2 = 0.0;   // squared Riemannian gradient norm at phi
  int iterations = 0;
  int direction_resets = 0;
  bool converged = false;
  bool stalled = false;
};

/// grad - Re{grad .* conj(phi)} .* phi
ComplexVector riemannian_gradient(const ComplexVector &grad,
                                  const ComplexVector &phi);

/// Entrywise phi_i / |phi_i|. Throws NumericError on a zero entry.
ComplexVector retract(const ComplexVector &phi_hat);

/// Projects r onto the tangent space at phi_new.
ComplexVector transport(const ComplexVector &r, const ComplexVector &phi_new);

/// Largest | |phi_i| - 1 |.
double unit_modulus_residual(const ComplexVector &phi);

ManifoldResult cg_minimize(const ManifoldObjective &obj,
                           const ComplexVector &phi0,
                           const LineSearchConfig &cfg);

} // namespace rissec
