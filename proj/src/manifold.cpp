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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace rissec {

void LineSearchConfig::validate() const {
  if (!(rho > 0.0))
    throw std::invalid_argument("line search: rho must be positive");
  if (!(mu > 0.0 && mu < 1.0))
    throw std::invalid_argument("line search: mu must lie in (0, 1)");
  if (!(nu > 0.0 && nu < 1.0))
    throw std::invalid_argument("line search: nu must lie in (0, 1)");
  if (max_backtracks < 1 || max_iters < 1)
    throw std::invalid_argument("line search: iteration caps must be >= 1");
  if (!(eps_grad > 0.0))
    throw std::invalid_argument("line search: eps_grad must be positive");
}

ComplexVector riemannian_gradient(const ComplexVector &grad,
                                  const ComplexVector &phi) {
  if (grad.size() != phi.size())
    throw DimensionError("riemannian_gradient: size mismatch");
  ComplexVector out(grad.size());
  for (Eigen::Index i = 0; i < grad.size(); ++i)
    out(i) = grad(i) - (grad(i) * std::conj(phi(i))).real() * phi(i);
  return out;
}

ComplexVector retract(const ComplexVector &phi_hat) {
  ComplexVector out(phi_hat.size());
  for (Eigen::Index i = 0; i < phi_hat.size(); ++i) {
    const double a = std::abs(phi_hat(i));
    if (!(a > 0.0) || !std::isfinite(a))
      throw NumericError("retract: zero or non-finite entry");
    out(i) = phi_hat(i) / a;
  }
  return out;
}

ComplexVector transport(const ComplexVector &r, const ComplexVector &phi_new) {
  return riemannian_gradient(r, phi_new);
}

double unit_modulus_residual(const ComplexVector &phi) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < phi.size(); ++i)
    worst = std::max(worst, std::abs(std::abs(phi(i)) - 1.0));
  return worst;
}

namespace {

double real_inner(const ComplexVector &a, const ComplexVector &b) {
  return a.dot(b).real(); // Re{a^H b}
}

struct StepResult {
  bool accepted = false;
  ComplexVector phi;
  double value = 0.0;
};

// The accepted step may still overshoot the 1-D minimum. If the quadratic
// model puts the minimum well inside it, try that point and keep the lower.
StepResult refine(const ManifoldObjective &obj, const ComplexVector &phi,
                  const ComplexVector &dir, double value, double slope,
                  double tau, StepResult accepted) {
  const double curv = accepted.value - value - slope * tau;
  if (!(curv > 0.0))
    return accepted;
  const double t = -slope * tau * tau / (2.0 * curv);
  if (!(t > 1e-3 * tau && t < 0.9 * tau))
    return accepted;
  try {
    ComplexVector cand = retract(phi + t * dir);
    const double v = obj.value(cand);
    if (std::isfinite(v) && v < accepted.value)
      return {true, std::move(cand), v};
  } catch (const NumericError &) {
  }
  return accepted;
}

StepResult armijo(const ManifoldObjective &obj, const ComplexVector &phi,
                  double value, const ComplexVector &rgrad,
                  const ComplexVector &dir, const LineSearchConfig &cfg) {
  const double slope = real_inner(rgrad, dir);
  double tau = cfg.rho;
  for (int b = 0; b < cfg.max_backtracks; ++b) {
    ComplexVector cand;
    try {
      cand = retract(phi + tau * dir);
    } catch (const NumericError &) {
      tau *= cfg.nu;
      continue;
    }
    const double v = obj.value(cand);
    if (std::isfinite(v) && v - value <= cfg.mu * tau * slope) {
      return refine(obj, phi, dir, value, slope, tau, {true, cand, v});
    }
    // Shrink towards the minimizer of the quadratic through value, slope and
    // v, clamped to [0.1, nu] times tau. Plain halving overshoots the 1-D
    // minimum often enough to wreck conjugacy on stiff surrogates.
    double next = cfg.nu * tau;
    const double curv = v - value - slope * tau;
    if (std::isfinite(v) && curv > 0.0)
      next = std::clamp(-slope * tau * tau / (2.0 * curv),
                        std::min(0.1, cfg.nu) * tau, next);
    tau = next;
  }
  return {};
}

} // namespace

ManifoldResult cg_minimize(const ManifoldObjective &obj,
                           const ComplexVector &phi0,
                           const LineSearchConfig &cfg) {
  cfg.validate();
  if (!obj.value || !obj.euclidean_gradient)
    throw std::invalid_argument("cg_minimize: incomplete objective");
  ManifoldResult res;
  res.phi = retract(phi0);
  double value = obj.value(res.phi);
  res.trace.push_back(value);
  if (res.phi.size() == 0) {
    res.converged = true;
    return res;
  }
  ComplexVector rgrad =
      riemannian_gradient(obj.euclidean_gradient(res.phi), res.phi);
  res.grad_norm2 = rgrad.squaredNorm();
  if (res.grad_norm2 == 0.0 || res.grad_norm2 <= cfg.eps_grad) {
    res.converged = true;
    return res;
  }
  ComplexVector dir = -rgrad;
  bool steepest = true;
  for (int it = 0; it < cfg.max_iters; ++it) {
    if (!steepest && real_inner(rgrad, dir) >= 0.0) {
      dir = -rgrad;
      steepest = true;
      ++res.direction_resets;
    }
    StepResult step = armijo(obj, res.phi, value, rgrad, dir, cfg);
    if (!step.accepted && !steepest) {
      // conjugate direction failed: one steepest-descent attempt
      dir = -rgrad;
      ++res.direction_resets;
      step = armijo(obj, res.phi, value, rgrad, dir, cfg);
    }
    if (!step.accepted) {
      res.stalled = true;
      break;
    }
    const ComplexVector grad_new =
        riemannian_gradient(obj.euclidean_gradient(step.phi), step.phi);
    const ComplexVector old_grad_t = transport(rgrad, step.phi);
    const ComplexVector dir_t = transport(dir, step.phi);
    const double denom = rgrad.squaredNorm();
    double zeta = denom > 0.0 ? real_inner(grad_new, grad_new - old_grad_t) /
                                    denom
                              : 0.0;
    // Powell restart: successive gradients far from orthogonal
    if (!std::isfinite(zeta) ||
        std::abs(real_inner(grad_new, old_grad_t)) >=
            0.2 * grad_new.squaredNorm())
      zeta = 0.0;
    res.phi = step.phi;
    value = step.value;
    res.trace.push_back(value);
    rgrad = grad_new;
    dir = -rgrad + zeta * dir_t;
    steepest = zeta == 0.0;
    res.iterations = it + 1;
    res.grad_norm2 = rgrad.squaredNorm();
    if (res.grad_norm2 <= cfg.eps_grad) {
      res.converged = true;
      break;
    }
  }
  return res;
}

} // namespace rissec
