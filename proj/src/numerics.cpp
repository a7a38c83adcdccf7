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

#include "rissec/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rissec {

bool all_finite(const ComplexMatrix &a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag()))
        return false;
  return true;
}

bool is_hermitian(const ComplexMatrix &a, double tol) {
  if (a.rows() != a.cols())
    return false;
  if (a.size() == 0)
    return true;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i <= j; ++i)
      if (std::abs(a(i, j) - std::conj(a(j, i))) > tol * scale)
        return false;
  return true;
}

void require_finite(const ComplexMatrix &a, const char *what) {
  if (!all_finite(a))
    throw NumericError(std::string(what) + ": non-finite entries");
}

void require_hermitian(const ComplexMatrix &a, const char *what) {
  require_finite(a, what);
  if (a.rows() != a.cols())
    throw DimensionError(std::string(what) + ": matrix is not square");
  if (!is_hermitian(a))
    throw NumericError(std::string(what) + ": matrix is not Hermitian");
}

ComplexMatrix hermitian_part(const ComplexMatrix &a) {
  return 0.5 * (a + a.adjoint());
}

HermitianEig hermitian_eig(const ComplexMatrix &a) {
  require_hermitian(a, "hermitian_eig");
  const Eigen::Index n = a.rows();
  HermitianEig out;
  if (n == 0) {
    out.values.resize(0);
    out.vectors.resize(0, 0);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(a));
  if (solver.info() != Eigen::Success)
    throw NumericError("hermitian_eig: eigensolver did not converge");
  // Eigen sorts ascending.
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

ComplexMatrix psd_sqrt(const ComplexMatrix &a) {
  if (a.rows() == 0)
    return ComplexMatrix(0, 0);
  const HermitianEig eig = hermitian_eig(a);
  const double largest = eig.values.cwiseAbs().maxCoeff();
  const double smallest = eig.values.minCoeff();
  if (smallest < -1e-6 * largest) {
    std::ostringstream msg;
    msg << "psd_sqrt: matrix is not positive semi-definite (smallest "
           "eigenvalue "
        << smallest << ")";
    throw NotPsdError(msg.str(), smallest);
  }
  RealVector roots(eig.values.size());
  for (Eigen::Index i = 0; i < roots.size(); ++i) {
    const double v = eig.values(i);
    roots(i) = v > kPsdClampRelative * largest ? std::sqrt(v) : 0.0;
  }
  return eig.vectors * roots.cast<Complex>().asDiagonal() *
         eig.vectors.adjoint();
}

ComplexMatrix hermitian_pinv(const ComplexMatrix &a, double relative) {
  if (a.rows() == 0)
    return ComplexMatrix(0, 0);
  const HermitianEig eig = hermitian_eig(a);
  const double largest = eig.values.cwiseAbs().maxCoeff();
  RealVector inv(eig.values.size());
  for (Eigen::Index i = 0; i < inv.size(); ++i) {
    const double v = eig.values(i);
    inv(i) = std::abs(v) > relative * largest && largest > 0.0 ? 1.0 / v : 0.0;
  }
  return eig.vectors * inv.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix hpd_inverse(const ComplexMatrix &a, bool *regularized) {
  if (regularized)
    *regularized = false;
  const Eigen::Index n = a.rows();
  if (n == 0)
    return ComplexMatrix(0, 0);
  const ComplexMatrix h = hermitian_part(a);
  Eigen::LLT<ComplexMatrix> llt(h);
  if (llt.info() == Eigen::Success)
    return llt.solve(ComplexMatrix::Identity(n, n));
  if (regularized)
    *regularized = true;
  const double scale = std::max(h.cwiseAbs().maxCoeff(), 1e-300);
  ComplexMatrix ridge = h;
  ridge.diagonal().array() += 1e-12 * scale;
  const HermitianEig eig = hermitian_eig(ridge);
  RealVector inv(n);
  for (Eigen::Index i = 0; i < n; ++i)
    inv(i) = 1.0 / std::max(eig.values(i), 1e-12 * scale);
  return eig.vectors * inv.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix hpd_quadratic(const ComplexMatrix &a, const ComplexMatrix &b,
                            bool *regularized) {
  if (regularized)
    *regularized = false;
  if (a.rows() != a.cols() || b.rows() != a.rows())
    throw DimensionError("hpd_quadratic: shape mismatch");
  if (a.rows() == 0)
    return ComplexMatrix::Zero(b.cols(), b.cols());
  ComplexMatrix h = hermitian_part(a);
  Eigen::LLT<ComplexMatrix> llt(h);
  if (llt.info() != Eigen::Success) {
    if (regularized)
      *regularized = true;
    h.diagonal().array() += 1e-12 * std::max(h.cwiseAbs().maxCoeff(), 1e-300);
    llt.compute(h);
    if (llt.info() != Eigen::Success)
      throw NumericError("hpd_quadratic: matrix not positive definite");
  }
  const ComplexMatrix g = llt.matrixL().solve(b);
  return g.adjoint() * g;
}

ComplexMatrix psd_pinv_quadratic(const ComplexMatrix &a, const ComplexMatrix &b,
                                 double relative) {
  if (a.rows() != a.cols() || b.rows() != a.rows())
    throw DimensionError("psd_pinv_quadratic: shape mismatch");
  if (a.rows() == 0)
    return ComplexMatrix::Zero(b.cols(), b.cols());
  const HermitianEig eig = hermitian_eig(hermitian_part(a));
  const double largest = eig.values.cwiseAbs().maxCoeff();
  ComplexMatrix g = eig.vectors.adjoint() * b;
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    const double v = eig.values(i);
    if (largest > 0.0 && v > relative * largest)
      g.row(i) /= std::sqrt(v);
    else
      g.row(i).setZero();
  }
  return g.adjoint() * g;
}

double logdet_hpd(const ComplexMatrix &a) {
  require_hermitian(a, "logdet");
  if (a.rows() == 0)
    return 0.0;
  Eigen::LLT<ComplexMatrix> llt(hermitian_part(a));
  if (llt.info() != Eigen::Success) {
    const double smallest = hermitian_eig(a).values.minCoeff();
    std::ostringstream msg;
    msg << "logdet: matrix is not positive definite (smallest eigenvalue "
        << smallest << ")";
    throw NotPsdError(msg.str(), smallest);
  }
  const auto &l = llt.matrixLLT();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    acc += std::log(l(i, i).real());
  return 2.0 * acc;
}

double logdet_psd(const ComplexMatrix &a) { return logdet_hpd(a) / kLn2; }

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix hadamard(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("hadamard: shape mismatch");
  return a.cwiseProduct(b);
}

ComplexMatrix vec(const ComplexMatrix &a) {
  ComplexMatrix out(a.size(), 1);
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    out.block(j * a.rows(), 0, a.rows(), 1) = a.col(j);
  return out;
}

ComplexMatrix unvec(const ComplexMatrix &v, Eigen::Index rows,
                    Eigen::Index cols) {
  if (v.cols() != 1 || v.rows() != rows * cols)
    throw DimensionError("unvec: size mismatch");
  ComplexMatrix out(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    out.col(j) = v.block(j * rows, 0, rows, 1);
  return out;
}

ComplexMatrix vec_d(const ComplexMatrix &a) {
  if (a.rows() != a.cols())
    throw DimensionError("vec_d: matrix is not square");
  return a.diagonal();
}

double bisect(const BisectionProblem &p) {
  if (!p.evaluate)
    throw std::invalid_argument("bisect: no function");
  if (!(p.upper > p.lower))
    throw std::invalid_argument("bisect: empty bracket");
  double lo = p.lower;
  double hi = p.upper;
  const double f_lo = p.evaluate(lo);
  if (f_lo <= p.target)
    return lo;
  double f_hi = p.evaluate(hi);
  int doublings = 0;
  while (!(f_hi <= p.target)) {
    if (++doublings > 200)
      throw NoRootError("bisect: bracket expansion failed");
    lo = hi;
    hi = hi > 0.0 ? 2.0 * hi : 1.0;
    f_hi = p.evaluate(hi);
  }
  // Invariant: f(lo) > target >= f(hi).
  for (int it = 0; it < 2000; ++it) {
    if (p.target - f_hi <= p.tolerance)
      return hi;
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= 1e-14 * std::max(1.0, mid) || mid <= lo || mid >= hi)
      return hi;
    const double f_mid = p.evaluate(mid);
    if (f_mid <= p.target) {
      hi = mid;
      f_hi = f_mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

} // namespace rissec
