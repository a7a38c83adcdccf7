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

// Dense complex linear algebra and scalar root finding shared by every solver.
//
// Matrices are Eigen::MatrixXcd. Functions that require Hermitian input check
// the property (1e-12 absolute, scaled by the matrix magnitude) and throw on
// violation. Base-2 log-determinants are exposed at the API surface; natural
// logs are available for the MSE reformulation (the two differ by ln 2 and the
// optimizers are indifferent to the factor).

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace rissec {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kLn2 = 0.69314718055994530942;

class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class NotPsdError : public NumericError {
public:
  NotPsdError(const std::string &what, double smallest)
      : NumericError(what), smallest_eigenvalue(smallest) {}
  double smallest_eigenvalue;
};

class NoRootError : public NumericError {
public:
  using NumericError::NumericError;
};

struct HermitianEig {
  RealVector values;     // descending
  ComplexMatrix vectors; // columns are eigenvectors, unitary
};

/// Relative clamp applied to eigenvalues of PSD matrices assembled from
/// outer products.
inline constexpr double kPsdClampRelative = 1e-10;
/// Singular values below this fraction of the largest are discarded by the
/// pseudo-inverse.
inline constexpr double kPinvRelative = 1e-12;

bool all_finite(const ComplexMatrix &a);
bool is_hermitian(const ComplexMatrix &a, double tol = 1e-12);
void require_finite(const ComplexMatrix &a, const char *what);
void require_hermitian(const ComplexMatrix &a, const char *what);

/// Returns (A + A^H) / 2. Used to remove rounding asymmetry before
/// eigendecompositions of matrices that are Hermitian by construction.
ComplexMatrix hermitian_part(const ComplexMatrix &a);

HermitianEig hermitian_eig(const ComplexMatrix &a);

/// B with B B^H = A. B is the Hermitian square root, so B^H = B as well.
/// Throws NotPsdError when an eigenvalue is below -1e-6 * max|lambda|.
ComplexMatrix psd_sqrt(const ComplexMatrix &a);

/// Hermitian pseudo-inverse via eigendecomposition.
ComplexMatrix hermitian_pinv(const ComplexMatrix &a,
                             double relative = kPinvRelative);

/// Inverse of a Hermitian positive definite matrix. A ridge of
/// 1e-12 * max|lambda| is added when the Cholesky factorization fails;
/// `regularized` (if given) reports whether that happened.
ComplexMatrix hpd_inverse(const ComplexMatrix &a, bool *regularized = nullptr);

/// B^H A^{-1} B for Hermitian positive definite A, formed as G^H G with
/// G = L^{-1} B so the result is PSD even when A is badly conditioned.
/// Uses the same ridge fallback as hpd_inverse.
ComplexMatrix hpd_quadratic(const ComplexMatrix &a, const ComplexMatrix &b,
                            bool *regularized = nullptr);

/// B^H A^+ B for Hermitian PSD A using hermitian_pinv's rank rule, formed
/// as G^H G so the result is PSD.
ComplexMatrix psd_pinv_quadratic(const ComplexMatrix &a, const ComplexMatrix &b,
                                 double relative = kPinvRelative);

/// log|A| (natural log) for Hermitian positive definite A, via Cholesky.
double logdet_hpd(const ComplexMatrix &a);
/// log2|A| for Hermitian positive definite A.
double logdet_psd(const ComplexMatrix &a);

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix hadamard(const ComplexMatrix &a, const ComplexMatrix &b);
/// Column-stacking vectorization, returned as an (rows*cols) x 1 matrix.
ComplexMatrix vec(const ComplexMatrix &a);
ComplexMatrix unvec(const ComplexMatrix &v, Eigen::Index rows,
                    Eigen::Index cols);
/// Diagonal of a square matrix as a column.
ComplexMatrix vec_d(const ComplexMatrix &a);

struct BisectionProblem {
  std::function<double(double)> evaluate; // monotone non-increasing
  double target = 0.0;
  double lower = 0.0;
  double upper = 1.0;
  double tolerance = 1e-12;
};

/// Solves evaluate(x) = target on [lower, upper] for a non-increasing
/// evaluate. Returns `lower` when evaluate(lower) <= target. The upper end is
/// doubled (at most 200 times) until evaluate(upper) <= target; NoRootError
/// otherwise. The returned point always satisfies evaluate(x) <= target + tol
/// (the feasible side), which the multiplier searches rely on.
double bisect(const BisectionProblem &p);

} // namespace rissec
