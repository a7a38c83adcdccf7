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

#include <Eigen/SVD>
#include <cmath>

namespace rissec {

CombinerSystem make_combiner_system(const ComplexMatrix &E,
                                    const ComplexMatrix &F,
                                    const ComplexMatrix &J) {
  if (E.rows() != E.cols() || F.rows() != F.cols() || J.rows() != E.rows() ||
      J.cols() != F.rows())
    throw DimensionError("combiner: shape mismatch");
  CombinerSystem sys;
  sys.rows = J.rows();
  sys.cols = J.cols();
  sys.eig = hermitian_eig(
      hermitian_part(kron(hermitian_part(F).transpose(), hermitian_part(E))));
  sys.coeffs = sys.eig.vectors.adjoint() * vec(J);
  return sys;
}

namespace {

bool is_null(const CombinerSystem &sys, Eigen::Index p) {
  const double largest =
      sys.eig.values.size() ? sys.eig.values.cwiseAbs().maxCoeff() : 0.0;
  return !(sys.eig.values(p) > kPinvRelative * largest);
}

} // namespace

double combiner_norm2(const CombinerSystem &sys, double kappa) {
  double acc = 0.0;
  for (Eigen::Index p = 0; p < sys.coeffs.size(); ++p) {
    if (is_null(sys, p))
      continue;
    const double d = sys.eig.values(p) + kappa;
    acc += std::norm(sys.coeffs(p)) / (d * d);
  }
  return acc;
}

ComplexMatrix combiner_at(const CombinerSystem &sys, double kappa) {
  ComplexVector scaled(sys.coeffs.size());
  for (Eigen::Index p = 0; p < sys.coeffs.size(); ++p)
    scaled(p) =
        is_null(sys, p) ? Complex(0.0) : sys.coeffs(p) / (sys.eig.values(p) + kappa);
  return unvec(sys.eig.vectors * scaled, sys.rows, sys.cols);
}

CombinerSolution solve_combiner(const ComplexMatrix &E, const ComplexMatrix &F,
                                const ComplexMatrix &J, double budget,
                                double tolerance) {
  const CombinerSystem sys = make_combiner_system(E, F, J);
  CombinerSolution out;
  BisectionProblem p;
  p.evaluate = [&sys](double k) { return combiner_norm2(sys, k); };
  p.target = budget;
  p.lower = 0.0;
  p.upper = 1.0;
  p.tolerance = tolerance * budget;
  try {
    out.kappa = bisect(p);
  } catch (const NoRootError &) {
    out.kappa = 0.0;
    out.bracket_failed = true;
  }
  out.U = combiner_at(sys, out.kappa);
  out.norm2 = out.U.squaredNorm();
  if (out.norm2 > budget) { // rounding on the feasible side
    out.U *= std::sqrt(budget / out.norm2);
    out.norm2 = out.U.squaredNorm();
  }
  return out;
}

ComplexMatrix balanced_combiner(const ComplexMatrix &U) {
  if (U.cols() == 0 || U.cols() > U.rows())
    throw DimensionError("balanced_combiner: need a tall non-empty matrix");
  Eigen::JacobiSVD<ComplexMatrix> svd(U, Eigen::ComputeThinU |
                                             Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint() /
         std::sqrt(static_cast<double>(U.cols()));
}

} // namespace rissec
