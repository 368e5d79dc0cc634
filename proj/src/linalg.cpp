/*
   Copyright 2026 the descriptor-bvp authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/
#include "dbvp/linalg.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <sstream>

namespace dbvp {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

void ensure_finite(const Mat& a, const std::string& name) {
  if (!a.allFinite()) {
    throw InvalidInputError(name + ": entries must be finite (no NaN/Inf)");
  }
}

Mat SvdResult::reconstruct(Index rows, Index cols) const {
  Mat sigma = Mat::Zero(rows, cols);
  for (Index i = 0; i < singular_values.size(); ++i) {
    sigma(i, i) = singular_values(i);
  }
  return U * sigma * V.adjoint();
}

SvdResult svd(const Mat& a) {
  ensure_finite(a, "svd input");
  Eigen::JacobiSVD<Mat> dec(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (dec.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "svd: iteration did not converge for " << a.rows() << "x"
        << a.cols() << " matrix; partial singular values:";
    for (Index i = 0; i < dec.singularValues().size(); ++i) {
      msg << " " << dec.singularValues()(i);
    }
    throw SvdConvergenceError(msg.str());
  }
  return SvdResult{dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

double rank_tolerance_from_sigma(double sigma_max, Index rows, Index cols) {
  return sigma_max * static_cast<double>(std::max(rows, cols)) * kEps;
}

double rank_tolerance(const Mat& a) {
  return rank_tolerance_from_sigma(spectral_norm(a), a.rows(), a.cols());
}

Index numerical_rank(const Mat& a, std::optional<double> tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> dec(a);
  const RealVec& s = dec.singularValues();
  const double threshold =
      tol.value_or(rank_tolerance_from_sigma(s.size() ? s(0) : 0.0,
                                             a.rows(), a.cols()));
  Index r = 0;
  while (r < s.size() && s(r) > threshold) ++r;
  return r;
}

Mat pseudoinverse(const Mat& a, std::optional<double> tol) {
  if (a.size() == 0) return Mat::Zero(a.cols(), a.rows());
  SvdResult dec = svd(a);
  const double sigma_max = dec.singular_values.size()
                               ? dec.singular_values(0)
                               : 0.0;
  const double threshold = tol.value_or(
      rank_tolerance_from_sigma(sigma_max, a.rows(), a.cols()));
  Mat result = Mat::Zero(a.cols(), a.rows());
  for (Index i = 0; i < dec.singular_values.size(); ++i) {
    if (dec.singular_values(i) > threshold) {
      result += (1.0 / dec.singular_values(i)) * dec.V.col(i) *
                dec.U.col(i).adjoint();
    }
  }
  return result;
}

Mat solve_hermitian_spd(const Mat& a, const Mat& b) {
  const Index n = a.rows();
  if (a.cols() != n) {
    throw InvalidInputError("solve_hermitian_spd: matrix must be square");
  }
  if (b.rows() != n) {
    throw InvalidInputError(
        "solve_hermitian_spd: right-hand side row count mismatch");
  }
  ensure_finite(a, "solve_hermitian_spd matrix");
  ensure_finite(b, "solve_hermitian_spd rhs");
  const double scale = a.cwiseAbs().maxCoeff();
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, scale)) {
    throw InvalidInputError("solve_hermitian_spd: matrix is not Hermitian");
  }

  // In-place lower Cholesky with an explicit pivot check so the failure
  // diagnostic can name the offending index.
  Mat l = Mat::Zero(n, n);
  const double pivot_floor = static_cast<double>(n) * kEps * scale;
  for (Index j = 0; j < n; ++j) {
    double d = a(j, j).real();
    for (Index k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > pivot_floor)) {
      std::ostringstream msg;
      msg << "solve_hermitian_spd: not positive definite (pivot " << j
          << " = " << d << ")";
      throw NotPositiveDefiniteError(msg.str());
    }
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (Index i = j + 1; i < n; ++i) {
      Complex s = a(i, j);
      for (Index k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  Mat y = l.triangularView<Eigen::Lower>().solve(b);
  return l.adjoint().triangularView<Eigen::Upper>().solve(y);
}

double spectral_norm(const Mat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> dec(a);
  return dec.singularValues().size() ? dec.singularValues()(0) : 0.0;
}

bool colspan_membership(const Mat& a, const Mat& b,
                        std::optional<double> tol) {
  if (b.rows() != a.rows()) {
    throw InvalidInputError("colspan_membership: b must have a.rows entries");
  }
  const double threshold = tol.value_or(1e-10);
  const Mat residual = b - a * (pseudoinverse(a) * b);
  return residual.norm() <= threshold * std::max(1.0, b.norm());
}

}  // namespace dbvp
