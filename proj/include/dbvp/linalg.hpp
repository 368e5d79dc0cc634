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
#ifndef DBVP_LINALG_HPP
#define DBVP_LINALG_HPP

#include <optional>

#include "dbvp/types.hpp"

namespace dbvp {

/// Full singular value decomposition A = U * Sigma * V^H.
/// U is rows x rows, V is cols x cols, both unitary; singular values are
/// non-increasing and non-negative.
struct SvdResult {
  Mat U;
  RealVec singular_values;
  Mat V;

  /// Rebuilds U * Sigma * V^H (for residual certificates).
  Mat reconstruct(Index rows, Index cols) const;
};

SvdResult svd(const Mat& a);

/// Default truncation threshold: sigma_max * max(rows, cols) * machine eps.
double rank_tolerance(const Mat& a);
double rank_tolerance_from_sigma(double sigma_max, Index rows, Index cols);

/// Number of singular values strictly above `tol` (default: rank_tolerance).
Index numerical_rank(const Mat& a, std::optional<double> tol = std::nullopt);

/// Moore-Penrose pseudoinverse via SVD truncation. The zero matrix maps to
/// the zero matrix of transposed shape.
Mat pseudoinverse(const Mat& a, std::optional<double> tol = std::nullopt);

/// Solves A x = b for Hermitian positive definite A by Cholesky
/// factorization. Throws NotPositiveDefiniteError naming the failing pivot
/// index when A is not positive definite.
Mat solve_hermitian_spd(const Mat& a, const Mat& b);

/// Largest singular value.
double spectral_norm(const Mat& a);

/// True iff ||b - A A^+ b|| <= tol * max(1, ||b||). Default tol = 1e-10.
bool colspan_membership(const Mat& a, const Mat& b,
                        std::optional<double> tol = std::nullopt);

}  // namespace dbvp

#endif  // DBVP_LINALG_HPP
