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
#ifndef DBVP_ORACLE_HPP
#define DBVP_ORACLE_HPP

#include <cstdint>
#include <functional>

#include "dbvp/pencil.hpp"
#include "dbvp/types.hpp"

namespace dbvp {

// Independent verification machinery. Everything here is deliberately
// simple-minded (sampling, grids, finite differences) so it cannot share a
// failure mode with the analytic solvers it certifies.

enum class EigenvalueLayout { Distinct, Clustered, JordanBlocks };

struct ConstructedPencil {
  Mat F;
  Mat G;
  WeierstrassForm ground_truth;
  std::uint64_t seed = 0;
};

/// Builds F = P^-1 blkdiag(I_p, H) Q^-1 and G = P^-1 blkdiag(J, I_q) Q^-1
/// from random invertible P, Q with condition number <= cond_cap. H is a
/// direct sum of nilpotent shift blocks; J follows the requested layout.
ConstructedPencil random_regular_pencil(
    Index p, Index q, std::uint64_t seed, double cond_cap,
    EigenvalueLayout layout = EigenvalueLayout::Distinct);

/// D(C) = ||L - K C||^2 + ||E C||^2 with an empty E meaning no regularizer.
double quadratic_functional(const Mat& k, const Mat& l, const Mat& e,
                            const Vec& c);

/// True iff D(c_hat) <= D(c_hat + step * d) for `trials` seeded random unit
/// directions d. A probabilistic local-optimality certificate.
bool local_optimality_check(const Mat& k, const Mat& l, const Mat& e,
                            const Vec& c_hat, int trials, double step,
                            std::uint64_t seed);

enum class FunctionalId { D2, D3FixedLambda, D4 };

/// Central-difference gradient of a real functional over the re/im
/// coordinates of `at`, packed as a complex vector
/// (d/dRe + i d/dIm per component).
Vec finite_difference_gradient(const std::function<double(const Vec&)>& f,
                               const Vec& at, double h);

/// Same, for the named functional. D2 and D4 are the regularized residual
/// functional; D3 is the minimum-norm Lagrangian with lambda held fixed at
/// 2 (K K*)^-1 L.
Vec finite_difference_gradient(FunctionalId id, const Mat& k, const Mat& l,
                               const Mat& e, const Vec& at, double h);

/// Grid minimizer of ||L - K C||^2 + ||E C||^2 over real C in
/// [-grid_radius, grid_radius]^p, p <= 2. The exhaustive backstop for the
/// analytic solvers on small problems.
Vec exhaustive_small_lsq(const Mat& k, const Mat& l, double grid_radius,
                         Index grid_steps, const Mat& e = Mat(0, 0));

}  // namespace dbvp

#endif  // DBVP_ORACLE_HPP
