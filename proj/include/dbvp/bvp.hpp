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
#ifndef DBVP_BVP_HPP
#define DBVP_BVP_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dbvp/pencil.hpp"
#include "dbvp/types.hpp"

namespace dbvp {

/// F Y_{k+1} = G Y_k for k = 0..N-1 with A1 Y_0 = B1 and A2 Y_N = B2.
struct BoundaryValueProblem {
  MatrixPencil pencil;
  Mat A1;  // r1 x m
  Mat B1;  // r1 x 1
  Mat A2;  // r2 x m
  Mat B2;  // r2 x 1
  int N = 1;

  static BoundaryValueProblem create(MatrixPencil pencil, Mat a1, Mat b1,
                                     Mat a2, Mat b2, int n);
  Index r1() const { return A1.rows(); }
  Index r2() const { return A2.rows(); }
};

/// The (r1+r2) x p system K C = L in the free constant C.
struct ReducedSystem {
  Mat K;
  Mat L;
  Index p() const { return K.cols(); }
  Index rows() const { return K.rows(); }
};

enum class SolutionCase { UniqueSolution, InfiniteSolutions, NoSolution };

enum class TheoremBranch {
  T22_square_full,
  T22_tall_full_member,
  T22_wide_full,
  T22_deficient_member,
  T31a_tall_full_nonmember,
  T31b_deficient_nonmember,
};

enum class Strategy {
  ExactSolve,
  PseudoinverseSolve,
  MinNorm,
  Regularized,
  LeastSquares,
};

const char* to_string(SolutionCase c);
const char* to_string(TheoremBranch b);
const char* to_string(Strategy s);
std::optional<Strategy> strategy_from_string(const std::string& name);

struct ConsistencyReport {
  Index rank_K = 0;
  bool full_rank = false;
  bool membership = false;
  SolutionCase solution_case = SolutionCase::NoSolution;
  TheoremBranch theorem_branch = TheoremBranch::T22_square_full;
  Strategy strategy = Strategy::ExactSolve;
};

struct SolutionBundle {
  Vec C_hat;
  Strategy strategy = Strategy::ExactSolve;
  std::vector<Vec> trajectory;  // Y_0 .. Y_N
  double dynamics_residual = 0.0;
  std::pair<double, double> boundary_residual = {0.0, 0.0};
  double perturbation_magnitude = 0.0;  // ||L - K C_hat||_2
  std::vector<std::string> warnings;
};

/// K = [A1 Qp ; A2 Qp Jp^N], L = [B1 ; B2]. Throws NoFiniteDynamicsError
/// when p = 0 (C is empty; only the zero trajectory exists).
ReducedSystem build_reduced_system(const WeierstrassForm& form,
                                   const PencilPartition& part,
                                   const BoundaryValueProblem& bvp);

/// Consistency classification and strategy dispatch. Rank deficiency is
/// tested first; membership only decides between the solvable and
/// unsolvable halves of each rank regime.
ConsistencyReport classify(const ReducedSystem& rs, Index p,
                           std::optional<double> tol = std::nullopt);

/// (K*K)^-1 K* L; requires full column rank.
Vec solve_least_squares(const ReducedSystem& rs);

/// (K*K + E*E)^-1 K* L. When `warnings` is given, a note is appended if
/// ||E||_2 >= 0.1 (the regularizer is assumed small).
Vec solve_regularized(const ReducedSystem& rs, const Mat& e,
                      std::vector<std::string>* warnings = nullptr);
Vec solve_regularized(const ReducedSystem& rs, double theta,
                      std::vector<std::string>* warnings = nullptr);

/// K^+ L (defined for every K).
Vec solve_pinv(const ReducedSystem& rs);

/// K* (K K*)^-1 L; requires p > r1+r2 and full row rank.
Vec solve_min_norm(const ReducedSystem& rs);

/// The unique solution of K C = L; requires a UniqueSolution classification.
Vec solve_exact(const ReducedSystem& rs);

/// Y_k = Qp Jp^k C for k = 0..N, by iterated state multiplication.
std::vector<Vec> trajectory(const WeierstrassForm& form,
                            const PencilPartition& part, const Vec& c_hat,
                            int n);

struct SolveOptions {
  std::optional<double> tol;          // rank tolerance (default: automatic)
  double theta = 1e-5;                // default regularizer: E = theta * I_p
  std::optional<Mat> E;               // explicit regularizer
  std::optional<Strategy> strategy_override;
  std::optional<WeierstrassForm> injected_wcf;
  std::uint64_t seed = 0;
};

struct SolveResult {
  ConsistencyReport report;
  SolutionBundle bundle;
  WeierstrassForm form;
};

/// Full pipeline: decompose (or inject), build K/L, classify, dispatch the
/// strategy (or honor the override after checking its preconditions), and
/// certify the trajectory with residuals.
SolveResult solve_bvp(const BoundaryValueProblem& bvp,
                      const SolveOptions& options = {});

}  // namespace dbvp

#endif  // DBVP_BVP_HPP
