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
#include "dbvp/bvp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dbvp/linalg.hpp"

namespace dbvp {

namespace {

Mat matrix_power_iterated(const Mat& a, int n) {
  Mat result = Mat::Identity(a.rows(), a.cols());
  for (int k = 0; k < n; ++k) result = a * result;
  return result;
}

void require(bool condition, const std::string& message) {
  if (!condition) throw PreconditionError(message);
}

}  // namespace

const char* to_string(SolutionCase c) {
  switch (c) {
    case SolutionCase::UniqueSolution: return "UniqueSolution";
    case SolutionCase::InfiniteSolutions: return "InfiniteSolutions";
    case SolutionCase::NoSolution: return "NoSolution";
  }
  return "?";
}

const char* to_string(TheoremBranch b) {
  switch (b) {
    case TheoremBranch::T22_square_full: return "T22_square_full";
    case TheoremBranch::T22_tall_full_member: return "T22_tall_full_member";
    case TheoremBranch::T22_wide_full: return "T22_wide_full";
    case TheoremBranch::T22_deficient_member: return "T22_deficient_member";
    case TheoremBranch::T31a_tall_full_nonmember:
      return "T31a_tall_full_nonmember";
    case TheoremBranch::T31b_deficient_nonmember:
      return "T31b_deficient_nonmember";
  }
  return "?";
}

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::ExactSolve: return "ExactSolve";
    case Strategy::PseudoinverseSolve: return "PseudoinverseSolve";
    case Strategy::MinNorm: return "MinNorm";
    case Strategy::Regularized: return "Regularized";
    case Strategy::LeastSquares: return "LeastSquares";
  }
  return "?";
}

std::optional<Strategy> strategy_from_string(const std::string& name) {
  if (name == "exact" || name == "ExactSolve") return Strategy::ExactSolve;
  if (name == "pinv" || name == "PseudoinverseSolve") {
    return Strategy::PseudoinverseSolve;
  }
  if (name == "minnorm" || name == "MinNorm") return Strategy::MinNorm;
  if (name == "regularized" || name == "Regularized") {
    return Strategy::Regularized;
  }
  if (name == "lsq" || name == "LeastSquares") return Strategy::LeastSquares;
  return std::nullopt;
}

BoundaryValueProblem BoundaryValueProblem::create(MatrixPencil pencil,
                                                  Mat a1, Mat b1, Mat a2,
                                                  Mat b2, int n) {
  const Index m = pencil.size();
  if (a1.cols() != m || a2.cols() != m) {
    throw InvalidInputError(
        "bvp: boundary matrices must have as many columns as the pencil");
  }
  if (b1.rows() != a1.rows() || b1.cols() > 1 || b2.rows() != a2.rows() ||
      b2.cols() > 1) {
    throw InvalidInputError(
        "bvp: boundary vectors must be columns matching A1/A2 row counts");
  }
  if (n < 1) throw InvalidInputError("bvp: N must be >= 1");
  ensure_finite(a1, "bvp A1");
  ensure_finite(b1, "bvp B1");
  ensure_finite(a2, "bvp A2");
  ensure_finite(b2, "bvp B2");
  // Normalize 0-column empties so L assembles cleanly.
  if (b1.cols() == 0) b1 = Mat::Zero(a1.rows(), 1);
  if (b2.cols() == 0) b2 = Mat::Zero(a2.rows(), 1);
  return BoundaryValueProblem{std::move(pencil), std::move(a1),
                              std::move(b1),     std::move(a2),
                              std::move(b2),     n};
}

ReducedSystem build_reduced_system(const WeierstrassForm& form,
                                   const PencilPartition& part,
                                   const BoundaryValueProblem& bvp) {
  if (form.p == 0) {
    throw NoFiniteDynamicsError(
        "build_reduced_system: no finite dynamics (p = 0); the only "
        "trajectory is Y_k = 0");
  }
  const Index m = bvp.pencil.size();
  if (part.Qp.rows() != m || part.Qp.cols() != form.p ||
      form.Jp.rows() != form.p) {
    throw InvalidInputError("build_reduced_system: partition/form mismatch");
  }
  ReducedSystem rs;
  rs.K = Mat(bvp.r1() + bvp.r2(), form.p);
  rs.K.topRows(bvp.r1()) = bvp.A1 * part.Qp;
  rs.K.bottomRows(bvp.r2()) =
      bvp.A2 * part.Qp * matrix_power_iterated(form.Jp, bvp.N);
  rs.L = Mat(bvp.r1() + bvp.r2(), 1);
  rs.L.topRows(bvp.r1()) = bvp.B1;
  rs.L.bottomRows(bvp.r2()) = bvp.B2;
  return rs;
}

ConsistencyReport classify(const ReducedSystem& rs, Index p,
                           std::optional<double> tol) {
  if (rs.K.cols() != p) {
    throw InvalidInputError("classify: K column count must equal p");
  }
  const Index r = rs.rows();
  ConsistencyReport report;
  report.rank_K = numerical_rank(rs.K, tol);
  report.full_rank = report.rank_K == std::min(p, r);
  // Full row rank makes colspan K the whole space; skip the projection test
  // there so membership cannot flip on roundoff.
  report.membership =
      report.rank_K == r || colspan_membership(rs.K, rs.L);

  if (report.rank_K == p && p == r) {
    report.solution_case = SolutionCase::UniqueSolution;
    report.theorem_branch = TheoremBranch::T22_square_full;
    report.strategy = Strategy::ExactSolve;
    report.membership = true;
  } else if (report.rank_K == p && p < r) {
    if (report.membership) {
      report.solution_case = SolutionCase::UniqueSolution;
      report.theorem_branch = TheoremBranch::T22_tall_full_member;
      report.strategy = Strategy::ExactSolve;
    } else {
      report.solution_case = SolutionCase::NoSolution;
      report.theorem_branch = TheoremBranch::T31a_tall_full_nonmember;
      report.strategy = Strategy::LeastSquares;
    }
  } else if (report.rank_K == r && p > r) {
    report.solution_case = SolutionCase::InfiniteSolutions;
    report.theorem_branch = TheoremBranch::T22_wide_full;
    report.strategy = Strategy::MinNorm;
  } else if (report.membership) {
    report.solution_case = SolutionCase::InfiniteSolutions;
    report.theorem_branch = TheoremBranch::T22_deficient_member;
    report.strategy = Strategy::PseudoinverseSolve;
  } else {
    report.solution_case = SolutionCase::NoSolution;
    report.theorem_branch = TheoremBranch::T31b_deficient_nonmember;
    report.strategy = Strategy::Regularized;
  }
  return report;
}

Vec solve_least_squares(const ReducedSystem& rs) {
  if (numerical_rank(rs.K) < rs.p()) {
    throw PreconditionError(
        "solve_least_squares: K is rank deficient; use the regularized "
        "solver");
  }
  const Mat normal = rs.K.adjoint() * rs.K;
  return solve_hermitian_spd(normal, rs.K.adjoint() * rs.L).col(0);
}

Vec solve_regularized(const ReducedSystem& rs, const Mat& e,
                      std::vector<std::string>* warnings) {
  if (e.cols() != rs.p()) {
    throw InvalidInputError(
        "solve_regularized: E must have p columns");
  }
  const double theta = spectral_norm(e);
  if (theta >= 0.1 && warnings != nullptr) {
    std::ostringstream os;
    os << "regularizer is not small: ||E||_2 = " << theta << " >= 0.1";
    warnings->push_back(os.str());
  }
  const Mat normal = rs.K.adjoint() * rs.K + e.adjoint() * e;
  try {
    return solve_hermitian_spd(normal, rs.K.adjoint() * rs.L).col(0);
  } catch (const NotPositiveDefiniteError& err) {
    throw PreconditionError(
        std::string("solve_regularized: E too small; K*K + E*E is not "
                    "numerically invertible (") +
        err.what() + ")");
  }
}

Vec solve_regularized(const ReducedSystem& rs, double theta,
                      std::vector<std::string>* warnings) {
  return solve_regularized(
      rs, Mat(theta * Mat::Identity(rs.p(), rs.p())), warnings);
}

Vec solve_pinv(const ReducedSystem& rs) {
  return (pseudoinverse(rs.K) * rs.L).col(0);
}

Vec solve_min_norm(const ReducedSystem& rs) {
  const Index r = rs.rows();
  if (!(rs.p() > r) || numerical_rank(rs.K) < r) {
    throw PreconditionError(
        "solve_min_norm: requires p > r1+r2 with full row rank; use the "
        "regularized or pseudoinverse solver");
  }
  const Mat gram = rs.K * rs.K.adjoint();
  return (rs.K.adjoint() * solve_hermitian_spd(gram, rs.L)).col(0);
}

Vec solve_exact(const ReducedSystem& rs) {
  const ConsistencyReport report = classify(rs, rs.p());
  if (report.solution_case != SolutionCase::UniqueSolution) {
    throw PreconditionError(
        "solve_exact: system does not have a unique solution");
  }
  const Vec c = (pseudoinverse(rs.K) * rs.L).col(0);
  const double scale =
      spectral_norm(rs.K) * c.norm() + rs.L.norm();
  const double residual = (rs.K * c - rs.L).norm();
  if (residual > 1e-10 * std::max(1.0, scale)) {
    throw PreconditionError(
        "solve_exact: residual exceeds the unique-solution certificate");
  }
  return c;
}

std::vector<Vec> trajectory(const WeierstrassForm& form,
                            const PencilPartition& part, const Vec& c_hat,
                            int n) {
  if (c_hat.size() != form.p) {
    throw InvalidInputError("trajectory: C must have p entries");
  }
  std::vector<Vec> out;
  out.reserve(n + 1);
  Vec state = c_hat;
  out.push_back(part.Qp * state);
  for (int k = 1; k <= n; ++k) {
    state = form.Jp * state;
    out.push_back(part.Qp * state);
  }
  return out;
}

SolveResult solve_bvp(const BoundaryValueProblem& bvp,
                      const SolveOptions& options) {
  SolveResult result;
  PencilPartition part;
  if (options.injected_wcf.has_value()) {
    result.form = *options.injected_wcf;
    if (result.form.Qp.rows() != bvp.pencil.size() ||
        result.form.Jp.rows() != result.form.p ||
        result.form.Jp.cols() != result.form.p ||
        result.form.Qp.cols() != result.form.p) {
      throw InvalidInputError("solve_bvp: injected form dimension mismatch");
    }
    part = make_partition(result.form);
  } else {
    DecomposeOptions dopt;
    dopt.seed = options.seed;
    std::tie(result.form, part) = weierstrass_decompose(bvp.pencil, dopt);
  }

  const ReducedSystem rs = build_reduced_system(result.form, part, bvp);
  result.report = classify(rs, result.form.p, options.tol);

  Strategy strategy = result.report.strategy;
  if (options.strategy_override.has_value()) {
    strategy = *options.strategy_override;
    // Validate the override against the classification before solving.
    switch (strategy) {
      case Strategy::ExactSolve:
        require(result.report.solution_case == SolutionCase::UniqueSolution,
                "solve_bvp: exact solve requires a unique solution");
        break;
      case Strategy::LeastSquares:
        require(result.report.rank_K == rs.p(),
                "solve_bvp: least squares requires full column rank");
        break;
      case Strategy::MinNorm:
        require(rs.p() > rs.rows() && result.report.rank_K == rs.rows(),
                "solve_bvp: minimum norm requires p > r1+r2 with full row "
                "rank");
        break;
      case Strategy::PseudoinverseSolve:
      case Strategy::Regularized:
        break;
    }
  }

  SolutionBundle bundle;
  bundle.strategy = strategy;
  switch (strategy) {
    case Strategy::ExactSolve:
      bundle.C_hat = solve_exact(rs);
      break;
    case Strategy::LeastSquares:
      bundle.C_hat = solve_least_squares(rs);
      break;
    case Strategy::MinNorm:
      bundle.C_hat = solve_min_norm(rs);
      break;
    case Strategy::PseudoinverseSolve:
      bundle.C_hat = solve_pinv(rs);
      break;
    case Strategy::Regularized:
      if (options.E.has_value()) {
        bundle.C_hat = solve_regularized(rs, *options.E, &bundle.warnings);
      } else {
        bundle.C_hat =
            solve_regularized(rs, options.theta, &bundle.warnings);
      }
      break;
  }

  bundle.trajectory = trajectory(result.form, part, bundle.C_hat, bvp.N);
  for (int k = 0; k < bvp.N; ++k) {
    const double res = (bvp.pencil.F * bundle.trajectory[k + 1] -
                        bvp.pencil.G * bundle.trajectory[k])
                           .norm();
    bundle.dynamics_residual = std::max(bundle.dynamics_residual, res);
  }
  bundle.boundary_residual = {
      (bvp.A1 * bundle.trajectory.front() - bvp.B1).norm(),
      (bvp.A2 * bundle.trajectory.back() - bvp.B2).norm()};
  bundle.perturbation_magnitude = (rs.L - rs.K * bundle.C_hat).norm();
  result.bundle = std::move(bundle);
  return result;
}

}  // namespace dbvp
