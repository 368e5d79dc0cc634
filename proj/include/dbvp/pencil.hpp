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
#ifndef DBVP_PENCIL_HPP
#define DBVP_PENCIL_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "dbvp/types.hpp"

namespace dbvp {

/// The one-parameter matrix family s*F - G, F and G square of equal size.
struct MatrixPencil {
  Mat F;
  Mat G;

  static MatrixPencil create(Mat f, Mat g);
  Index size() const { return F.rows(); }
};

/// Outcome of the probabilistic regularity test: det(s*F - G) evaluated at
/// size+1 deterministic pseudo-random points. A degree-<=m polynomial that
/// vanishes at m+1 distinct points vanishes identically.
struct RegularityVerdict {
  struct Sample {
    Complex point;
    double log_abs_det;     // log |det(s*F - G)|, -inf when exactly singular
    double log_threshold;   // log of the Hadamard-scaled cutoff
  };
  bool regular = false;
  std::vector<Sample> samples;
};

/// Equivalence transform P (s*F - G) Q splitting the pencil into a finite
/// block (s*I_p - Jp) and an infinite block (s*Hq - I_q), Hq nilpotent of
/// index q_star. P and Q may be empty (size 0) for externally supplied
/// forms that carry only the finite-block data.
struct WeierstrassForm {
  Mat P;    // m x m, invertible (or empty for injected partial forms)
  Mat Q;    // m x m, invertible (or empty)
  Mat Qp;   // m x p, the leading p columns of Q
  Mat Jp;   // p x p, Jordan matrix of the finite spectrum
  Mat Hq;   // q x q, nilpotent (or empty when unknown)
  Index p = 0;
  Index q = 0;
  Index q_star = 0;  // nilpotency index of Hq; -1 when Hq is unknown
  std::vector<std::pair<Complex, int>> finite_eigenvalues;

  bool has_full_transforms() const { return P.size() > 0 && Q.size() > 0; }
};

/// Column split of Q and row split of P induced by the p/q block sizes.
struct PencilPartition {
  Mat Qp;  // m x p
  Mat Qq;  // m x q
  Mat P1;  // p x m
  Mat P2;  // q x m
};

PencilPartition make_partition(const WeierstrassForm& form);

struct DecomposeOptions {
  // An eigenvalue (alpha, beta) counts as infinite when
  // |beta| <= eig_split_tol * (|alpha| + |beta|).
  double eig_split_tol = 1e-8;
  // Eigenvalues closer than jordan_cluster_tol_factor * ||G||_2 are treated
  // as one cluster and reduced jointly.
  double jordan_cluster_tol_factor = 1e-6;
  // Refuse to return a similarity transform worse conditioned than this.
  double max_similarity_cond = 1e8;
  // Seed for the regularity pre-check.
  std::uint64_t seed = 0;
};

/// Probabilistic regularity test with a recorded witness.
RegularityVerdict is_regular(const MatrixPencil& pencil,
                             std::uint64_t seed = 0, double tol = 1e-12);

/// Numerical Weierstrass canonical form of a regular pencil.
///
/// Throws SingularPencilError when the regularity pre-check fails and
/// DefectiveError when a Jordan chain cannot be completed within the
/// conditioning budget (the offending eigenvalue cluster is reported).
std::pair<WeierstrassForm, PencilPartition> weierstrass_decompose(
    const MatrixPencil& pencil, const DecomposeOptions& options = {});

/// Certifies a form against its pencil. Returns
///   ( ||P F Q - blkdiag(I_p, Hq)||_2 , ||P G Q - blkdiag(Jp, I_q)||_2 ).
std::pair<double, double> verify_wcf(const MatrixPencil& pencil,
                                     const WeierstrassForm& form);

}  // namespace dbvp

#endif  // DBVP_PENCIL_HPP
