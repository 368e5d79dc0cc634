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
#include "dbvp/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <tuple>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "dbvp/linalg.hpp"

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace dbvp {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

double log_abs_det_lu(const Mat& m) {
  Eigen::PartialPivLU<Mat> lu(m);
  double acc = 0.0;
  for (Index i = 0; i < m.rows(); ++i) {
    const double d = std::abs(lu.matrixLU()(i, i));
    if (d == 0.0) return -std::numeric_limits<double>::infinity();
    acc += std::log(d);
  }
  return acc;
}

// Canonical eigenvalue order: descending |lambda|, then descending real
// part, then descending imaginary part.
bool canonical_before(const Complex& a, const Complex& b) {
  return std::make_tuple(std::abs(a), a.real(), a.imag()) >
         std::make_tuple(std::abs(b), b.real(), b.imag());
}

struct QzState {
  Mat S;  // Q^H * G * Z, upper triangular
  Mat T;  // Q^H * F * Z, upper triangular
  Mat Q;
  Mat Z;
};

// Eigenvalue of s*F - G at diagonal position i, as the ratio S_ii / T_ii.
Complex diag_eig(const QzState& qz, Index i) {
  return qz.S(i, i) / qz.T(i, i);
}

void reorder_finite_first(QzState& qz, const std::vector<lapack_int>& select,
                          Index m) {
  std::vector<Complex> alpha(m), beta(m);
  lapack_int p_out = 0;
  double pl = 0.0, pr = 0.0, dif[2] = {0.0, 0.0};
  std::vector<Complex> work(std::max<std::size_t>(1, 4 * m));
  std::vector<lapack_int> iwork(std::max<std::size_t>(1, m + 6));
  const lapack_int info = LAPACKE_ztgsen_work(
      LAPACK_COL_MAJOR, 0, 1, 1, select.data(), static_cast<lapack_int>(m),
      qz.S.data(), static_cast<lapack_int>(m), qz.T.data(),
      static_cast<lapack_int>(m), alpha.data(), beta.data(), qz.Q.data(),
      static_cast<lapack_int>(m), qz.Z.data(), static_cast<lapack_int>(m),
      &p_out, &pl, &pr, dif, work.data(), static_cast<lapack_int>(work.size()),
      iwork.data(), static_cast<lapack_int>(iwork.size()));
  if (info != 0) {
    throw DefectiveError(
        "weierstrass_decompose: spectrum reordering failed (ztgsen info=" +
        std::to_string(info) + ")");
  }
}

// Selection sort of the leading p eigenvalues into canonical order, using
// unitary swaps so S, T stay triangular and Q, Z stay exact transforms.
void sort_finite_block(QzState& qz, Index p, Index m) {
  for (Index i = 0; i + 1 < p; ++i) {
    Index best = i;
    for (Index j = i + 1; j < p; ++j) {
      if (canonical_before(diag_eig(qz, j), diag_eig(qz, best))) best = j;
    }
    if (best == i) continue;
    const lapack_int info = LAPACKE_ztgexc(
        LAPACK_COL_MAJOR, 1, 1, static_cast<lapack_int>(m), qz.S.data(),
        static_cast<lapack_int>(m), qz.T.data(), static_cast<lapack_int>(m),
        qz.Q.data(), static_cast<lapack_int>(m), qz.Z.data(),
        static_cast<lapack_int>(m), static_cast<lapack_int>(best + 1),
        static_cast<lapack_int>(i + 1));
    if (info != 0) {
      throw DefectiveError(
          "weierstrass_decompose: eigenvalue swap rejected as "
          "ill-conditioned (ztgexc info=" +
          std::to_string(info) + ")");
    }
  }
}

// Solves A11*R - L*A22 = -A12 and D11*R - L*D22 = -D12 for the coupled
// block-diagonalizing transforms of a reordered generalized Schur pair.
void decouple_blocks(const QzState& qz, Index p, Index q, Mat& r_out,
                     Mat& l_out) {
  const Mat s11 = qz.S.topLeftCorner(p, p);
  const Mat s22 = qz.S.bottomRightCorner(q, q);
  const Mat t11 = qz.T.topLeftCorner(p, p);
  const Mat t22 = qz.T.bottomRightCorner(q, q);
  Mat c = -qz.S.topRightCorner(p, q);
  Mat f = -qz.T.topRightCorner(p, q);
  double scale = 0.0, dif = 0.0;
  std::vector<Complex> work(4);
  std::vector<lapack_int> iwork(std::max<std::size_t>(1, p + q + 2));
  const lapack_int info = LAPACKE_ztgsyl_work(
      LAPACK_COL_MAJOR, 'N', 0, static_cast<lapack_int>(p),
      static_cast<lapack_int>(q), s11.data(), static_cast<lapack_int>(p),
      s22.data(), static_cast<lapack_int>(q), c.data(),
      static_cast<lapack_int>(p), t11.data(), static_cast<lapack_int>(p),
      t22.data(), static_cast<lapack_int>(q), f.data(),
      static_cast<lapack_int>(p), &scale, &dif, work.data(),
      static_cast<lapack_int>(work.size()), iwork.data());
  if (info != 0 || scale == 0.0) {
    throw DefectiveError(
        "weierstrass_decompose: finite/infinite blocks could not be "
        "decoupled (ztgsyl info=" +
        std::to_string(info) + ", scale=" + std::to_string(scale) + ")");
  }
  r_out = c / scale;
  l_out = -f / scale;
}

struct Cluster {
  Index begin = 0;
  Index size = 0;
  Complex mu;
  double radius = 0.0;
};

std::vector<Cluster> detect_clusters(const std::vector<Complex>& eigs,
                                     double cluster_tol) {
  std::vector<Cluster> clusters;
  Index i = 0;
  const Index p = static_cast<Index>(eigs.size());
  while (i < p) {
    Index j = i + 1;
    while (j < p && std::abs(eigs[j] - eigs[j - 1]) <= cluster_tol) ++j;
    Cluster c;
    c.begin = i;
    c.size = j - i;
    Complex sum = 0.0;
    for (Index k = i; k < j; ++k) sum += eigs[k];
    c.mu = sum / static_cast<double>(c.size);
    for (Index k = i; k < j; ++k) {
      c.radius = std::max(c.radius, std::abs(eigs[k] - c.mu));
    }
    clusters.push_back(c);
    i = j;
  }
  return clusters;
}

std::string describe_cluster(const Cluster& c) {
  std::ostringstream os;
  os << "eigenvalue cluster at (" << c.mu.real() << ", " << c.mu.imag()
     << ") of multiplicity " << c.size;
  return os.str();
}

// Orthonormal basis of the numerical nullspace of `a` at threshold `tol`.
Mat nullspace_basis(const Mat& a, double tol, Index& rank_out) {
  Eigen::JacobiSVD<Mat> dec(a, Eigen::ComputeFullV);
  const RealVec& s = dec.singularValues();
  Index r = 0;
  while (r < s.size() && s(r) > tol) ++r;
  rank_out = r;
  return dec.matrixV().rightCols(a.cols() - r);
}

struct ChainSet {
  Mat X;                                   // nc x nc, chain columns
  std::vector<Index> chain_lengths;        // descending
};

// Builds Jordan chains for one eigenvalue cluster from the nullspace
// filtration of M = block - mu*I. Chain columns are ordered eigenvector
// first, so block * X = X * (mu*I + N) with N the unit superdiagonal.
ChainSet jordanize_cluster(const Mat& block, const Cluster& cluster) {
  const Index nc = block.rows();
  ChainSet out;
  if (nc == 1) {
    out.X = Mat::Identity(1, 1);
    out.chain_lengths = {1};
    return out;
  }
  const Mat m = block - cluster.mu * Mat::Identity(nc, nc);
  const double mnorm = std::max(spectral_norm(m), kTiny);

  // Nullities of M^k with a threshold that treats both roundoff and the
  // cluster radius as zero.
  std::vector<Mat> null_bases(1, Mat::Zero(nc, 0));
  std::vector<Index> nullity(1, 0);
  Mat power = Mat::Identity(nc, nc);
  Index index = 0;
  for (Index k = 1; k <= nc; ++k) {
    power = power * m;
    const double sigma_max = spectral_norm(power);
    const double tol =
        std::max({64.0 * static_cast<double>(nc) * kEps * sigma_max,
                  2.0 * cluster.radius * std::pow(mnorm, double(k - 1)),
                  kTiny});
    Index rank = 0;
    Mat basis = nullspace_basis(power, tol, rank);
    nullity.push_back(nc - rank);
    null_bases.push_back(std::move(basis));
    if (nullity[k] == nc) {
      index = k;
      break;
    }
    if (nullity[k] <= nullity[k - 1]) {
      throw DefectiveError("weierstrass_decompose: nullspace filtration "
                           "stalled for " +
                           describe_cluster(cluster));
    }
  }
  if (index == 0) {
    throw DefectiveError(
        "weierstrass_decompose: Jordan chains could not be completed for " +
        describe_cluster(cluster));
  }

  // blocks_ge[k] = number of Jordan blocks of size >= k.
  std::vector<Index> blocks_ge(index + 1, 0);
  for (Index k = 1; k <= index; ++k) blocks_ge[k] = nullity[k] - nullity[k - 1];

  std::vector<std::vector<Vec>> chains;  // chains[c][i] = M^i * top
  for (Index k = index; k >= 1; --k) {
    const Index existing = static_cast<Index>(chains.size());
    const Index need = blocks_ge[k] - existing;
    if (need < 0) {
      throw DefectiveError(
          "weierstrass_decompose: inconsistent Jordan structure for " +
          describe_cluster(cluster));
    }
    if (need == 0) continue;
    // Exclude null(M^{k-1}) plus the height-k images of longer chains.
    Mat excluded(nc, null_bases[k - 1].cols() + existing);
    excluded.leftCols(null_bases[k - 1].cols()) = null_bases[k - 1];
    for (Index c = 0; c < existing; ++c) {
      const Index len = static_cast<Index>(chains[c].size());
      excluded.col(null_bases[k - 1].cols() + c) = chains[c][len - k];
    }
    Mat candidates = null_bases[k];
    if (excluded.cols() > 0) {
      Eigen::HouseholderQR<Mat> qr(excluded);
      Mat qbasis = qr.householderQ() * Mat::Identity(nc, excluded.cols());
      candidates -= qbasis * (qbasis.adjoint() * candidates);
    }
    Eigen::JacobiSVD<Mat> dec(candidates,
                              Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (dec.singularValues().size() < need ||
        dec.singularValues()(need - 1) < 0.1) {
      throw DefectiveError(
          "weierstrass_decompose: could not select independent chain tops "
          "for " +
          describe_cluster(cluster));
    }
    for (Index t = 0; t < need; ++t) {
      std::vector<Vec> chain;
      chain.push_back(dec.matrixU().col(t));
      for (Index i = 1; i < k; ++i) chain.push_back(m * chain.back());
      chains.push_back(std::move(chain));
    }
  }

  out.X = Mat(nc, nc);
  Index col = 0;
  for (const auto& chain : chains) {
    const Index len = static_cast<Index>(chain.size());
    for (Index i = 0; i < len; ++i) {
      out.X.col(col + i) = chain[len - 1 - i];
    }
    out.chain_lengths.push_back(len);
    col += len;
  }
  return out;
}

struct FiniteReduction {
  Mat X;                                     // p x p similarity
  Mat Jp;                                    // Jordan matrix
  std::vector<std::pair<Index, Index>> chain_spans;  // (start, length)
  std::vector<std::pair<Complex, int>> eigenvalues;
};

FiniteReduction reduce_finite_block(const Mat& af_in, double cluster_tol,
                                    const DecomposeOptions& options) {
  const Index p = af_in.rows();
  FiniteReduction red;
  red.X = Mat::Identity(p, p);
  red.Jp = Mat::Zero(p, p);
  if (p == 0) return red;

  Mat af = af_in;
  std::vector<Complex> eigs(p);
  for (Index i = 0; i < p; ++i) eigs[i] = af(i, i);
  const std::vector<Cluster> clusters = detect_clusters(eigs, cluster_tol);

  for (const Cluster& c : clusters) {
    const Index after = c.begin + c.size;
    const Index rest = p - after;
    if (rest > 0) {
      // Zero the coupling between this cluster and everything after it with
      // a similarity [I R; 0 I], R from the Sylvester equation
      // A11 R - R A22 = -A12.
      const Mat a11 = af.block(c.begin, c.begin, c.size, c.size);
      const Mat a22 = af.block(after, after, rest, rest);
      Mat rhs = -af.block(c.begin, after, c.size, rest);
      double scale = 0.0;
      const lapack_int info = LAPACKE_ztrsyl(
          LAPACK_COL_MAJOR, 'N', 'N', -1, static_cast<lapack_int>(c.size),
          static_cast<lapack_int>(rest), a11.data(),
          static_cast<lapack_int>(c.size), a22.data(),
          static_cast<lapack_int>(rest), rhs.data(),
          static_cast<lapack_int>(c.size), &scale);
      if (info < 0 || scale == 0.0) {
        throw DefectiveError(
            "weierstrass_decompose: cluster decoupling failed for " +
            describe_cluster(c));
      }
      const Mat r = rhs / scale;
      af.block(c.begin, after, c.size, rest).setZero();
      red.X.middleCols(after, rest) += red.X.middleCols(c.begin, c.size) * r;
    }
    ChainSet chains = jordanize_cluster(
        af.block(c.begin, c.begin, c.size, c.size), c);
    red.X.middleCols(c.begin, c.size) =
        red.X.middleCols(c.begin, c.size) * chains.X;
    Index start = c.begin;
    for (Index len : chains.chain_lengths) {
      red.chain_spans.emplace_back(start, len);
      for (Index i = 0; i < len; ++i) {
        red.Jp(start + i, start + i) = c.mu;
        if (i + 1 < len) red.Jp(start + i, start + i + 1) = 1.0;
      }
      start += len;
    }
    red.eigenvalues.emplace_back(c.mu, static_cast<int>(c.size));
  }

  const double cond = [&red] {
    Eigen::JacobiSVD<Mat> dec(red.X);
    const RealVec& s = dec.singularValues();
    return s(s.size() - 1) > 0.0
               ? s(0) / (s(s.size() - 1))
               : std::numeric_limits<double>::infinity();
  }();
  if (cond > options.max_similarity_cond) {
    std::ostringstream os;
    os << "weierstrass_decompose: pencil is defective beyond tolerance; the "
          "Jordan similarity has condition number "
       << cond << " (budget " << options.max_similarity_cond << ")";
    for (const Cluster& c : clusters) {
      if (c.size > 1) os << "; " << describe_cluster(c);
    }
    throw DefectiveError(os.str());
  }
  return red;
}

}  // namespace

MatrixPencil MatrixPencil::create(Mat f, Mat g) {
  if (f.rows() < 1 || f.rows() != f.cols()) {
    throw InvalidInputError("pencil: F must be square with size >= 1");
  }
  if (g.rows() != f.rows() || g.cols() != f.cols()) {
    throw InvalidInputError("pencil: G must match the dimensions of F");
  }
  ensure_finite(f, "pencil F");
  ensure_finite(g, "pencil G");
  return MatrixPencil{std::move(f), std::move(g)};
}

RegularityVerdict is_regular(const MatrixPencil& pencil, std::uint64_t seed,
                             double tol) {
  const Index m = pencil.size();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double norm_f = pencil.F.norm();
  const double norm_g = pencil.G.norm();
  const double radius =
      std::clamp(norm_g / std::max(norm_f, kTiny), 1.0, 1e3);

  std::vector<double> angles;
  while (static_cast<Index>(angles.size()) < m + 1) {
    const double theta = 2.0 * M_PI * unit(rng);
    bool distinct = true;
    for (double other : angles) {
      if (std::abs(theta - other) < 1e-9) distinct = false;
    }
    if (distinct) angles.push_back(theta);
  }

  RegularityVerdict verdict;
  for (double theta : angles) {
    const Complex s = radius * Complex(std::cos(theta), std::sin(theta));
    const Mat m_eval = s * pencil.F - pencil.G;
    double hadamard = 0.0;
    for (Index i = 0; i < m; ++i) {
      hadamard += std::log(std::max(m_eval.row(i).norm(), kTiny));
    }
    RegularityVerdict::Sample sample;
    sample.point = s;
    sample.log_abs_det = log_abs_det_lu(m_eval);
    sample.log_threshold = hadamard + std::log(tol);
    if (sample.log_abs_det > sample.log_threshold) verdict.regular = true;
    verdict.samples.push_back(sample);
  }
  return verdict;
}

PencilPartition make_partition(const WeierstrassForm& form) {
  PencilPartition part;
  if (form.has_full_transforms()) {
    part.Qp = form.Q.leftCols(form.p);
    part.Qq = form.Q.rightCols(form.q);
    part.P1 = form.P.topRows(form.p);
    part.P2 = form.P.bottomRows(form.q);
  } else {
    part.Qp = form.Qp;
    part.Qq = Mat(form.Qp.rows(), 0);
    part.P1 = Mat(0, form.Qp.rows());
    part.P2 = Mat(0, form.Qp.rows());
  }
  return part;
}

std::pair<WeierstrassForm, PencilPartition> weierstrass_decompose(
    const MatrixPencil& pencil, const DecomposeOptions& options) {
  const Index m = pencil.size();
  const RegularityVerdict verdict =
      is_regular(pencil, options.seed);
  if (!verdict.regular) {
    throw SingularPencilError(
        "weierstrass_decompose: singular pencil (det(sF-G) vanishes at all "
        "probe points)");
  }

  // Generalized Schur form of (G, F): eigenvalues of s*F - G are the ratios
  // alpha/beta of the pair, with beta ~ 0 marking the infinite spectrum.
  QzState qz{pencil.G, pencil.F, Mat(m, m), Mat(m, m)};
  Vec alpha(m), beta(m);
  lapack_int sdim = 0;
  const lapack_int gges_info = LAPACKE_zgges(
      LAPACK_COL_MAJOR, 'V', 'V', 'N', nullptr, static_cast<lapack_int>(m),
      qz.S.data(), static_cast<lapack_int>(m), qz.T.data(),
      static_cast<lapack_int>(m), &sdim, alpha.data(), beta.data(),
      qz.Q.data(), static_cast<lapack_int>(m), qz.Z.data(),
      static_cast<lapack_int>(m));
  if (gges_info != 0) {
    throw Error("weierstrass_decompose: QZ iteration failed (zgges info=" +
                std::to_string(gges_info) + ")");
  }

  std::vector<lapack_int> select(m);
  Index p = 0;
  for (Index i = 0; i < m; ++i) {
    const double mag = std::abs(alpha(i)) + std::abs(beta(i));
    if (mag <= kTiny) {
      throw SingularPencilError(
          "weierstrass_decompose: singular pencil (indeterminate eigenvalue "
          "alpha=beta=0)");
    }
    select[i] =
        std::abs(beta(i)) > options.eig_split_tol * mag ? 1 : 0;
    if (select[i]) ++p;
  }
  const Index q = m - p;

  if (p > 0 && q > 0) reorder_finite_first(qz, select, m);
  sort_finite_block(qz, p, m);

  // P1 (sF-G) Q1 is block upper triangular; kill the off-diagonal coupling.
  Mat p_rows = qz.Q.adjoint();
  Mat q_cols = qz.Z;
  if (p > 0 && q > 0) {
    Mat r, l;
    decouple_blocks(qz, p, q, r, l);
    p_rows.topRows(p) += l * p_rows.bottomRows(q);
    q_cols.rightCols(q) += q_cols.leftCols(p) * r;
  }

  WeierstrassForm form;
  form.p = p;
  form.q = q;

  FiniteReduction finite;
  Mat t11;
  if (p > 0) {
    t11 = qz.T.topLeftCorner(p, p);
    Mat af = t11.triangularView<Eigen::Upper>().solve(
        Mat(qz.S.topLeftCorner(p, p)));
    af.triangularView<Eigen::StrictlyLower>().setZero();
    const double cluster_tol =
        options.jordan_cluster_tol_factor * spectral_norm(pencil.G);
    finite = reduce_finite_block(af, cluster_tol, options);
  } else {
    finite.X = Mat(0, 0);
    finite.Jp = Mat(0, 0);
  }
  form.Jp = finite.Jp;
  form.finite_eigenvalues = finite.eigenvalues;

  if (q > 0) {
    const Mat s22 = qz.S.bottomRightCorner(q, q);
    Mat hq = s22.triangularView<Eigen::Upper>().solve(
        Mat(qz.T.bottomRightCorner(q, q)));
    // The diagonal carries the (classified-infinite) ratios beta/alpha;
    // force exact strict-upper structure so nilpotency is structural.
    hq.triangularView<Eigen::Lower>().setZero();
    form.Hq = hq;
    const double hnorm = spectral_norm(hq);
    Mat power = hq;
    for (Index k = 1; k <= q; ++k) {
      if (spectral_norm(power) <= 1e-12 * std::pow(1.0 + hnorm, double(k))) {
        form.q_star = k;
        break;
      }
      power = power * hq;
    }
  } else {
    form.Hq = Mat(0, 0);
    form.q_star = 0;
  }

  // Assemble Q = Z' * blkdiag(X, I) and P = blkdiag((T11 X)^-1, S22^-1) P1'.
  Mat q_full = q_cols;
  if (p > 0) q_full.leftCols(p) = q_cols.leftCols(p) * finite.X;
  Mat p_full(m, m);
  if (p > 0) {
    p_full.topRows(p) =
        Eigen::PartialPivLU<Mat>(t11 * finite.X).solve(Mat(p_rows.topRows(p)));
  }
  if (q > 0) {
    p_full.bottomRows(q) =
        qz.S.bottomRightCorner(q, q).triangularView<Eigen::Upper>().solve(
            Mat(p_rows.bottomRows(q)));
  }

  // Canonical chain scaling: unit-norm eigenvector with its first
  // significant entry real positive, the same scalar across the chain.
  for (const auto& [start, len] : finite.chain_spans) {
    const Vec eigvec = q_full.col(start);
    const double norm = eigvec.norm();
    if (norm <= kTiny) continue;
    Complex pivot = 0.0;
    for (Index i = 0; i < eigvec.size(); ++i) {
      if (std::abs(eigvec(i)) > 1e-8 * norm) {
        pivot = eigvec(i);
        break;
      }
    }
    const Complex phase =
        std::abs(pivot) > 0.0 ? pivot / std::abs(pivot) : Complex(1.0);
    const Complex scale = 1.0 / (norm * phase);
    for (Index j = start; j < start + len; ++j) {
      q_full.col(j) *= scale;
      p_full.row(j) /= scale;
    }
  }

  form.P = p_full;
  form.Q = q_full;
  form.Qp = q_full.leftCols(p);
  return {form, make_partition(form)};
}

std::pair<double, double> verify_wcf(const MatrixPencil& pencil,
                                     const WeierstrassForm& form) {
  const Index m = pencil.size();
  if (!form.has_full_transforms()) {
    throw InvalidInputError(
        "verify_wcf: form carries no full P/Q transforms");
  }
  if (form.P.rows() != m || form.P.cols() != m || form.Q.rows() != m ||
      form.Q.cols() != m || form.p + form.q != m ||
      form.Jp.rows() != form.p || form.Jp.cols() != form.p ||
      form.Hq.rows() != form.q || form.Hq.cols() != form.q) {
    throw InvalidInputError("verify_wcf: dimension mismatch");
  }
  Mat f_target = Mat::Zero(m, m);
  f_target.topLeftCorner(form.p, form.p) =
      Mat::Identity(form.p, form.p);
  f_target.bottomRightCorner(form.q, form.q) = form.Hq;
  Mat g_target = Mat::Zero(m, m);
  g_target.topLeftCorner(form.p, form.p) = form.Jp;
  g_target.bottomRightCorner(form.q, form.q) =
      Mat::Identity(form.q, form.q);
  const double res_f = spectral_norm(form.P * pencil.F * form.Q - f_target);
  const double res_g = spectral_norm(form.P * pencil.G * form.Q - g_target);
  return {res_f, res_g};
}

}  // namespace dbvp
