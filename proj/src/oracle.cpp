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
#include "dbvp/oracle.hpp"

#include <Eigen/QR>
#include <cmath>
#include <random>

#include "dbvp/linalg.hpp"

namespace dbvp {

namespace {

Mat random_complex(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat out(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      out(i, j) = Complex(gauss(rng), gauss(rng));
    }
  }
  return out;
}

Mat random_unitary(Index n, std::mt19937_64& rng) {
  if (n == 0) return Mat(0, 0);
  Eigen::HouseholderQR<Mat> qr(random_complex(n, n, rng));
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  // Fix the phase of R's diagonal so the distribution is Haar-like and,
  // more importantly here, fully determined by the seed.
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    q.col(i) *= std::abs(d) > 0 ? d / std::abs(d) : Complex(1.0);
  }
  return q;
}

// Random matrix with singular values in [1, cond_cap].
Mat random_well_conditioned(Index n, double cond_cap, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Mat u = random_unitary(n, rng);
  const Mat v = random_unitary(n, rng);
  RealVec sigma(n);
  for (Index i = 0; i < n; ++i) {
    sigma(i) = std::exp(unit(rng) * std::log(cond_cap));
  }
  return u * sigma.asDiagonal() * v.adjoint();
}

std::vector<Complex> eigenvalue_set(Index count, std::uint64_t salt,
                                    std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Complex> values;
  (void)salt;
  while (static_cast<Index>(values.size()) < count) {
    const double mag = 0.3 + 0.8 * unit(rng);
    const double arg = 2.0 * M_PI * unit(rng);
    Complex candidate = mag * Complex(std::cos(arg), std::sin(arg));
    // Real eigenvalues half the time; descriptor benchmarks are mostly real.
    if (unit(rng) < 0.5) candidate = Complex(mag * (unit(rng) < 0.5 ? 1 : -1));
    bool separated = true;
    for (const Complex& other : values) {
      if (std::abs(candidate - other) < 0.1) separated = false;
    }
    if (separated) values.push_back(candidate);
  }
  return values;
}

}  // namespace

ConstructedPencil random_regular_pencil(Index p, Index q, std::uint64_t seed,
                                        double cond_cap,
                                        EigenvalueLayout layout) {
  if (p < 0 || q < 0 || p + q < 1) {
    throw InvalidInputError("random_regular_pencil: p + q must be >= 1");
  }
  if (!(cond_cap > 1.0)) {
    throw InvalidInputError("random_regular_pencil: cond_cap must be > 1");
  }
  const Index m = p + q;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Mat j = Mat::Zero(p, p);
  std::vector<std::pair<Complex, int>> eig_list;
  std::vector<Index> block_sizes;
  switch (layout) {
    case EigenvalueLayout::Distinct: {
      const auto values = eigenvalue_set(p, seed, rng);
      for (Index i = 0; i < p; ++i) {
        j(i, i) = values[i];
        eig_list.emplace_back(values[i], 1);
      }
      block_sizes.assign(p, 1);
      break;
    }
    case EigenvalueLayout::Clustered: {
      // Tight clusters, radius far below the decomposition's residual
      // certificate, around well separated centers.
      Index remaining = p;
      auto centers = eigenvalue_set(std::max<Index>(1, (p + 1) / 2), seed,
                                    rng);
      std::size_t ci = 0;
      Index pos = 0;
      while (remaining > 0) {
        const Index size =
            std::min<Index>(remaining, 1 + (rng() % 2));
        const Complex center = centers[ci % centers.size()];
        for (Index i = 0; i < size; ++i) {
          const double r = 1e-10 * unit(rng);
          const double a = 2.0 * M_PI * unit(rng);
          j(pos, pos) = center + r * Complex(std::cos(a), std::sin(a));
          block_sizes.push_back(1);
          ++pos;
        }
        eig_list.emplace_back(center, static_cast<int>(size));
        remaining -= size;
        ++ci;
      }
      break;
    }
    case EigenvalueLayout::JordanBlocks: {
      Index remaining = p;
      Index pos = 0;
      std::vector<Complex> used;
      while (remaining > 0) {
        const Index size = std::min<Index>(remaining, 1 + (rng() % 3));
        Complex value;
        while (true) {
          value = eigenvalue_set(1, seed, rng)[0];
          bool separated = true;
          for (const Complex& other : used) {
            if (std::abs(value - other) < 0.1) separated = false;
          }
          if (separated) break;
        }
        used.push_back(value);
        for (Index i = 0; i < size; ++i) {
          j(pos + i, pos + i) = value;
          if (i + 1 < size) j(pos + i, pos + i + 1) = 1.0;
        }
        eig_list.emplace_back(value, static_cast<int>(size));
        block_sizes.push_back(size);
        pos += size;
        remaining -= size;
      }
      break;
    }
  }

  Mat h = Mat::Zero(q, q);
  Index q_star = q > 0 ? 1 : 0;
  {
    Index remaining = q;
    Index pos = 0;
    while (remaining > 0) {
      const Index size = std::min<Index>(remaining, 1 + (rng() % 3));
      for (Index i = 0; i + 1 < size; ++i) h(pos + i, pos + i + 1) = 1.0;
      q_star = std::max(q_star, size);
      pos += size;
      remaining -= size;
    }
  }

  const Mat pmat = random_well_conditioned(m, cond_cap, rng);
  const Mat qmat = random_well_conditioned(m, cond_cap, rng);
  const Mat p_inv = pmat.inverse();
  const Mat q_inv = qmat.inverse();

  Mat blk_f = Mat::Zero(m, m);
  blk_f.topLeftCorner(p, p) = Mat::Identity(p, p);
  blk_f.bottomRightCorner(q, q) = h;
  Mat blk_g = Mat::Zero(m, m);
  blk_g.topLeftCorner(p, p) = j;
  blk_g.bottomRightCorner(q, q) = Mat::Identity(q, q);

  ConstructedPencil out;
  out.F = p_inv * blk_f * q_inv;
  out.G = p_inv * blk_g * q_inv;
  out.seed = seed;
  out.ground_truth.P = pmat;
  out.ground_truth.Q = qmat;
  out.ground_truth.Qp = qmat.leftCols(p);
  out.ground_truth.Jp = j;
  out.ground_truth.Hq = h;
  out.ground_truth.p = p;
  out.ground_truth.q = q;
  out.ground_truth.q_star = q_star;
  out.ground_truth.finite_eigenvalues = eig_list;
  return out;
}

double quadratic_functional(const Mat& k, const Mat& l, const Mat& e,
                            const Vec& c) {
  double value = (l - k * c).squaredNorm();
  if (e.size() > 0) value += (e * c).squaredNorm();
  return value;
}

bool local_optimality_check(const Mat& k, const Mat& l, const Mat& e,
                            const Vec& c_hat, int trials, double step,
                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double base = quadratic_functional(k, l, e, c_hat);
  for (int t = 0; t < trials; ++t) {
    Vec d(c_hat.size());
    for (Index i = 0; i < d.size(); ++i) {
      d(i) = Complex(gauss(rng), gauss(rng));
    }
    const double norm = d.norm();
    if (norm == 0.0) continue;
    d /= norm;
    if (quadratic_functional(k, l, e, c_hat + step * d) < base) return false;
  }
  return true;
}

Vec finite_difference_gradient(const std::function<double(const Vec&)>& f,
                               const Vec& at, double h) {
  if (!(h > 0.0)) {
    throw InvalidInputError("finite_difference_gradient: h must be > 0");
  }
  Vec grad(at.size());
  Vec probe = at;
  for (Index i = 0; i < at.size(); ++i) {
    probe(i) = at(i) + h;
    const double re_plus = f(probe);
    probe(i) = at(i) - h;
    const double re_minus = f(probe);
    probe(i) = at(i) + Complex(0.0, h);
    const double im_plus = f(probe);
    probe(i) = at(i) - Complex(0.0, h);
    const double im_minus = f(probe);
    probe(i) = at(i);
    grad(i) = Complex((re_plus - re_minus) / (2.0 * h),
                      (im_plus - im_minus) / (2.0 * h));
  }
  return grad;
}

Vec finite_difference_gradient(FunctionalId id, const Mat& k, const Mat& l,
                               const Mat& e, const Vec& at, double h) {
  switch (id) {
    case FunctionalId::D2:
    case FunctionalId::D4:
      return finite_difference_gradient(
          [&](const Vec& c) { return quadratic_functional(k, l, e, c); }, at,
          h);
    case FunctionalId::D3FixedLambda: {
      const Vec lambda =
          2.0 * solve_hermitian_spd(k * k.adjoint(), l).col(0);
      return finite_difference_gradient(
          [&](const Vec& c) {
            return c.squaredNorm() +
                   ((lambda.adjoint() * (l - k * c))(0)).real();
          },
          at, h);
    }
  }
  throw InvalidInputError("finite_difference_gradient: unknown functional");
}

Vec exhaustive_small_lsq(const Mat& k, const Mat& l, double grid_radius,
                         Index grid_steps, const Mat& e) {
  const Index p = k.cols();
  if (p > 2) {
    throw InvalidInputError("exhaustive_small_lsq: only p <= 2 is supported");
  }
  if (grid_steps < 2 || !(grid_radius > 0.0)) {
    throw InvalidInputError("exhaustive_small_lsq: bad grid");
  }
  const double step =
      2.0 * grid_radius / static_cast<double>(grid_steps - 1);
  auto coord = [&](Index i) { return -grid_radius + step * double(i); };

  if (p == 1) {
    // 1-D quadratic coefficients of ||l - k1 c||^2 + ||e1 c||^2.
    const double a = k.col(0).squaredNorm() +
                     (e.size() > 0 ? e.col(0).squaredNorm() : 0.0);
    const double b = (k.col(0).adjoint() * l)(0).real();
    double best = std::numeric_limits<double>::infinity();
    double best_c = 0.0;
    for (Index i = 0; i < grid_steps; ++i) {
      const double c = coord(i);
      const double value = a * c * c - 2.0 * b * c;
      if (value < best) {
        best = value;
        best_c = c;
      }
    }
    Vec out(1);
    out(0) = best_c;
    return out;
  }

  double best = std::numeric_limits<double>::infinity();
  double best_c1 = 0.0, best_c2 = 0.0;
  for (Index i2 = 0; i2 < grid_steps; ++i2) {
    const double c2 = coord(i2);
    // Reduce the inner scan to a 1-D quadratic in c1 around fixed c2.
    const Mat u = l - k.col(1) * c2;
    double a = k.col(0).squaredNorm();
    double b = (k.col(0).adjoint() * u)(0).real();
    double offset = u.squaredNorm();
    if (e.size() > 0) {
      const Vec eu = e.col(1) * c2;
      a += e.col(0).squaredNorm();
      b -= (e.col(0).adjoint() * eu)(0).real();
      offset += eu.squaredNorm();
    }
    for (Index i1 = 0; i1 < grid_steps; ++i1) {
      const double c1 = coord(i1);
      const double value = a * c1 * c1 - 2.0 * b * c1 + offset;
      if (value < best) {
        best = value;
        best_c1 = c1;
        best_c2 = c2;
      }
    }
  }
  Vec out(2);
  out(0) = best_c1;
  out(1) = best_c2;
  return out;
}

}  // namespace dbvp
