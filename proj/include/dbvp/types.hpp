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
#ifndef DBVP_TYPES_HPP
#define DBVP_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace dbvp {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;
using Index = Eigen::Index;

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Input data fails validation (dimensions, NaN/Inf, malformed fields).
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

/// Problem file text cannot be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// det(sF - G) vanishes identically; no canonical form exists.
class SingularPencilError : public Error {
 public:
  using Error::Error;
};

/// A Jordan chain cannot be completed within the conditioning budget.
class DefectiveError : public Error {
 public:
  using Error::Error;
};

/// A solver was invoked outside its stated preconditions.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Cholesky factorization hit a non-positive pivot.
class NotPositiveDefiniteError : public Error {
 public:
  using Error::Error;
};

/// The pencil has no finite spectrum (p = 0); only the zero trajectory exists.
class NoFiniteDynamicsError : public Error {
 public:
  using Error::Error;
};

/// SVD iteration failed to converge; message carries the partial state.
class SvdConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Throws InvalidInputError if any entry of `a` is NaN or infinite.
void ensure_finite(const Mat& a, const std::string& name);

}  // namespace dbvp

#endif  // DBVP_TYPES_HPP
