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
#ifndef DBVP_PROBLEM_IO_HPP
#define DBVP_PROBLEM_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "dbvp/bvp.hpp"
#include "dbvp/pencil.hpp"
#include "dbvp/types.hpp"

namespace dbvp {

/// Options block of a problem file. `wcf` is an externally supplied
/// canonical form that bypasses the decomposition (it may carry only the
/// finite-block data Qp, Jp; residual certificates then become unavailable).
struct ProblemOptions {
  double theta = 1e-5;
  std::optional<double> tol;
  std::uint64_t seed = 0;
  std::string strategy = "auto";
  std::optional<Mat> E;
  std::optional<WeierstrassForm> wcf;
};

/// A parsed problem file: the pencil, boundary data, horizon and options.
struct ProblemFile {
  Mat F, G, A1, B1, A2, B2;
  int N = 1;
  ProblemOptions options;

  BoundaryValueProblem to_bvp() const;
};

/// Caller-side overrides (CLI flags). Unset fields fall back to the file's
/// options; an unset tolerance falls back to DESCRIPTOR_BVP_TOL, then to
/// the automatic default.
struct OptionOverrides {
  std::optional<double> theta;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> strategy;
};

SolveOptions resolve_options(const ProblemFile& file,
                             const OptionOverrides& overrides);

/// Parses problem JSON. Throws ParseError with a field/offset diagnostic.
ProblemFile parse_problem(const std::string& json_text);

/// Canonical serialization; parse(serialize(p)) reproduces every field.
std::string serialize_problem(const ProblemFile& file);

/// `analyze` report: regularity verdict with witness and, when regular,
/// the canonical-form summary plus residual certificates.
std::string analysis_report_json(const ProblemFile& file,
                                 const OptionOverrides& overrides,
                                 bool& regular_out);

/// `solve` report plus the solution bundle; `consistent_out` reports
/// whether the problem admitted a solution (exit 0) or was solved as an
/// optimal surrogate (exit 4).
std::string solve_report_json(const ProblemFile& file,
                              const OptionOverrides& overrides,
                              bool& consistent_out,
                              std::vector<Vec>* trajectory_out = nullptr);

/// Trajectory CSV: header k, y0_re, y0_im, ... then one row per step.
std::string trajectory_csv(const std::vector<Vec>& traj);

struct Certificate {
  std::string name;
  double residual = 0.0;
  double bound = 0.0;
  bool pass = true;
  bool skipped = false;
};

struct VerificationReport {
  std::vector<Certificate> certificates;
  bool all_pass = true;
};

/// `verify`: runs stationarity, optimality-sampling, dynamics-residual and
/// (for real problems with p <= 2) exhaustive-grid certificates against the
/// solved problem. `corruption` shifts the computed solution before
/// checking, for fault-injection tests.
VerificationReport run_certificates(const ProblemFile& file,
                                    const OptionOverrides& overrides,
                                    double corruption = 0.0);

std::string verification_report_json(const VerificationReport& report);

}  // namespace dbvp

#endif  // DBVP_PROBLEM_IO_HPP
