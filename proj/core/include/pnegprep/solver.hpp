// Copyright 2026 The pnegprep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pnegprep/equations.hpp"
#include "pnegprep/metrics.hpp"

namespace pnegprep {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolverOptions {
  int max_iterations = 500;
  /// Stop when an accepted step reduces the cost by less than this fraction.
  double cost_tol = 1e-16;
  /// Converged when ||J^T r||_inf <= grad_tol * max(1, ||r||).
  double grad_tol = 1e-12;
  /// Stop when an accepted step satisfies ||dp|| <= step_tol (||p|| + step_tol).
  double step_tol = 1e-14;
  double lambda_init = 1e-3;
  double lambda_up = 10.0;
  double lambda_down = 10.0;
  int multistart_count = 16;
  std::uint64_t rng_seed = 0;
  /// Use central differences instead of the analytic Jacobian.
  bool finite_difference_jacobian = false;

  /// @throws std::invalid_argument on non-positive tolerances, counts < 1 or
  /// lambda factors <= 1
  void validate() const;

  friend bool operator==(const SolverOptions &, const SolverOptions &) = default;
};

enum class SolveStatus { Converged, MaxIterations, Stalled };

const char *to_string(SolveStatus status);

struct LeastSquaresProblem {
  ResidualFunction residuals;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd &)> jacobian;
};

struct LmResult {
  ParameterVector params;
  double final_cost = 0.0;  ///< 0.5 ||r||^2
  int iterations = 0;
  SolveStatus status = SolveStatus::MaxIterations;
  /// Cost at the initial point and after every accepted step.
  std::vector<double> cost_trace;
};

/**
 * Levenberg-Marquardt with Marquardt scaling: solves
 *   (J^T J + lambda diag(J^T J)) dp = -J^T r
 * by Cholesky, accepting the step (lambda /= lambda_down) when the cost
 * decreases and rejecting it (lambda *= lambda_up) otherwise. One iteration is
 * one Jacobian evaluation followed by damping updates until a step is
 * accepted. The diagonal is floored at 1e-12.
 *
 * Converged is only reported when the gradient condition holds at the
 * returned point; a cost-reduction or step-size stop without it is Stalled,
 * as is damping running away.
 *
 * @throws SolverError if the residuals at init are not finite
 */
LmResult levenberg_marquardt(const LeastSquaresProblem &problem,
                             const ParameterVector &init,
                             const SolverOptions &options);

/// Per-start statistics kept by multistart_solve.
struct StartOutcome {
  bool failed = false;
  double final_cost = 0.0;
  int iterations = 0;
  SolveStatus status = SolveStatus::MaxIterations;
};

struct SolveResult {
  ParameterVector params;
  CircuitLayout layout;
  double final_cost = 0.0;
  int iterations = 0;
  SolveStatus status = SolveStatus::MaxIterations;
  std::vector<double> cost_trace;
  /// Which multistart start produced this result (0 for a single solve).
  int start_index = 0;
  std::vector<StartOutcome> starts;
};

/// @throws std::invalid_argument if init does not match the system
/// @throws SolverError if the residuals at init are not finite
SolveResult levenberg_marquardt(const ResidualSystem &system,
                                const ParameterVector &init,
                                const SolverOptions &options);

/**
 * Seeded starting points for multistart_solve. Start 0 sets every gate to
 * the square root of X; later starts draw angles uniformly from (-pi, pi] or,
 * for raw entries, take root gates of random degree r in [1, 8] plus N(0,
 * 0.05) noise on each real component.
 */
std::vector<ParameterVector> starting_points(int n,
                                             const Parametrization &parametrization,
                                             int count, std::uint64_t seed);

/**
 * Runs one solve per starting point and keeps the lowest final cost, ties
 * going to the lower start index. Deterministic given options.rng_seed.
 *
 * @throws SolverError only if every start fails
 */
SolveResult multistart_solve(const TargetState &target,
                             const Parametrization &parametrization,
                             const SolverOptions &options);

/// Gates whose unitarity residual exceeds this are flagged in a report.
inline constexpr double kReportUnitarityTol = 1e-6;

struct PreparationReport {
  TargetState target;
  Parametrization parametrization;
  SolveResult solve;
  DataAmplitudes acquired;
  std::vector<UnitarityResiduals> unitarity;
  /// Indices (0..2n-1) of gates failing unitarity at kReportUnitarityTol.
  std::vector<int> non_unitary_gates;
  ComparisonReport comparison;

  double max_unitarity_residual() const;
};

/// Solve, decode the gates, evaluate the acquired amplitudes, test each gate
/// for unitarity and compare prepared against acquired probabilities.
PreparationReport prepare_superposition(const TargetState &target,
                                        const Parametrization &parametrization,
                                        const SolverOptions &options);

}  // namespace pnegprep
