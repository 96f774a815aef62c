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

#include "pnegprep/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>

namespace pnegprep {

namespace {

constexpr double kDiagonalFloor = 1e-12;
constexpr double kLambdaMax = 1e32;
constexpr double kLambdaMin = 1e-300;

double half_squared_norm(const Eigen::VectorXd &r) { return 0.5 * r.squaredNorm(); }

bool gradient_small(const Eigen::VectorXd &gradient, const Eigen::VectorXd &r,
                    double grad_tol) {
  return gradient.lpNorm<Eigen::Infinity>() <= grad_tol * std::max(1.0, r.norm());
}

}  // namespace

void SolverOptions::validate() const {
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (multistart_count < 1) {
    throw std::invalid_argument("multistart_count must be >= 1");
  }
  if (!(cost_tol > 0.0) || !(grad_tol > 0.0) || !(step_tol > 0.0) ||
      !(lambda_init > 0.0)) {
    throw std::invalid_argument("solver tolerances must be positive");
  }
  if (!(lambda_up > 1.0) || !(lambda_down > 1.0)) {
    throw std::invalid_argument("lambda factors must exceed 1");
  }
}

const char *to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged:
      return "converged";
    case SolveStatus::MaxIterations:
      return "max_iterations";
    case SolveStatus::Stalled:
      return "stalled";
  }
  return "unknown";
}

LmResult levenberg_marquardt(const LeastSquaresProblem &problem,
                             const ParameterVector &init,
                             const SolverOptions &options) {
  options.validate();

  LmResult result;
  result.params = init;
  Eigen::VectorXd r = problem.residuals(result.params);
  if (!r.allFinite()) throw SolverError("residuals at the initial point are not finite");
  double cost = half_squared_norm(r);
  result.cost_trace.push_back(cost);

  double lambda = options.lambda_init;
  const auto finish = [&](SolveStatus status) {
    result.final_cost = cost;
    result.status = status;
    return result;
  };

  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    const Eigen::MatrixXd jac = problem.jacobian(result.params);
    const Eigen::VectorXd gradient = jac.transpose() * r;
    if (cost == 0.0 || gradient_small(gradient, r, options.grad_tol)) {
      return finish(SolveStatus::Converged);
    }
    const Eigen::MatrixXd normal = jac.transpose() * jac;
    const Eigen::VectorXd scaling = normal.diagonal().cwiseMax(kDiagonalFloor);

    // Inner loop: raise the damping until a step lowers the cost.
    while (true) {
      Eigen::MatrixXd damped = normal;
      damped.diagonal() += lambda * scaling;
      Eigen::LLT<Eigen::MatrixXd> chol(damped);
      Eigen::VectorXd step;
      bool usable = chol.info() == Eigen::Success;
      if (usable) {
        step = chol.solve(-gradient);
        usable = step.allFinite();
      }
      if (usable) {
        const ParameterVector trial = result.params + step;
        const Eigen::VectorXd trial_r = problem.residuals(trial);
        const double trial_cost =
            trial_r.allFinite() ? half_squared_norm(trial_r) : INFINITY;
        if (trial_cost < cost) {
          const double reduction = (cost - trial_cost) / cost;
          const bool small_step =
              step.norm() <= options.step_tol * (result.params.norm() + options.step_tol);
          result.params = trial;
          r = trial_r;
          cost = trial_cost;
          result.cost_trace.push_back(cost);
          result.iterations = iter;
          lambda = std::max(lambda / options.lambda_down, kLambdaMin);
          if (reduction <= options.cost_tol || small_step) {
            const Eigen::VectorXd g = problem.jacobian(result.params).transpose() * r;
            return finish(cost == 0.0 || gradient_small(g, r, options.grad_tol)
                              ? SolveStatus::Converged
                              : SolveStatus::Stalled);
          }
          break;
        }
      }
      lambda *= options.lambda_up;
      if (lambda > kLambdaMax) {
        result.iterations = iter;
        return finish(SolveStatus::Stalled);
      }
    }
  }
  return finish(SolveStatus::MaxIterations);
}

SolveResult levenberg_marquardt(const ResidualSystem &system,
                                const ParameterVector &init,
                                const SolverOptions &options) {
  if (init.size() != system.parameter_count()) {
    throw std::invalid_argument("initial point does not match the system");
  }
  LeastSquaresProblem problem;
  problem.residuals = [&system](const Eigen::VectorXd &p) {
    return system.residuals(p);
  };
  if (options.finite_difference_jacobian) {
    problem.jacobian = [&system](const Eigen::VectorXd &p) {
      return system.jacobian_fd(p);
    };
  } else {
    problem.jacobian = [&system](const Eigen::VectorXd &p) {
      return system.jacobian_analytic(p);
    };
  }
  if (!init.allFinite()) throw SolverError("initial point is not finite");
  LmResult lm = levenberg_marquardt(problem, init, options);
  SolveResult out{lm.params,
                  decode(lm.params, system.parametrization(), system.n()),
                  lm.final_cost,
                  lm.iterations,
                  lm.status,
                  std::move(lm.cost_trace),
                  0,
                  {}};
  out.starts.push_back({false, out.final_cost, out.iterations, out.status});
  return out;
}

std::vector<ParameterVector> starting_points(int n,
                                             const Parametrization &parametrization,
                                             int count, std::uint64_t seed) {
  const auto root2 = CircuitLayout::uniform(n, gate_from_root(2.0));
  std::vector<ParameterVector> starts;
  starts.reserve(count);
  starts.push_back(encode(root2, parametrization));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> degree(1.0, 8.0);
  std::normal_distribution<double> noise(0.0, 0.05);
  const int gates = 2 * n;
  for (int k = 1; k < count; ++k) {
    if (parametrization.kind == Parametrization::Kind::Angles) {
      ParameterVector p(2 * gates);
      // pi - 2 pi u for u in [0, 1) covers (-pi, pi].
      for (auto &v : p) v = std::numbers::pi - 2.0 * std::numbers::pi * unit(rng);
      starts.push_back(std::move(p));
    } else {
      ParameterVector p(4 * gates);
      for (int t = 0; t < gates; ++t) {
        const auto g = gate_from_root(degree(rng));
        p[4 * t + 0] = g.a().real() + noise(rng);
        p[4 * t + 1] = g.a().imag() + noise(rng);
        p[4 * t + 2] = g.b().real() + noise(rng);
        p[4 * t + 3] = g.b().imag() + noise(rng);
      }
      starts.push_back(std::move(p));
    }
  }
  return starts;
}

SolveResult multistart_solve(const TargetState &target,
                             const Parametrization &parametrization,
                             const SolverOptions &options) {
  options.validate();
  const ResidualSystem system(target, parametrization);
  const auto starts = starting_points(target.n(), parametrization,
                                      options.multistart_count, options.rng_seed);

  std::vector<StartOutcome> outcomes;
  outcomes.reserve(starts.size());
  std::optional<SolveResult> best;
  std::string last_error;
  for (std::size_t k = 0; k < starts.size(); ++k) {
    try {
      SolveResult candidate = levenberg_marquardt(system, starts[k], options);
      outcomes.push_back({false, candidate.final_cost, candidate.iterations,
                          candidate.status});
      if (!best || candidate.final_cost < best->final_cost) {
        candidate.start_index = static_cast<int>(k);
        best = std::move(candidate);
      }
    } catch (const SolverError &e) {
      outcomes.push_back({true, 0.0, 0, SolveStatus::Stalled});
      last_error = e.what();
    }
  }
  if (!best) throw SolverError("every multistart start failed: " + last_error);
  best->starts = std::move(outcomes);
  return std::move(*best);
}

double PreparationReport::max_unitarity_residual() const {
  double worst = 0.0;
  for (const auto &u : unitarity) worst = std::max(worst, u.max_abs());
  return worst;
}

PreparationReport prepare_superposition(const TargetState &target,
                                        const Parametrization &parametrization,
                                        const SolverOptions &options) {
  SolveResult solve = multistart_solve(target, parametrization, options);
  DataAmplitudes acquired = closed_form_amplitudes(solve.layout);

  std::vector<UnitarityResiduals> unitarity;
  std::vector<int> flagged;
  for (int t = 0; t < 2 * target.n(); ++t) {
    unitarity.push_back(unitarity_residuals(solve.layout.gate(t)));
    if (!unitarity.back().passes(kReportUnitarityTol)) flagged.push_back(t);
  }
  ComparisonReport comparison = compare(target, acquired);
  return PreparationReport{target,
                           parametrization,
                           std::move(solve),
                           std::move(acquired),
                           std::move(unitarity),
                           std::move(flagged),
                           std::move(comparison)};
}

}  // namespace pnegprep
