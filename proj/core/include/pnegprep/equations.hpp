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

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "pnegprep/circuit.hpp"

namespace pnegprep {

using ParameterVector = Eigen::VectorXd;

/// Prepared amplitudes a_x for x in 0..2^n-1.
class TargetState {
 public:
  /**
   * @param normalize rescale to unit norm before use
   * @throws std::invalid_argument if the length is not 2^n, an amplitude is
   * not finite, or the squared norm (after optional normalization) is not in
   * (0, 1 + 1e-6]
   */
  TargetState(int n, std::vector<Complex> amplitudes, bool normalize = false);

  int n() const { return n_; }
  const std::vector<Complex> &amplitudes() const { return amplitudes_; }
  std::size_t size() const { return amplitudes_.size(); }
  double squared_norm() const;
  /// Whether the input was rescaled at construction.
  bool normalized() const { return normalized_; }

  /// Compares qubit count and amplitudes only.
  friend bool operator==(const TargetState &l, const TargetState &r) {
    return l.n_ == r.n_ && l.amplitudes_ == r.amplitudes_;
  }

 private:
  int n_;
  std::vector<Complex> amplitudes_;
  bool normalized_;
};

struct Parametrization {
  enum class Kind {
    /// (gamma, theta) per gate: 4n parameters, always unitary.
    Angles,
    /// (Re a, Im a, Re b, Im b) per gate: 8n parameters.
    RawEntries,
  };
  Kind kind = Kind::Angles;
  /// Weight of the appended unitarity residuals (RawEntries only).
  double unitarity_weight = 1.0;

  int parameters_per_gate() const { return kind == Kind::Angles ? 2 : 4; }
  bool has_unitarity_rows() const {
    return kind == Kind::RawEntries && unitarity_weight > 0.0;
  }

  friend bool operator==(const Parametrization &,
                         const Parametrization &) = default;
};

/// @throws std::invalid_argument if params.size() != 2n * parameters_per_gate
CircuitLayout decode(const ParameterVector &params,
                     const Parametrization &parametrization, int n);

/// Inverse of decode. Angles need unitary gates (angles_from_gate).
/// @throws std::invalid_argument for Angles if a gate fails unitarity at
/// kSolverUnitarityTol
ParameterVector encode(const CircuitLayout &layout,
                       const Parametrization &parametrization);

using ResidualFunction =
    std::function<Eigen::VectorXd(const Eigen::VectorXd &)>;

/// Central differences, one column per parameter.
/// @throws std::invalid_argument if step <= 0 or an evaluation is not finite
Eigen::MatrixXd central_difference_jacobian(const ResidualFunction &f,
                                            const Eigen::VectorXd &x,
                                            double step = 1e-6);

/**
 * Real least-squares system for a target: for each data bitstring x the two
 * rows Re(model_x - target_x), Im(model_x - target_x), with model taken from
 * closed_form_amplitudes(decode(params)). RawEntries with positive weight w
 * appends w * d_norm and w * d_orth for each of the 2n gates.
 */
class ResidualSystem {
 public:
  ResidualSystem(TargetState target, Parametrization parametrization);

  const TargetState &target() const { return target_; }
  const Parametrization &parametrization() const { return parametrization_; }
  int n() const { return target_.n(); }
  int residual_count() const;
  int parameter_count() const;

  /// @throws std::invalid_argument on length mismatch or non-finite params
  Eigen::VectorXd residuals(const ParameterVector &params) const;
  Eigen::MatrixXd jacobian_analytic(const ParameterVector &params) const;
  Eigen::MatrixXd jacobian_fd(const ParameterVector &params,
                              double step = 1e-6) const;

 private:
  void check_params(const ParameterVector &params) const;

  TargetState target_;
  Parametrization parametrization_;
};

}  // namespace pnegprep
