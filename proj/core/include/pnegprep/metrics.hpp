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

#include <span>
#include <vector>

#include "pnegprep/equations.hpp"

namespace pnegprep {

/// Prepared probabilities at or below this are treated as zero support.
inline constexpr double kSupportEpsilon = 1e-12;

struct ComparisonReport {
  std::vector<double> prepared_probs;
  std::vector<double> acquired_probs;
  double relative_error = 0.0;
  double fidelity = 0.0;
  double max_abs_amp_diff = 0.0;
  /// Largest acquired probability on indices where the prepared one is zero.
  double zero_support_leakage = 0.0;
};

/// Elementwise squared modulus.
std::vector<double> probabilities(std::span<const Complex> amps);

/**
 * Mean of |prepared_i - acquired_i| / prepared_i over the indices with
 * prepared_i > kSupportEpsilon. Zero-support indices are left out; see
 * ComparisonReport::zero_support_leakage.
 *
 * @throws std::invalid_argument on length mismatch or if no index is
 * supported
 */
double relative_error(std::span<const double> prepared,
                      std::span<const double> acquired);

/// |<a, b>|^2 / (||a||^2 ||b||^2)
/// @throws std::invalid_argument on length mismatch or a zero-norm input
double fidelity(std::span<const Complex> a, std::span<const Complex> b);

/// Fidelity is reported as 0 when the acquired amplitudes vanish.
/// @throws std::invalid_argument if the qubit counts differ
ComparisonReport compare(const TargetState &prepared,
                         const DataAmplitudes &acquired);

}  // namespace pnegprep
