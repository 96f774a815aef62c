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

#include <complex>
#include <utility>

namespace pnegprep {

using Complex = std::complex<double>;

/// Default tolerance for gates coming out of the solver.
inline constexpr double kSolverUnitarityTol = 1e-8;
/// Tolerance for checking gate entries that were printed to four decimals.
inline constexpr double kPrintedUnitarityTol = 2e-3;

/**
 * A 2x2 gate of the form [[a, b], [b, a]].
 *
 * Every partial negation K = X^(1/r) has this shape, and so does every gate
 * the solver produces. Symmetry is structural: only the two distinct entries
 * are stored. Entries are always finite.
 */
class SymmetricGate {
 public:
  constexpr SymmetricGate() = default;

  /// Diagonal entry.
  const Complex &a() const { return a_; }
  /// Off-diagonal entry.
  const Complex &b() const { return b_; }

  /// Matrix-vector product with (v0, v1).
  std::pair<Complex, Complex> apply(const Complex &v0, const Complex &v1) const {
    return {a_ * v0 + b_ * v1, b_ * v0 + a_ * v1};
  }

  /// Product of two symmetric gates, which is again symmetric.
  SymmetricGate operator*(const SymmetricGate &rhs) const;

  friend bool operator==(const SymmetricGate &, const SymmetricGate &) = default;

 private:
  friend SymmetricGate gate_from_entries(const Complex &a, const Complex &b);
  SymmetricGate(const Complex &a, const Complex &b) : a_(a), b_(b) {}

  Complex a_{1.0, 0.0};
  Complex b_{0.0, 0.0};
};

/// Angle form: a = e^{i gamma} cos(theta), b = i e^{i gamma} sin(theta).
struct GateAngles {
  double gamma = 0.0;
  double theta = 0.0;

  friend bool operator==(const GateAngles &, const GateAngles &) = default;
};

struct UnitarityResiduals {
  double d_norm = 0.0;  ///< |a|^2 + |b|^2 - 1
  double d_orth = 0.0;  ///< a conj(b) + b conj(a)

  double max_abs() const;
  bool passes(double tol) const { return max_abs() <= tol; }
};

struct BranchProbabilities {
  double p0 = 0.0;
  double p1 = 0.0;
};

/**
 * The partial negation K = X^(1/r) using the principal root s = exp(i pi / r)
 * of -1, so a = (1 + s) / 2 and b = (1 - s) / 2. Any real r >= 1 is accepted;
 * r = 1 gives X exactly.
 *
 * @throws std::domain_error if r < 1 or r is not finite
 */
SymmetricGate gate_from_root(double r);

/// @throws std::invalid_argument on non-finite angles
SymmetricGate gate_from_angles(const GateAngles &angles);

/// Stores the entries verbatim; no unitarity claim is made.
/// @throws std::invalid_argument on non-finite entries
SymmetricGate gate_from_entries(const Complex &a, const Complex &b);

/**
 * Recover angles for a unitary gate. gamma is chosen so that a e^{-i gamma}
 * is real and nonnegative, which puts theta in [-pi/2, pi/2]; when a = 0,
 * theta = -pi/2 and gamma comes from b. gamma is wrapped to (-pi, pi].
 * The result is meaningful only for gates that pass unitarity.
 */
GateAngles angles_from_gate(const SymmetricGate &g);

UnitarityResiduals unitarity_residuals(const SymmetricGate &g);

/// Probabilities of the ancilla ending in |0> or |1> after one gate.
/// @throws std::invalid_argument if g fails unitarity at kSolverUnitarityTol
BranchProbabilities branch_probabilities(const SymmetricGate &g);

/// a + b: the factor one triggered controlled gate contributes to the
/// ancilla-summed amplitude.
inline Complex column_sum(const SymmetricGate &g) { return g.a() + g.b(); }

/// Wrap an angle to (-pi, pi].
double wrap_angle(double x);

inline const SymmetricGate kIdentityGate{};

}  // namespace pnegprep
