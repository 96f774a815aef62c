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

#include "pnegprep/gates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pnegprep {

namespace {

bool is_finite(const Complex &z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace

SymmetricGate SymmetricGate::operator*(const SymmetricGate &rhs) const {
  return SymmetricGate(a_ * rhs.a_ + b_ * rhs.b_, a_ * rhs.b_ + b_ * rhs.a_);
}

double UnitarityResiduals::max_abs() const {
  return std::max(std::abs(d_norm), std::abs(d_orth));
}

double wrap_angle(double x) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double y = std::fmod(x, two_pi);
  if (y <= -std::numbers::pi) y += two_pi;
  if (y > std::numbers::pi) y -= two_pi;
  return y;
}

SymmetricGate gate_from_entries(const Complex &a, const Complex &b) {
  if (!is_finite(a) || !is_finite(b)) {
    throw std::invalid_argument("gate entries must be finite");
  }
  return SymmetricGate(a, b);
}

SymmetricGate gate_from_root(double r) {
  if (!std::isfinite(r) || r < 1.0) {
    throw std::domain_error(
        "root degree must be finite and >= 1, got " + std::to_string(r));
  }
  if (r == 1.0) {
    // s = -1 exactly; avoids sin(pi) round-off in the entries of X.
    return gate_from_entries({0.0, 0.0}, {1.0, 0.0});
  }
  const Complex s = std::polar(1.0, std::numbers::pi / r);
  return gate_from_entries((1.0 + s) / 2.0, (1.0 - s) / 2.0);
}

SymmetricGate gate_from_angles(const GateAngles &angles) {
  if (!std::isfinite(angles.gamma) || !std::isfinite(angles.theta)) {
    throw std::invalid_argument("gate angles must be finite");
  }
  const Complex phase = std::polar(1.0, angles.gamma);
  return gate_from_entries(phase * std::cos(angles.theta),
                           Complex{0.0, 1.0} * phase * std::sin(angles.theta));
}

GateAngles angles_from_gate(const SymmetricGate &g) {
  const double abs_a = std::abs(g.a());
  if (abs_a == 0.0) {
    // b = -i e^{i gamma} with theta = -pi/2.
    return {wrap_angle(std::arg(g.b()) + std::numbers::pi / 2.0),
            -std::numbers::pi / 2.0};
  }
  const double gamma = std::arg(g.a());
  const Complex rotated = g.b() * std::polar(1.0, -gamma);
  // rotated = i sin(theta) for a unitary gate.
  const double sin_theta = rotated.imag();
  return {wrap_angle(gamma), std::atan2(sin_theta, abs_a)};
}

UnitarityResiduals unitarity_residuals(const SymmetricGate &g) {
  const Complex cross = g.a() * std::conj(g.b());
  return {std::norm(g.a()) + std::norm(g.b()) - 1.0, 2.0 * cross.real()};
}

BranchProbabilities branch_probabilities(const SymmetricGate &g) {
  if (!unitarity_residuals(g).passes(kSolverUnitarityTol)) {
    throw std::invalid_argument("branch probabilities need a unitary gate");
  }
  return {std::norm(g.a()), std::norm(g.b())};
}

}  // namespace pnegprep
