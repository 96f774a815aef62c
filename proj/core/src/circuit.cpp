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

#include "pnegprep/circuit.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace pnegprep {

CircuitLayout::CircuitLayout(std::vector<SymmetricGate> data_gates,
                             std::vector<SymmetricGate> ancilla_gates)
    : data_gates_(std::move(data_gates)),
      ancilla_gates_(std::move(ancilla_gates)) {
  if (data_gates_.size() != ancilla_gates_.size()) {
    throw std::invalid_argument(
        "layout needs as many ancilla gates as data gates");
  }
  if (data_gates_.empty() ||
      data_gates_.size() > static_cast<std::size_t>(kMaxDataQubits)) {
    throw std::invalid_argument("layout data-qubit count must be in 1.." +
                                std::to_string(kMaxDataQubits));
  }
}

CircuitLayout CircuitLayout::uniform(int n, const SymmetricGate &g) {
  if (n < 1) throw std::invalid_argument("layout needs n >= 1");
  return CircuitLayout(std::vector<SymmetricGate>(n, g),
                       std::vector<SymmetricGate>(n, g));
}

const SymmetricGate &CircuitLayout::gate(int t) const {
  if (t < 0 || t >= 2 * n()) throw std::out_of_range("gate index");
  return t < n() ? data_gates_[t] : ancilla_gates_[t - n()];
}

double CircuitLayout::max_unitarity_residual() const {
  double worst = 0.0;
  for (int t = 0; t < 2 * n(); ++t) {
    worst = std::max(worst, unitarity_residuals(gate(t)).max_abs());
  }
  return worst;
}

double StateVector::squared_norm() const {
  double s = 0.0;
  for (const auto &z : amplitudes) s += std::norm(z);
  return s;
}

namespace {

// Bit position (from the least significant end) of data qubit i in the full
// register index. The ancilla sits at position 0.
int register_bit(int i, int n) { return n - i; }

void apply_single(std::vector<Complex> &amps, int bit, const SymmetricGate &g) {
  const std::size_t mask = std::size_t{1} << bit;
  for (std::size_t k = 0; k < amps.size(); ++k) {
    if (k & mask) continue;
    auto [lo, hi] = g.apply(amps[k], amps[k | mask]);
    amps[k] = lo;
    amps[k | mask] = hi;
  }
}

void apply_controlled(std::vector<Complex> &amps, int control_bit,
                      int target_bit, const SymmetricGate &g) {
  const std::size_t cmask = std::size_t{1} << control_bit;
  const std::size_t tmask = std::size_t{1} << target_bit;
  for (std::size_t k = 0; k < amps.size(); ++k) {
    if ((k & tmask) || !(k & cmask)) continue;
    auto [lo, hi] = g.apply(amps[k], amps[k | tmask]);
    amps[k] = lo;
    amps[k | tmask] = hi;
  }
}

}  // namespace

StateVector simulate_full(const CircuitLayout &layout,
                          const SimulateOptions &options) {
  const int n = layout.n();
  if (!options.permissive) {
    for (int t = 0; t < 2 * n; ++t) {
      if (!unitarity_residuals(layout.gate(t)).passes(kSolverUnitarityTol)) {
        throw std::invalid_argument("gate " + std::to_string(t) +
                                    " is not unitary");
      }
    }
  }

  StateVector sv;
  sv.qubits = n + 1;
  sv.amplitudes.assign(std::size_t{1} << (n + 1), Complex{0.0, 0.0});
  sv.amplitudes[0] = 1.0;

  for (int i = 0; i < n; ++i) {
    apply_single(sv.amplitudes, register_bit(i, n), layout.data_gates()[i]);
    if (options.trace) {
      options.trace({GateInstruction::Kind::Single, i, i, -1});
    }
  }
  for (int i = 0; i < n; ++i) {
    apply_controlled(sv.amplitudes, register_bit(i, n), 0,
                     layout.ancilla_gates()[i]);
    if (options.trace) {
      options.trace({GateInstruction::Kind::Controlled, n + i, n, i});
    }
  }
  return sv;
}

DataAmplitudes summed_ancilla_amplitudes(const StateVector &sv) {
  if (sv.qubits < 2 ||
      sv.amplitudes.size() != (std::size_t{1} << sv.qubits)) {
    throw std::invalid_argument(
        "statevector needs at least one data qubit and an ancilla");
  }
  DataAmplitudes out;
  out.n = sv.qubits - 1;
  out.values.resize(sv.amplitudes.size() / 2);
  for (std::size_t x = 0; x < out.values.size(); ++x) {
    out.values[x] = sv.amplitudes[2 * x] + sv.amplitudes[2 * x + 1];
  }
  return out;
}

DataAmplitudes closed_form_amplitudes(const CircuitLayout &layout) {
  const int n = layout.n();
  std::vector<Complex> sums(n);
  for (int i = 0; i < n; ++i) sums[i] = column_sum(layout.ancilla_gates()[i]);

  DataAmplitudes out;
  out.n = n;
  out.values.resize(std::size_t{1} << n);
  for (std::size_t x = 0; x < out.values.size(); ++x) {
    Complex v{1.0, 0.0};
    for (int i = 0; i < n; ++i) {
      const auto &g = layout.data_gates()[i];
      v *= data_bit(x, i, n) ? g.b() * sums[i] : g.a();
    }
    out.values[x] = v;
  }
  return out;
}

std::vector<double> marginal_probabilities(const StateVector &sv) {
  std::vector<double> p(sv.amplitudes.size() / 2);
  for (std::size_t x = 0; x < p.size(); ++x) {
    p[x] = std::norm(sv.amplitudes[2 * x]) + std::norm(sv.amplitudes[2 * x + 1]);
  }
  return p;
}

}  // namespace pnegprep
