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

#include <cstddef>
#include <functional>
#include <vector>

#include "pnegprep/gates.hpp"

namespace pnegprep {

inline constexpr int kMaxDataQubits = 12;

/**
 * The fixed preparation circuit on n data qubits plus one ancilla: data gate
 * K_i on qubit i, then for each i the ancilla gate K_{n+i} applied to the
 * ancilla controlled on data qubit i.
 */
class CircuitLayout {
 public:
  /// @throws std::invalid_argument unless both sequences have the same
  /// length n with 1 <= n <= kMaxDataQubits
  CircuitLayout(std::vector<SymmetricGate> data_gates,
                std::vector<SymmetricGate> ancilla_gates);

  /// Layout with every gate set to `g`.
  static CircuitLayout uniform(int n, const SymmetricGate &g);

  int n() const { return static_cast<int>(data_gates_.size()); }
  const std::vector<SymmetricGate> &data_gates() const { return data_gates_; }
  const std::vector<SymmetricGate> &ancilla_gates() const {
    return ancilla_gates_;
  }

  /// Gate t in 0..2n-1: data gates first, then ancilla gates.
  const SymmetricGate &gate(int t) const;

  /// Largest unitarity residual over all 2n gates.
  double max_unitarity_residual() const;

  friend bool operator==(const CircuitLayout &, const CircuitLayout &) = default;

 private:
  std::vector<SymmetricGate> data_gates_;
  std::vector<SymmetricGate> ancilla_gates_;
};

/**
 * Dense statevector. Basis index bits, most significant first, are data
 * qubits x_0 .. x_{n-1} followed by the ancilla as the least significant bit.
 */
struct StateVector {
  int qubits = 0;
  std::vector<Complex> amplitudes;

  double squared_norm() const;
};

/// Amplitudes indexed by the data bitstring x (x_0 most significant).
struct DataAmplitudes {
  int n = 0;
  std::vector<Complex> values;
};

struct GateInstruction {
  enum class Kind { Single, Controlled };
  Kind kind;
  int gate_index;  ///< 0..2n-1, same numbering as CircuitLayout::gate
  int target;      ///< qubit index, ancilla = n
  int control;     ///< -1 for single-qubit instructions
};

struct SimulateOptions {
  /// Skip the unitarity check on the layout (used while solving with raw
  /// entries, where intermediate gates are not unitary).
  bool permissive = false;
  /// Called once per applied instruction, in order.
  std::function<void(const GateInstruction &)> trace;
};

/// Full (n+1)-qubit simulation starting from |0...0>.
/// @throws std::invalid_argument if a gate fails unitarity at
/// kSolverUnitarityTol and options.permissive is false
StateVector simulate_full(const CircuitLayout &layout,
                          const SimulateOptions &options = {});

/// value_x = amp(x, ancilla=0) + amp(x, ancilla=1)
/// @throws std::invalid_argument if sv has fewer than two qubits
DataAmplitudes summed_ancilla_amplitudes(const StateVector &sv);

/**
 * Closed-form ancilla-summed amplitudes:
 *   a_x = prod_i (x_i ? b_i : a_i) * prod_{i : x_i = 1} (a_{n+i} + b_{n+i}).
 * No unitarity requirement.
 */
DataAmplitudes closed_form_amplitudes(const CircuitLayout &layout);

/// p_x = |amp(x,0)|^2 + |amp(x,1)|^2
std::vector<double> marginal_probabilities(const StateVector &sv);

/// Value of data bit i (x_0 most significant) in bitstring x.
inline int data_bit(std::size_t x, int i, int n) {
  return static_cast<int>((x >> (n - 1 - i)) & 1u);
}

}  // namespace pnegprep
