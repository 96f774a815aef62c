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

#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pnegprep/circuit.hpp"
#include "pnegprep/distributions.hpp"
#include "pnegprep/solver.hpp"

namespace pnegprep {

/// Malformed or schema-violating input. line/column are 1-based and 0 when
/// the problem is not tied to a text position.
class FormatError : public std::invalid_argument {
 public:
  FormatError(const std::string &what, std::size_t line = 0,
              std::size_t column = 0);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Fixed 17-significant-digit rendering used by every writer.
std::string format_double(double value);

// JSON documents. Complex numbers are written as [re, im]. Every writer is
// deterministic and every reader accepts what the matching writer produces.

std::string gate_to_json(const SymmetricGate &g);
SymmetricGate gate_from_json(std::string_view text);
std::string angles_to_json(const GateAngles &angles);
GateAngles angles_from_json(std::string_view text);

std::string layout_to_json(const CircuitLayout &layout);
CircuitLayout layout_from_json(std::string_view text);

/// A list of gates, either a layout document or {"gates": [...]}.
std::vector<SymmetricGate> gates_from_json(std::string_view text);

std::string target_to_json(const TargetState &target);
TargetState target_from_json(std::string_view text);

std::string distribution_to_json(const DistributionSpec &spec);
DistributionSpec distribution_from_json(std::string_view text);

std::string parametrization_name(const Parametrization &p);
/// "angles" or "entries".
Parametrization::Kind parse_parametrization_kind(std::string_view name);

std::string options_to_json(const SolverOptions &options);
/// Missing keys keep their defaults.
SolverOptions options_from_json(std::string_view text);

std::string report_to_json(const PreparationReport &report);
PreparationReport report_from_json(std::string_view text);

std::string amplitudes_to_json(std::span<const Complex> amps);
std::vector<Complex> amplitudes_from_json(std::string_view text);
/// Header "index,re,im".
std::string amplitudes_to_csv(std::span<const Complex> amps);
/// Header "index,prepared,acquired".
std::string comparison_to_csv(const ComparisonReport &report);

enum class JobOutput { ReportJson, GatesJson, PlotCsv, Qasm };

std::string_view job_output_name(JobOutput out);

struct JobSpec {
  std::variant<TargetState, DistributionSpec> target;
  Parametrization parametrization;
  SolverOptions options;
  std::set<JobOutput> outputs{JobOutput::ReportJson};

  TargetState resolve_target() const;
};

std::string job_to_json(const JobSpec &job);
/// Requires exactly one of "target" or "distribution" and a nonempty
/// "outputs" list when present.
JobSpec job_from_json(std::string_view text);

/**
 * OpenQASM 2.0 listing of a unitary layout. Each gate K = e^{i gamma}
 * Rx(-2 theta) becomes one instruction (rx, or x when K is exactly X) on its
 * data qubit, and each ancilla gate one controlled instruction (crx or cx)
 * from its control onto anc[0]. The global phases are carried by pragma
 * comments ahead of each instruction.
 *
 * @throws std::invalid_argument if a gate fails unitarity at
 * kSolverUnitarityTol
 */
std::string export_qasm(const CircuitLayout &layout);

struct QasmStructure {
  int data_qubits = 0;
  int ancilla_qubits = 0;
  int single_qubit_gates = 0;
  int controlled_gates = 0;
};

/// Counts declarations and gate instructions in a listing from export_qasm.
QasmStructure analyze_qasm(std::string_view text);

}  // namespace pnegprep
