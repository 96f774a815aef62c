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
#include <optional>
#include <string>
#include <vector>

#include "pnegprep/distributions.hpp"
#include "pnegprep/solver.hpp"

namespace pnegprep {

/// Deterministic child seed for stream `stream` of `seed` (splitmix64).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

struct BatchConfig {
  int n = 3;
  int trials = 100;
  std::uint64_t seed = 0;
  Family family = Family::RandomComplex;
  Parametrization parametrization;
  SolverOptions options;
  /// Worker threads; results do not depend on it.
  int jobs = 1;
};

struct TrialRecord {
  int trial = 0;
  std::uint64_t target_seed = 0;
  std::uint64_t solver_seed = 0;
  bool failed = false;
  double relative_error = 0.0;
  double final_cost = 0.0;
  SolveStatus status = SolveStatus::Stalled;
  std::string error;
};

struct BatchSummary {
  int trial_count = 0;
  int failure_count = 0;
  /// Completed trials only, in trial order.
  std::vector<double> relative_errors;
  double mean = 0.0;
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::vector<TrialRecord> trials;
};

/**
 * Solves `trials` seeded targets of the configured family. Per-trial solver
 * failures are counted, not thrown. Target and solver seeds for trial k are
 * derive_seed(seed, 2k) and derive_seed(seed, 2k + 1).
 *
 * @throws std::invalid_argument if trials < 1 or jobs < 1
 */
BatchSummary run_batch(const BatchConfig &config);

/// Header "trial,target_seed,solver_seed,failed,relative_error,final_cost,status".
std::string batch_trials_to_csv(const BatchSummary &summary);
std::string batch_summary_to_json(const BatchSummary &summary,
                                  const BatchConfig &config);

/// One row of the 3-qubit comparison table.
struct Table1Row {
  std::string label;
  bool complex = false;
  TargetState target;
  /// Relative error the original experiments reported for this row.
  double reported_error = 0.0;
  /// Pass threshold on the achieved relative error, if the row has one.
  std::optional<double> threshold;
};

/// The 14 rows: seven distributions, each with complex and real amplitudes.
std::vector<Table1Row> table1_rows();

struct Table1Outcome {
  Table1Row row;
  std::optional<PreparationReport> report;
  std::string error;

  bool passed() const;
};

/// Row k is solved with options.rng_seed replaced by derive_seed(seed, k).
std::vector<Table1Outcome> run_table1(const Parametrization &parametrization,
                                      const SolverOptions &options);

/// Header "row,amplitudes,reported_error,achieved_error,threshold,passed".
std::string table1_to_csv(const std::vector<Table1Outcome> &outcomes);
std::string table1_to_json(const std::vector<Table1Outcome> &outcomes);

}  // namespace pnegprep
