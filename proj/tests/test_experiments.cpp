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

#include <algorithm>
#include <set>

#include "doctest.h"
#include "pnegprep/experiments.hpp"

using namespace pnegprep;

TEST_CASE("derived seeds are distinct and stable") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t k = 0; k < 1000; ++k) seen.insert(derive_seed(42, k));
  CHECK(seen.size() == 1000);
  CHECK(derive_seed(42, 3) == derive_seed(42, 3));
  CHECK(derive_seed(42, 3) != derive_seed(43, 3));
}

TEST_CASE("single-trial batch") {
  BatchConfig config;
  config.trials = 1;
  config.seed = 5;
  config.options.multistart_count = 4;
  const auto s = run_batch(config);
  REQUIRE(s.trials.size() == 1);
  REQUIRE(s.relative_errors.size() == 1);
  CHECK(s.trial_count == 1);
  CHECK(s.mean == s.relative_errors[0]);
  CHECK(s.median == s.mean);
  CHECK(s.min == s.mean);
  CHECK(s.max == s.mean);
  CHECK(s.trials[0].target_seed == derive_seed(5, 0));
  CHECK(s.trials[0].solver_seed == derive_seed(5, 1));
}

TEST_CASE("one-qubit batch fits exactly") {
  BatchConfig config;
  config.n = 1;
  config.trials = 10;
  config.seed = 11;
  const auto s = run_batch(config);
  CHECK(s.failure_count == 0);
  for (double e : s.relative_errors) CHECK(e <= 1e-8);
  CHECK(s.mean >= s.min);
  CHECK(s.mean <= s.max);
}

TEST_CASE("batch results do not depend on the worker count") {
  BatchConfig config;
  config.trials = 6;
  config.seed = 3;
  config.options.multistart_count = 3;
  const auto serial = run_batch(config);
  config.jobs = 3;
  const auto parallel = run_batch(config);
  CHECK(batch_trials_to_csv(serial) == batch_trials_to_csv(parallel));
  config.jobs = 1;
  CHECK(batch_summary_to_json(serial, config) == batch_summary_to_json(parallel, config));
  CHECK(batch_trials_to_csv(serial).rfind(
            "trial,target_seed,solver_seed,failed,relative_error,final_cost,status\n", 0) == 0);
}

TEST_CASE("batch rejects bad configuration") {
  BatchConfig config;
  config.trials = 0;
  CHECK_THROWS_AS(run_batch(config), std::invalid_argument);
  config.trials = 1;
  config.jobs = 0;
  CHECK_THROWS_AS(run_batch(config), std::invalid_argument);
}

TEST_CASE("comparison table rows") {
  const auto rows = table1_rows();
  REQUIRE(rows.size() == 14);
  int complex_rows = 0;
  for (const auto &row : rows) {
    CHECK(row.target.n() == 3);
    CHECK(row.reported_error > 0.0);
    if (row.complex) {
      ++complex_rows;
      REQUIRE(row.threshold.has_value());
    } else {
      CHECK_FALSE(row.threshold.has_value());
    }
  }
  CHECK(complex_rows == 7);
  const auto equal = std::find_if(rows.begin(), rows.end(),
                                  [](const Table1Row &r) { return r.label == "equal-complex"; });
  REQUIRE(equal != rows.end());
  CHECK(*equal->threshold == 1e-6);
}

TEST_CASE("comparison table writers") {
  SolverOptions o;
  o.multistart_count = 2;
  const auto outcomes = run_table1({}, o);
  REQUIRE(outcomes.size() == 14);
  for (const auto &out : outcomes) CHECK(out.report.has_value());
  const auto csv = table1_to_csv(outcomes);
  CHECK(csv.rfind("row,amplitudes,reported_error,achieved_error,threshold,passed\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 15);
  CHECK(table1_to_json(outcomes) == table1_to_json(run_table1({}, o)));
}
