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

#include "pnegprep/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>

#include "json.hpp"
#include "pnegprep/io.hpp"

namespace pnegprep {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

TrialRecord run_trial(const BatchConfig &config, int trial) {
  TrialRecord rec;
  rec.trial = trial;
  rec.target_seed = derive_seed(config.seed, 2 * static_cast<std::uint64_t>(trial));
  rec.solver_seed = derive_seed(config.seed, 2 * static_cast<std::uint64_t>(trial) + 1);
  try {
    const TargetState target = generate({config.family, config.n, rec.target_seed});
    SolverOptions options = config.options;
    options.rng_seed = rec.solver_seed;
    const auto report = prepare_superposition(target, config.parametrization, options);
    rec.relative_error = report.comparison.relative_error;
    rec.final_cost = report.solve.final_cost;
    rec.status = report.solve.status;
  } catch (const SolverError &e) {
    rec.failed = true;
    rec.error = e.what();
  }
  return rec;
}

}  // namespace

BatchSummary run_batch(const BatchConfig &config) {
  if (config.trials < 1) throw std::invalid_argument("batch needs trials >= 1");
  if (config.jobs < 1) throw std::invalid_argument("batch needs jobs >= 1");
  config.options.validate();

  std::vector<TrialRecord> records(static_cast<std::size_t>(config.trials));
  std::atomic<int> next{0};
  const auto worker = [&] {
    for (int k = next++; k < config.trials; k = next++) records[k] = run_trial(config, k);
  };
  const int workers = std::min(config.jobs, config.trials);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  BatchSummary summary;
  summary.trial_count = config.trials;
  for (const auto &rec : records) {
    if (rec.failed) {
      ++summary.failure_count;
    } else {
      summary.relative_errors.push_back(rec.relative_error);
    }
  }
  summary.trials = std::move(records);
  auto &errs = summary.relative_errors;
  if (!errs.empty()) {
    summary.mean = std::accumulate(errs.begin(), errs.end(), 0.0) / errs.size();
    std::vector<double> sorted = errs;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    summary.median = sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
    summary.min = sorted.front();
    summary.max = sorted.back();
  }
  return summary;
}

std::string batch_trials_to_csv(const BatchSummary &summary) {
  std::string out = "trial,target_seed,solver_seed,failed,relative_error,final_cost,status\n";
  for (const auto &rec : summary.trials) {
    out += std::to_string(rec.trial) + "," + std::to_string(rec.target_seed) + "," +
           std::to_string(rec.solver_seed) + "," + (rec.failed ? "1" : "0") + "," +
           format_double(rec.relative_error) + "," + format_double(rec.final_cost) + "," +
           to_string(rec.status) + "\n";
  }
  return out;
}

namespace {

// Writer for flat objects whose values are scalars or arrays of floats;
// floats go through format_double like every other writer.
std::string wrap_json(const nlohmann::ordered_json &j) {
  std::string out = "{\n";
  bool first = true;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!first) out += ",\n";
    first = false;
    out += "  " + nlohmann::ordered_json(it.key()).dump() + ": ";
    const auto &v = it.value();
    if (v.is_number_float()) {
      out += format_double(v.get<double>());
    } else if (v.is_array() && std::all_of(v.begin(), v.end(),
                                           [](const auto &e) { return e.is_number_float(); })) {
      out += "[";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += format_double(v[i].get<double>());
      }
      out += "]";
    } else {
      out += v.dump();
    }
  }
  out += "\n}\n";
  return out;
}

}  // namespace

std::string batch_summary_to_json(const BatchSummary &summary,
                                  const BatchConfig &config) {
  nlohmann::ordered_json j;
  j["n"] = config.n;
  j["family"] = family_name(config.family);
  j["seed"] = config.seed;
  j["parametrization"] = parametrization_name(config.parametrization);
  j["multistart_count"] = config.options.multistart_count;
  j["trial_count"] = summary.trial_count;
  j["failure_count"] = summary.failure_count;
  j["mean"] = summary.mean;
  j["median"] = summary.median;
  j["min"] = summary.min;
  j["max"] = summary.max;
  j["relative_errors"] = nlohmann::ordered_json::array();
  for (double e : summary.relative_errors) j["relative_errors"].push_back(e);
  return wrap_json(j);
}

std::vector<Table1Row> table1_rows() {
  using C = Complex;
  const double h = 0.5;
  const TargetState decreasing_complex(
      3, {C{-0.1500, 0.5100}, C{0.4400, 0.1200}, C{0.3680, 0.1110}, C{0.0900, -0.3200},
          C{0.2920, 0.0920}, C{0.0760, -0.2500}, C{0.0610, -0.2130}, C{-0.1830, -0.0510}});
  std::vector<C> increasing = decreasing_complex.amplitudes();
  std::reverse(increasing.begin(), increasing.end());

  // The printed random rows are rounded to four decimals and their squared
  // norms exceed 1, so they are normalized.
  const TargetState random_complex(
      3,
      {C{0.0220, 0.6000}, C{0.3440, -0.0130}, C{0.6000, -0.0200}, C{-0.0200, -0.3450},
       C{0.1320, -0.0050}, C{-0.0030, -0.0790}, C{-0.0060, -0.1370}, C{-0.0790, 0.0030}},
      true);
  const TargetState random_real(
      3, {C{0.6004}, C{0.3442}, C{0.6003}, C{0.3456}, C{0.1321}, C{0.0791}, C{0.1371}, C{0.0791}},
      true);

  const auto family = [](Family f) { return generate({f, 3, 0}); };
  const auto imaginary_on = [h](std::initializer_list<std::pair<int, double>> entries) {
    std::vector<C> amps(8, C{0.0, 0.0});
    for (auto [index, sign] : entries) amps[index] = C{0.0, sign * h};
    return TargetState(3, std::move(amps));
  };

  std::vector<Table1Row> rows;
  rows.push_back({"equal-complex", true, family(Family::EqualComplex), 6.9593e-11, 1e-6});
  rows.push_back({"equal-real", false, family(Family::EqualReal), 0.0093, std::nullopt});
  rows.push_back({"prime-complex", true, imaginary_on({{2, 1}, {3, -1}, {5, 1}, {7, 1}}), 0.0054,
                  1e-2});
  rows.push_back({"prime-real", false, family(Family::Prime), 0.0461, std::nullopt});
  rows.push_back({"decreasing-complex", true, decreasing_complex, 7.5342e-4, 1e-2});
  rows.push_back({"decreasing-real", false, family(Family::Decreasing), 0.0402, std::nullopt});
  rows.push_back({"increasing-complex", true, TargetState(3, increasing), 2.5487e-4, 1e-2});
  rows.push_back({"increasing-real", false, family(Family::Increasing), 0.0225, std::nullopt});
  rows.push_back({"even-complex", true, imaginary_on({{0, 1}, {2, 1}, {4, 1}, {6, 1}}), 4.3354e-6,
                  1e-2});
  rows.push_back({"even-real", false, family(Family::Even), 0.0363, std::nullopt});
  rows.push_back({"odd-complex", true, imaginary_on({{1, 1}, {3, 1}, {5, 1}, {7, 1}}), 1.0413e-6,
                  1e-2});
  rows.push_back({"odd-real", false, family(Family::Odd), 0.0191, std::nullopt});
  rows.push_back({"random-complex", true, random_complex, 6.4361e-5, 1e-2});
  rows.push_back({"random-real", false, random_real, 0.0987, std::nullopt});
  return rows;
}

bool Table1Outcome::passed() const {
  if (!report) return false;
  return !row.threshold || report->comparison.relative_error <= *row.threshold;
}

std::vector<Table1Outcome> run_table1(const Parametrization &parametrization,
                                      const SolverOptions &options) {
  std::vector<Table1Outcome> out;
  const auto rows = table1_rows();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    SolverOptions row_options = options;
    row_options.rng_seed = derive_seed(options.rng_seed, k);
    Table1Outcome outcome{rows[k], std::nullopt, {}};
    try {
      outcome.report = prepare_superposition(rows[k].target, parametrization, row_options);
    } catch (const SolverError &e) {
      outcome.error = e.what();
    }
    out.push_back(std::move(outcome));
  }
  return out;
}

std::string table1_to_csv(const std::vector<Table1Outcome> &outcomes) {
  std::string out = "row,amplitudes,reported_error,achieved_error,threshold,passed\n";
  for (const auto &o : outcomes) {
    out += o.row.label + "," + (o.row.complex ? "complex" : "real") + "," +
           format_double(o.row.reported_error) + "," +
           (o.report ? format_double(o.report->comparison.relative_error) : "") + "," +
           (o.row.threshold ? format_double(*o.row.threshold) : "") + "," +
           (o.row.threshold ? (o.passed() ? "1" : "0") : "") + "\n";
  }
  return out;
}

std::string table1_to_json(const std::vector<Table1Outcome> &outcomes) {
  std::string out = "[\n";
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    const auto &o = outcomes[k];
    nlohmann::ordered_json j;
    j["row"] = o.row.label;
    j["amplitudes"] = o.row.complex ? "complex" : "real";
    j["reported_error"] = o.row.reported_error;
    if (o.report) {
      j["achieved_error"] = o.report->comparison.relative_error;
      j["zero_support_leakage"] = o.report->comparison.zero_support_leakage;
      j["final_cost"] = o.report->solve.final_cost;
      j["status"] = to_string(o.report->solve.status);
    } else {
      j["error"] = o.error;
    }
    if (o.row.threshold) {
      j["threshold"] = *o.row.threshold;
      j["passed"] = o.passed();
    }
    std::string item = wrap_json(j);
    // Indent the nested object by two spaces.
    std::string indented = "  ";
    for (std::size_t i = 0; i + 1 < item.size(); ++i) {
      indented += item[i];
      if (item[i] == '\n') indented += "  ";
    }
    out += indented + (k + 1 < outcomes.size() ? ",\n" : "\n");
  }
  out += "]\n";
  return out;
}

}  // namespace pnegprep
