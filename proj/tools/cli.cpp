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

#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "pnegprep/circuit.hpp"
#include "pnegprep/distributions.hpp"
#include "pnegprep/experiments.hpp"
#include "pnegprep/io.hpp"
#include "pnegprep/solver.hpp"

namespace fs = std::filesystem;

namespace pnegprep::cli {

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::shared_ptr<spdlog::logger> make_logger() {
  auto logger = spdlog::get("pnegprep");
  if (!logger) logger = spdlog::stderr_color_mt("pnegprep");
  logger->set_level(spdlog::level::warn);
  if (const char *level = std::getenv("PNEGPREP_LOG")) {
    logger->set_level(spdlog::level::from_str(level));
  }
  return logger;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path &path, const std::string &content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("failed writing " + path.string());
}

fs::path output_dir(const std::string &out) {
  const fs::path dir = out.empty() ? fs::path(".") : fs::path(out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
  return dir;
}

// Flags shared by every command that runs the solver.
struct SolverFlags {
  std::string param = "angles";
  double unitarity_weight = 1.0;
  std::optional<int> multistart;
  std::optional<int> max_iter;
  std::optional<double> tol;
  std::uint64_t seed = 0;
  std::string options_file;
  bool fd_jacobian = false;

  void attach(CLI::App *cmd) {
    cmd->add_option("--param", param, "Parametrization: angles or entries")
        ->check(CLI::IsMember({"angles", "entries"}));
    cmd->add_option("--unitarity-weight", unitarity_weight,
                    "Weight of unitarity residuals (entries only)");
    cmd->add_option("--multistart", multistart, "Number of starting points");
    cmd->add_option("--max-iter", max_iter, "Iteration cap per start");
    cmd->add_option("--tol", tol, "Gradient tolerance");
    cmd->add_option("--seed", seed, "RNG seed");
    cmd->add_option("--options", options_file, "Solver options JSON file");
    cmd->add_flag("--fd-jacobian", fd_jacobian, "Use finite-difference Jacobians");
  }

  Parametrization parametrization() const {
    return {parse_parametrization_kind(param), unitarity_weight};
  }

  SolverOptions options() const {
    SolverOptions o = options_file.empty() ? SolverOptions{}
                                           : options_from_json(read_file(options_file));
    if (multistart) o.multistart_count = *multistart;
    if (max_iter) o.max_iterations = *max_iter;
    if (tol) o.grad_tol = *tol;
    o.rng_seed = seed;
    if (fd_jacobian) o.finite_difference_jacobian = true;
    o.validate();
    return o;
  }
};

Family family_or_throw(const std::string &name) {
  auto f = parse_family(name);
  if (!f) throw std::invalid_argument("unknown distribution \"" + name + "\"");
  return *f;
}

std::string summary_line(const PreparationReport &report) {
  std::ostringstream os;
  os << "status=" << to_string(report.solve.status)
     << " final_cost=" << format_double(report.solve.final_cost)
     << " relative_error=" << format_double(report.comparison.relative_error)
     << " max_unitarity_residual=" << format_double(report.max_unitarity_residual());
  return os.str();
}

std::set<JobOutput> parse_outputs(const std::vector<std::string> &names) {
  std::set<JobOutput> outs;
  for (const auto &name : names) {
    bool known = false;
    for (auto kind :
         {JobOutput::ReportJson, JobOutput::GatesJson, JobOutput::PlotCsv, JobOutput::Qasm}) {
      if (name == job_output_name(kind)) {
        outs.insert(kind);
        known = true;
      }
    }
    if (!known) throw std::invalid_argument("unknown output \"" + name + "\"");
  }
  if (outs.empty()) throw std::invalid_argument("at least one output is required");
  return outs;
}

int run_job(const JobSpec &job, const fs::path &dir, std::ostream &out,
            spdlog::logger &log) {
  if (const auto *spec = std::get_if<DistributionSpec>(&job.target)) {
    if (auto note = generation_note(*spec)) log.warn("{}", *note);
  }
  const TargetState target = job.resolve_target();
  log.info("solving n={} with {} starts", target.n(), job.options.multistart_count);
  const PreparationReport report =
      prepare_superposition(target, job.parametrization, job.options);
  if (!report.non_unitary_gates.empty()) {
    log.warn("{} gate(s) fail the unitarity test at {}", report.non_unitary_gates.size(),
             kReportUnitarityTol);
  }

  write_file(dir / "job.json", job_to_json(job));
  for (auto kind : job.outputs) {
    switch (kind) {
      case JobOutput::ReportJson:
        write_file(dir / "report.json", report_to_json(report));
        break;
      case JobOutput::GatesJson:
        write_file(dir / "gates.json", layout_to_json(report.solve.layout));
        break;
      case JobOutput::PlotCsv:
        write_file(dir / "plot.csv", comparison_to_csv(report.comparison));
        break;
      case JobOutput::Qasm:
        if (report.non_unitary_gates.empty()) {
          write_file(dir / "circuit.qasm", export_qasm(report.solve.layout));
        } else {
          log.warn("skipping circuit export: layout is not unitary");
        }
        break;
    }
  }
  out << summary_line(report) << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  auto log = make_logger();

  CLI::App app{"Prepare quantum superpositions with a partial-negation circuit", "pnegprep"};
  app.require_subcommand(1);

  // solve
  auto *solve = app.add_subcommand("solve", "Fit gate parameters for a target state");
  std::string target_file, job_file, distribution, out_dir;
  int qubits = 3;
  bool normalize = false;
  std::vector<std::string> outputs{"report_json", "gates_json", "plot_csv"};
  SolverFlags solve_flags;
  solve->add_option("--target", target_file, "Target state JSON file");
  solve->add_option("--job", job_file, "Job JSON file");
  solve->add_option("--distribution", distribution, "Built-in target family");
  solve->add_option("--qubits", qubits, "Data-qubit count for --distribution");
  solve->add_flag("--normalize", normalize, "Rescale the target to unit norm");
  solve->add_option("--outputs", outputs, "report_json, gates_json, plot_csv, qasm")
      ->delimiter(',');
  solve->add_option("--out", out_dir, "Output directory");
  solve_flags.attach(solve);

  // simulate
  auto *simulate = app.add_subcommand("simulate", "Simulate a layout and dump amplitudes");
  std::string layout_file, format = "json", sim_out;
  bool permissive = false;
  simulate->add_option("--layout", layout_file, "Layout JSON file")->required();
  simulate->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  simulate->add_option("--out", sim_out, "Output directory (default: stdout)");
  simulate->add_flag("--permissive", permissive, "Allow non-unitary gates");

  // distribution
  auto *dist = app.add_subcommand("distribution", "Emit a built-in target as JSON");
  std::string dist_name, dist_out;
  int dist_qubits = 3;
  std::uint64_t dist_seed = 0;
  bool dist_normalize = false;
  dist->add_option("--distribution", dist_name, "Family name")->required();
  dist->add_option("--qubits", dist_qubits, "Data-qubit count");
  dist->add_option("--seed", dist_seed, "Seed for random families");
  dist->add_flag("--normalize", dist_normalize, "Rescale to unit norm");
  dist->add_option("--out", dist_out, "Output file (default: stdout)");

  // batch
  auto *batch = app.add_subcommand("batch", "Solve many seeded random targets");
  BatchConfig batch_config;
  std::string batch_family = "random-complex", batch_out;
  SolverFlags batch_flags;
  batch->add_option("--qubits", batch_config.n, "Data-qubit count");
  batch->add_option("--trials", batch_config.trials, "Number of targets");
  batch->add_option("--jobs", batch_config.jobs, "Worker threads");
  batch->add_option("--distribution", batch_family, "random-complex or random-real");
  batch->add_option("--out", batch_out, "Output directory");
  batch_flags.attach(batch);

  // table1
  auto *table = app.add_subcommand("table1", "Run the 3-qubit comparison table");
  std::string table_out;
  SolverFlags table_flags;
  table->add_option("--out", table_out, "Output directory");
  table_flags.attach(table);

  // export-qasm
  auto *qasm = app.add_subcommand("export-qasm", "Write an OpenQASM listing for a layout");
  std::string qasm_layout, qasm_out;
  qasm->add_option("--layout", qasm_layout, "Layout JSON file")->required();
  qasm->add_option("--out", qasm_out, "Output file (default: stdout)");

  // verify
  auto *verify = app.add_subcommand("verify", "Apply the unitarity test to a gates file");
  std::string verify_file;
  double verify_tol = kSolverUnitarityTol;
  verify->add_option("--gates", verify_file, "Layout or gate-list JSON file")->required();
  verify->add_option("--tol", verify_tol, "Tolerance on both residuals");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (solve->parsed()) {
      JobSpec job{TargetState(1, {Complex{1.0, 0.0}, Complex{0.0, 0.0}}), {}, {}, {}};
      const int sources = !target_file.empty() + !job_file.empty() + !distribution.empty();
      if (sources != 1) {
        throw std::invalid_argument(
            "solve needs exactly one of --target, --job or --distribution");
      }
      if (!job_file.empty()) {
        job = job_from_json(read_file(job_file));
      } else {
        if (!target_file.empty()) {
          TargetState t = target_from_json(read_file(target_file));
          job.target = normalize ? TargetState(t.n(), t.amplitudes(), true) : t;
        } else {
          const DistributionSpec spec{family_or_throw(distribution), qubits, solve_flags.seed};
          job.target = spec;
          if (normalize) job.target = TargetState(spec.n, generate(spec).amplitudes(), true);
        }
        job.parametrization = solve_flags.parametrization();
        job.options = solve_flags.options();
        job.outputs = parse_outputs(outputs);
      }
      return run_job(job, output_dir(out_dir), out, *log);
    }

    if (simulate->parsed()) {
      const CircuitLayout layout = layout_from_json(read_file(layout_file));
      SimulateOptions sim_options;
      sim_options.permissive = permissive;
      const StateVector sv = simulate_full(layout, sim_options);
      const DataAmplitudes summed = summed_ancilla_amplitudes(sv);
      const bool csv = format == "csv";
      const auto dump = [csv](std::span<const Complex> amps) {
        return csv ? amplitudes_to_csv(amps) : amplitudes_to_json(amps);
      };
      if (sim_out.empty()) {
        out << dump(summed.values);
      } else {
        const fs::path dir = output_dir(sim_out);
        const std::string ext = csv ? ".csv" : ".json";
        write_file(dir / ("statevector" + ext), dump(sv.amplitudes));
        write_file(dir / ("amplitudes" + ext), dump(summed.values));
      }
      return kExitOk;
    }

    if (dist->parsed()) {
      const DistributionSpec spec{family_or_throw(dist_name), dist_qubits, dist_seed};
      if (auto note = generation_note(spec)) log->warn("{}", *note);
      TargetState target = generate(spec);
      if (dist_normalize) target = TargetState(target.n(), target.amplitudes(), true);
      const std::string doc = target_to_json(target);
      if (dist_out.empty()) {
        out << doc;
      } else {
        write_file(dist_out, doc);
      }
      return kExitOk;
    }

    if (batch->parsed()) {
      batch_config.family = family_or_throw(batch_family);
      batch_config.seed = batch_flags.seed;
      batch_config.parametrization = batch_flags.parametrization();
      batch_config.options = batch_flags.options();
      const BatchSummary summary = run_batch(batch_config);
      const fs::path dir = output_dir(batch_out);
      write_file(dir / "trials.csv", batch_trials_to_csv(summary));
      write_file(dir / "summary.json", batch_summary_to_json(summary, batch_config));
      out << "trials=" << summary.trial_count << " failures=" << summary.failure_count
          << " mean_relative_error=" << format_double(summary.mean)
          << " median_relative_error=" << format_double(summary.median) << "\n";
      return kExitOk;
    }

    if (table->parsed()) {
      const auto outcomes =
          run_table1(table_flags.parametrization(), table_flags.options());
      const fs::path dir = output_dir(table_out);
      write_file(dir / "table1.csv", table1_to_csv(outcomes));
      write_file(dir / "table1.json", table1_to_json(outcomes));
      for (const auto &o : outcomes) {
        if (o.report) {
          write_file(dir / ("plot_" + o.row.label + ".csv"),
                     comparison_to_csv(o.report->comparison));
        }
        out << o.row.label << " reported=" << format_double(o.row.reported_error)
            << " achieved="
            << (o.report ? format_double(o.report->comparison.relative_error) : "failed");
        if (o.row.threshold) out << (o.passed() ? " PASS" : " FAIL");
        out << "\n";
      }
      return kExitOk;
    }

    if (qasm->parsed()) {
      const std::string listing = export_qasm(layout_from_json(read_file(qasm_layout)));
      if (qasm_out.empty()) {
        out << listing;
      } else {
        write_file(qasm_out, listing);
      }
      return kExitOk;
    }

    if (verify->parsed()) {
      const auto gates = gates_from_json(read_file(verify_file));
      bool all_pass = true;
      for (std::size_t t = 0; t < gates.size(); ++t) {
        const auto u = unitarity_residuals(gates[t]);
        const bool pass = u.passes(verify_tol);
        all_pass = all_pass && pass;
        out << "K_" << (t + 1) << " d_norm=" << format_double(u.d_norm)
            << " d_orth=" << format_double(u.d_orth) << (pass ? " PASS" : " FAIL") << "\n";
      }
      return all_pass ? kExitOk : kExitInputError;
    }
  } catch (const SolverError &e) {
    err << "solver error: " << e.what() << "\n";
    return kExitSolverFailure;
  } catch (const FormatError &e) {
    err << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const IoError &e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace pnegprep::cli
