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

#include "pnegprep/io.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "json.hpp"

namespace pnegprep {

using Json = nlohmann::ordered_json;

FormatError::FormatError(const std::string &what, std::size_t line,
                         std::size_t column)
    : std::invalid_argument(
          line > 0 ? what + " (line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ")"
                   : what),
      line_(line),
      column_(column) {}

std::string format_double(double value) {
  if (!std::isfinite(value)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

// --- text <-> Json -------------------------------------------------------

Json parse(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error &e) {
    // Translate the byte offset into a line/column pair.
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw FormatError("malformed JSON", line, column);
  }
}

bool is_scalar(const Json &j) { return !j.is_array() && !j.is_object(); }

void write(std::ostream &os, const Json &j, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close_pad(2 * depth, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << Json(it.key()).dump() << ": ";
        write(os, it.value(), depth + 1);
      }
      os << "\n" << close_pad << "}";
      return;
    }
    case Json::value_t::array: {
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json &e) {
        return is_scalar(e) ||
               (e.is_array() && std::all_of(e.begin(), e.end(), is_scalar));
      });
      if (j.empty()) {
        os << "[]";
      } else if (flat && j.size() <= 8 &&
                 std::all_of(j.begin(), j.end(), is_scalar)) {
        os << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          write(os, j[i], depth + 1);
        }
        os << "]";
      } else {
        os << "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ",\n";
          os << pad;
          write(os, j[i], depth + 1);
        }
        os << "\n" << close_pad << "]";
      }
      return;
    }
    case Json::value_t::number_float:
      os << format_double(j.get<double>());
      return;
    default:
      os << j.dump();
      return;
  }
}

std::string render(const Json &j) {
  std::ostringstream os;
  write(os, j, 0);
  os << "\n";
  return os.str();
}

// --- field access --------------------------------------------------------

const Json &require(const Json &j, const char *key) {
  if (!j.is_object()) throw FormatError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing key \"") + key + "\"");
  return *it;
}

double number(const Json &j, const char *what) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!j.is_number()) throw FormatError(std::string(what) + " must be a number");
  return j.get<double>();
}

int integer(const Json &j, const char *what) {
  if (!j.is_number_integer()) {
    throw FormatError(std::string(what) + " must be an integer");
  }
  return j.get<int>();
}

std::uint64_t unsigned_integer(const Json &j, const char *what) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() &&
                                 j.get<std::int64_t>() < 0)) {
    throw FormatError(std::string(what) + " must be a nonnegative integer");
  }
  return j.get<std::uint64_t>();
}

Json real_array(std::span<const double> values) {
  Json out = Json::array();
  for (double v : values) out.push_back(v);
  return out;
}

std::vector<double> reals_of(const Json &j, const char *what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto &e : j) out.push_back(number(e, what));
  return out;
}

Json complex_json(const Complex &z) { return Json::array({z.real(), z.imag()}); }

Complex complex_of(const Json &j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) {
    throw FormatError("complex numbers must be [re, im] pairs");
  }
  return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

Json complex_array(std::span<const Complex> values) {
  Json out = Json::array();
  for (const auto &z : values) out.push_back(complex_json(z));
  return out;
}

std::vector<Complex> complexes_of(const Json &j) {
  if (!j.is_array()) throw FormatError("amplitudes must be an array");
  std::vector<Complex> out;
  for (const auto &e : j) out.push_back(complex_of(e));
  return out;
}

// Domain validation failures surface as FormatError so that callers see one
// error type for bad input documents.
template <typename F>
auto validated(F &&f) -> decltype(f()) {
  try {
    return f();
  } catch (const FormatError &) {
    throw;
  } catch (const std::invalid_argument &e) {
    throw FormatError(e.what());
  } catch (const std::domain_error &e) {
    throw FormatError(e.what());
  } catch (const Json::exception &e) {
    throw FormatError(e.what());
  }
}

// --- domain <-> Json -----------------------------------------------------

Json gate_json(const SymmetricGate &g) {
  return Json{{"a", complex_json(g.a())}, {"b", complex_json(g.b())}};
}

SymmetricGate gate_of(const Json &j) {
  return gate_from_entries(complex_of(require(j, "a")), complex_of(require(j, "b")));
}

Json gates_json(const std::vector<SymmetricGate> &gates) {
  Json out = Json::array();
  for (const auto &g : gates) out.push_back(gate_json(g));
  return out;
}

std::vector<SymmetricGate> gates_of(const Json &j) {
  if (!j.is_array()) throw FormatError("gate list must be an array");
  std::vector<SymmetricGate> out;
  for (const auto &e : j) out.push_back(gate_of(e));
  return out;
}

Json layout_json(const CircuitLayout &layout) {
  return Json{{"n", layout.n()},
              {"data_gates", gates_json(layout.data_gates())},
              {"ancilla_gates", gates_json(layout.ancilla_gates())}};
}

CircuitLayout layout_of(const Json &j) {
  const int n = integer(require(j, "n"), "n");
  CircuitLayout layout(gates_of(require(j, "data_gates")),
                       gates_of(require(j, "ancilla_gates")));
  if (layout.n() != n) throw FormatError("layout gate count does not match n");
  return layout;
}

Json target_json(const TargetState &t) {
  // Amplitudes are written as used, so a reader never renormalizes them.
  return Json{{"n", t.n()}, {"amplitudes", complex_array(t.amplitudes())},
              {"normalize", false}};
}

TargetState target_of(const Json &j) {
  const int n = integer(require(j, "n"), "n");
  bool normalize = false;
  if (auto it = j.find("normalize"); it != j.end()) {
    if (!it->is_boolean()) throw FormatError("normalize must be a boolean");
    normalize = it->get<bool>();
  }
  return TargetState(n, complexes_of(require(j, "amplitudes")), normalize);
}

Json distribution_json(const DistributionSpec &spec) {
  return Json{{"family", family_name(spec.family)}, {"n", spec.n}, {"seed", spec.rng_seed}};
}

DistributionSpec distribution_of(const Json &j) {
  const auto &name = require(j, "family");
  if (!name.is_string()) throw FormatError("family must be a string");
  auto family = parse_family(name.get<std::string>());
  if (!family) throw FormatError("unknown distribution family \"" + name.get<std::string>() + "\"");
  DistributionSpec spec{*family, integer(require(j, "n"), "n"), 0};
  if (auto it = j.find("seed"); it != j.end()) spec.rng_seed = unsigned_integer(*it, "seed");
  return spec;
}

Json parametrization_json(const Parametrization &p) {
  return Json{{"kind", parametrization_name(p)}, {"unitarity_weight", p.unitarity_weight}};
}

Parametrization parametrization_of(const Json &j) {
  Parametrization p;
  const auto &kind = require(j, "kind");
  if (!kind.is_string()) throw FormatError("parametrization kind must be a string");
  p.kind = parse_parametrization_kind(kind.get<std::string>());
  if (auto it = j.find("unitarity_weight"); it != j.end()) {
    p.unitarity_weight = number(*it, "unitarity_weight");
  }
  return p;
}

Json options_json(const SolverOptions &o) {
  return Json{{"max_iterations", o.max_iterations},
              {"cost_tol", o.cost_tol},
              {"grad_tol", o.grad_tol},
              {"step_tol", o.step_tol},
              {"lambda_init", o.lambda_init},
              {"lambda_up", o.lambda_up},
              {"lambda_down", o.lambda_down},
              {"multistart_count", o.multistart_count},
              {"rng_seed", o.rng_seed},
              {"finite_difference_jacobian", o.finite_difference_jacobian}};
}

SolverOptions options_of(const Json &j) {
  if (!j.is_object()) throw FormatError("solver options must be an object");
  SolverOptions o;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string &key = it.key();
    const Json &v = it.value();
    if (key == "max_iterations") o.max_iterations = integer(v, "max_iterations");
    else if (key == "cost_tol") o.cost_tol = number(v, "cost_tol");
    else if (key == "grad_tol") o.grad_tol = number(v, "grad_tol");
    else if (key == "step_tol") o.step_tol = number(v, "step_tol");
    else if (key == "lambda_init") o.lambda_init = number(v, "lambda_init");
    else if (key == "lambda_up") o.lambda_up = number(v, "lambda_up");
    else if (key == "lambda_down") o.lambda_down = number(v, "lambda_down");
    else if (key == "multistart_count") o.multistart_count = integer(v, "multistart_count");
    else if (key == "rng_seed") o.rng_seed = unsigned_integer(v, "rng_seed");
    else if (key == "finite_difference_jacobian") {
      if (!v.is_boolean()) throw FormatError("finite_difference_jacobian must be a boolean");
      o.finite_difference_jacobian = v.get<bool>();
    } else {
      throw FormatError("unknown solver option \"" + key + "\"");
    }
  }
  o.validate();
  return o;
}

SolveStatus status_of(const Json &j) {
  const std::string s = j.get<std::string>();
  for (auto status : {SolveStatus::Converged, SolveStatus::MaxIterations, SolveStatus::Stalled}) {
    if (s == to_string(status)) return status;
  }
  throw FormatError("unknown solve status \"" + s + "\"");
}

Json comparison_json(const ComparisonReport &c) {
  return Json{{"relative_error", c.relative_error},
              {"fidelity", c.fidelity},
              {"max_abs_amp_diff", c.max_abs_amp_diff},
              {"zero_support_leakage", c.zero_support_leakage},
              {"prepared_probs", real_array(c.prepared_probs)},
              {"acquired_probs", real_array(c.acquired_probs)}};
}

ComparisonReport comparison_of(const Json &j) {
  ComparisonReport c;
  c.relative_error = number(require(j, "relative_error"), "relative_error");
  c.fidelity = number(require(j, "fidelity"), "fidelity");
  c.max_abs_amp_diff = number(require(j, "max_abs_amp_diff"), "max_abs_amp_diff");
  c.zero_support_leakage = number(require(j, "zero_support_leakage"), "zero_support_leakage");
  c.prepared_probs = reals_of(require(j, "prepared_probs"), "prepared_probs");
  c.acquired_probs = reals_of(require(j, "acquired_probs"), "acquired_probs");
  return c;
}

Json job_json(const JobSpec &job) {
  Json j = Json::object();
  if (const auto *t = std::get_if<TargetState>(&job.target)) {
    j["target"] = target_json(*t);
  } else {
    j["distribution"] = distribution_json(std::get<DistributionSpec>(job.target));
  }
  j["parametrization"] = parametrization_json(job.parametrization);
  j["options"] = options_json(job.options);
  Json outs = Json::array();
  for (auto o : job.outputs) outs.push_back(job_output_name(o));
  j["outputs"] = outs;
  return j;
}

}  // namespace

// --- public API ------------------------------------------------------------

std::string gate_to_json(const SymmetricGate &g) { return render(gate_json(g)); }

SymmetricGate gate_from_json(std::string_view text) {
  return validated([&] { return gate_of(parse(text)); });
}

std::string angles_to_json(const GateAngles &angles) {
  return render(Json{{"gamma", angles.gamma}, {"theta", angles.theta}});
}

GateAngles angles_from_json(std::string_view text) {
  return validated([&] {
    const Json j = parse(text);
    return GateAngles{number(require(j, "gamma"), "gamma"),
                      number(require(j, "theta"), "theta")};
  });
}

std::string layout_to_json(const CircuitLayout &layout) {
  return render(layout_json(layout));
}

CircuitLayout layout_from_json(std::string_view text) {
  return validated([&] { return layout_of(parse(text)); });
}

std::vector<SymmetricGate> gates_from_json(std::string_view text) {
  return validated([&] {
    const Json j = parse(text);
    if (j.is_object() && j.contains("gates")) return gates_of(j["gates"]);
    if (j.is_array()) return gates_of(j);
    const auto layout = layout_of(j);
    std::vector<SymmetricGate> out;
    for (int t = 0; t < 2 * layout.n(); ++t) out.push_back(layout.gate(t));
    return out;
  });
}

std::string target_to_json(const TargetState &target) {
  return render(target_json(target));
}

TargetState target_from_json(std::string_view text) {
  return validated([&] { return target_of(parse(text)); });
}

std::string distribution_to_json(const DistributionSpec &spec) {
  return render(distribution_json(spec));
}

DistributionSpec distribution_from_json(std::string_view text) {
  return validated([&] { return distribution_of(parse(text)); });
}

std::string parametrization_name(const Parametrization &p) {
  return p.kind == Parametrization::Kind::Angles ? "angles" : "entries";
}

Parametrization::Kind parse_parametrization_kind(std::string_view name) {
  if (name == "angles") return Parametrization::Kind::Angles;
  if (name == "entries" || name == "raw") return Parametrization::Kind::RawEntries;
  throw FormatError("unknown parametrization \"" + std::string(name) +
                    "\" (expected angles or entries)");
}

std::string options_to_json(const SolverOptions &options) {
  return render(options_json(options));
}

SolverOptions options_from_json(std::string_view text) {
  return validated([&] { return options_of(parse(text)); });
}

std::string report_to_json(const PreparationReport &report) {
  const auto &s = report.solve;
  Json starts = Json::array();
  for (const auto &st : s.starts) {
    starts.push_back(Json{{"failed", st.failed},
                          {"final_cost", st.final_cost},
                          {"iterations", st.iterations},
                          {"status", to_string(st.status)}});
  }
  Json unitarity = Json::array();
  for (const auto &u : report.unitarity) {
    unitarity.push_back(Json{{"d_norm", u.d_norm}, {"d_orth", u.d_orth}});
  }
  Json j{{"target", target_json(report.target)},
         {"parametrization", parametrization_json(report.parametrization)},
         {"status", to_string(s.status)},
         {"final_cost", s.final_cost},
         {"iterations", s.iterations},
         {"start_index", s.start_index},
         {"max_unitarity_residual", report.max_unitarity_residual()},
         {"comparison", comparison_json(report.comparison)},
         {"acquired_amplitudes", complex_array(report.acquired.values)},
         {"gates", layout_json(s.layout)},
         {"params", real_array(std::span<const double>(s.params.data(), s.params.size()))},
         {"unitarity", unitarity},
         {"non_unitary_gates", report.non_unitary_gates},
         {"cost_trace", real_array(s.cost_trace)},
         {"starts", starts}};
  return render(j);
}

PreparationReport report_from_json(std::string_view text) {
  return validated([&] {
    const Json j = parse(text);
    TargetState target = target_of(require(j, "target"));
    const Parametrization param = parametrization_of(require(j, "parametrization"));
    const auto params = reals_of(require(j, "params"), "params");
    SolveResult solve{Eigen::Map<const Eigen::VectorXd>(params.data(), params.size()),
                      layout_of(require(j, "gates")),
                      number(require(j, "final_cost"), "final_cost"),
                      integer(require(j, "iterations"), "iterations"),
                      status_of(require(j, "status")),
                      reals_of(require(j, "cost_trace"), "cost_trace"),
                      integer(require(j, "start_index"), "start_index"),
                      {}};
    for (const auto &st : require(j, "starts")) {
      solve.starts.push_back({require(st, "failed").get<bool>(),
                              number(require(st, "final_cost"), "final_cost"),
                              integer(require(st, "iterations"), "iterations"),
                              status_of(require(st, "status"))});
    }
    DataAmplitudes acquired{target.n(), complexes_of(require(j, "acquired_amplitudes"))};
    std::vector<UnitarityResiduals> unitarity;
    for (const auto &u : require(j, "unitarity")) {
      unitarity.push_back({number(require(u, "d_norm"), "d_norm"),
                           number(require(u, "d_orth"), "d_orth")});
    }
    std::vector<int> flagged;
    for (const auto &f : require(j, "non_unitary_gates")) flagged.push_back(integer(f, "gate index"));
    return PreparationReport{std::move(target), param, std::move(solve), std::move(acquired),
                             std::move(unitarity), std::move(flagged),
                             comparison_of(require(j, "comparison"))};
  });
}

std::string amplitudes_to_json(std::span<const Complex> amps) {
  return render(complex_array(amps));
}

std::vector<Complex> amplitudes_from_json(std::string_view text) {
  return validated([&] { return complexes_of(parse(text)); });
}

std::string amplitudes_to_csv(std::span<const Complex> amps) {
  std::string out = "index,re,im\n";
  for (std::size_t i = 0; i < amps.size(); ++i) {
    out += std::to_string(i) + "," + format_double(amps[i].real()) + "," +
           format_double(amps[i].imag()) + "\n";
  }
  return out;
}

std::string comparison_to_csv(const ComparisonReport &report) {
  std::string out = "index,prepared,acquired\n";
  for (std::size_t i = 0; i < report.prepared_probs.size(); ++i) {
    out += std::to_string(i) + "," + format_double(report.prepared_probs[i]) + "," +
           format_double(report.acquired_probs[i]) + "\n";
  }
  return out;
}

std::string_view job_output_name(JobOutput out) {
  switch (out) {
    case JobOutput::ReportJson:
      return "report_json";
    case JobOutput::GatesJson:
      return "gates_json";
    case JobOutput::PlotCsv:
      return "plot_csv";
    case JobOutput::Qasm:
      return "qasm";
  }
  return "unknown";
}

TargetState JobSpec::resolve_target() const {
  if (const auto *t = std::get_if<TargetState>(&target)) return *t;
  return generate(std::get<DistributionSpec>(target));
}

std::string job_to_json(const JobSpec &job) { return render(job_json(job)); }

JobSpec job_from_json(std::string_view text) {
  return validated([&] {
    const Json j = parse(text);
    if (!j.is_object()) throw FormatError("job must be a JSON object");
    const bool has_target = j.contains("target");
    const bool has_distribution = j.contains("distribution");
    if (has_target == has_distribution) {
      throw FormatError("job needs exactly one of \"target\" or \"distribution\"");
    }
    JobSpec job{has_target ? std::variant<TargetState, DistributionSpec>(target_of(j["target"]))
                           : std::variant<TargetState, DistributionSpec>(
                                 distribution_of(j["distribution"])),
                {}, {}, {JobOutput::ReportJson}};
    if (auto it = j.find("parametrization"); it != j.end()) {
      job.parametrization = parametrization_of(*it);
    }
    if (auto it = j.find("options"); it != j.end()) job.options = options_of(*it);
    if (auto it = j.find("outputs"); it != j.end()) {
      if (!it->is_array() || it->empty()) throw FormatError("outputs must be a nonempty array");
      job.outputs.clear();
      for (const auto &o : *it) {
        const std::string name = o.is_string() ? o.get<std::string>() : "";
        bool known = false;
        for (auto kind : {JobOutput::ReportJson, JobOutput::GatesJson, JobOutput::PlotCsv,
                          JobOutput::Qasm}) {
          if (name == job_output_name(kind)) {
            job.outputs.insert(kind);
            known = true;
          }
        }
        if (!known) throw FormatError("unknown job output \"" + name + "\"");
      }
    }
    return job;
  });
}

// --- circuit export --------------------------------------------------------

namespace {

bool is_x_gate(const SymmetricGate &g) {
  return std::abs(g.a()) <= 1e-12 && std::abs(g.b() - Complex{1.0, 0.0}) <= 1e-12;
}

// Adding 0.0 folds -0 into 0.
std::string angle_text(double x) { return format_double(x + 0.0); }

}  // namespace

std::string export_qasm(const CircuitLayout &layout) {
  const int n = layout.n();
  std::ostringstream os;
  os << "OPENQASM 2.0;\n"
     << "include \"qelib1.inc\";\n"
     << "// partial-negation preparation circuit: " << n
     << " data qubits, 1 ancilla\n"
     << "// gate K = exp(i*gamma) * rx(-2*theta); ancilla-summed amplitudes "
        "depend on gamma\n"
     << "qreg q[" << n << "];\n"
     << "qreg anc[1];\n";
  for (int t = 0; t < 2 * n; ++t) {
    const auto &g = layout.gate(t);
    if (!unitarity_residuals(g).passes(kSolverUnitarityTol)) {
      throw std::invalid_argument("cannot export non-unitary gate K_" +
                                  std::to_string(t + 1));
    }
    const auto angles = angles_from_gate(g);
    const bool controlled = t >= n;
    const int qubit = controlled ? t - n : t;
    os << "// K_" << (t + 1) << " a=" << format_double(g.a().real()) << ","
       << format_double(g.a().imag()) << " b=" << format_double(g.b().real())
       << "," << format_double(g.b().imag()) << "\n";
    os << "// pragma " << (controlled ? "cphase" : "gphase") << "("
       << angle_text(angles.gamma) << ") q[" << qubit << "]\n";
    if (is_x_gate(g)) {
      // X = exp(i pi/2) rx(pi), so the listed phase is already absorbed.
      os << (controlled ? "cx q[" : "x q[") << qubit << "]"
         << (controlled ? ",anc[0];\n" : ";\n");
    } else {
      os << (controlled ? "crx(" : "rx(") << angle_text(-2.0 * angles.theta)
         << ") q[" << qubit << "]" << (controlled ? ",anc[0];\n" : ";\n");
    }
  }
  return os.str();
}

QasmStructure analyze_qasm(std::string_view text) {
  QasmStructure s;
  std::istringstream is{std::string(text)};
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line.rfind("//", 0) == 0) continue;
    int size = 0;
    if (std::sscanf(line.c_str(), "qreg q[%d];", &size) == 1) {
      s.data_qubits += size;
    } else if (std::sscanf(line.c_str(), "qreg anc[%d];", &size) == 1) {
      s.ancilla_qubits += size;
    } else if (line.rfind("x ", 0) == 0 || line.rfind("rx(", 0) == 0) {
      ++s.single_qubit_gates;
    } else if (line.rfind("cx ", 0) == 0 || line.rfind("crx(", 0) == 0) {
      ++s.controlled_gates;
    }
  }
  return s;
}

}  // namespace pnegprep
