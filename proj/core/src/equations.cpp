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

#include "pnegprep/equations.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pnegprep {

namespace {

constexpr Complex kI{0.0, 1.0};

bool all_finite(const Eigen::VectorXd &v) { return v.allFinite(); }

// Entries and first derivatives of one gate with respect to its own local
// parameters (2 for angles, 4 for raw entries).
struct LocalGate {
  Complex a, b;
  std::array<Complex, 4> da{}, db{};
};

LocalGate local_gate(const double *p, Parametrization::Kind kind) {
  LocalGate g;
  if (kind == Parametrization::Kind::Angles) {
    const Complex phase = std::polar(1.0, p[0]);
    const double c = std::cos(p[1]);
    const double s = std::sin(p[1]);
    g.a = phase * c;
    g.b = kI * phase * s;
    g.da[0] = kI * g.a;
    g.da[1] = -phase * s;
    g.db[0] = kI * g.b;
    g.db[1] = kI * phase * c;
  } else {
    g.a = {p[0], p[1]};
    g.b = {p[2], p[3]};
    g.da = {Complex{1.0, 0.0}, kI, 0.0, 0.0};
    g.db = {Complex{0.0, 0.0}, 0.0, 1.0, kI};
  }
  return g;
}

}  // namespace

TargetState::TargetState(int n, std::vector<Complex> amplitudes,
                         bool normalize)
    : n_(n), amplitudes_(std::move(amplitudes)), normalized_(normalize) {
  if (n < 1 || n > kMaxDataQubits) {
    throw std::invalid_argument("target qubit count must be in 1.." +
                                std::to_string(kMaxDataQubits));
  }
  if (amplitudes_.size() != (std::size_t{1} << n)) {
    throw std::invalid_argument("target needs 2^n = " +
                                std::to_string(std::size_t{1} << n) +
                                " amplitudes, got " +
                                std::to_string(amplitudes_.size()));
  }
  for (const auto &z : amplitudes_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument("target amplitudes must be finite");
    }
  }
  double norm2 = squared_norm();
  if (normalize && norm2 > 0.0) {
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto &z : amplitudes_) z *= scale;
    norm2 = squared_norm();
  }
  if (!(norm2 > 0.0) || norm2 > 1.0 + 1e-6) {
    throw std::invalid_argument("target squared norm " + std::to_string(norm2) +
                                " is outside (0, 1]");
  }
}

double TargetState::squared_norm() const {
  double s = 0.0;
  for (const auto &z : amplitudes_) s += std::norm(z);
  return s;
}

CircuitLayout decode(const ParameterVector &params,
                     const Parametrization &parametrization, int n) {
  const int per_gate = parametrization.parameters_per_gate();
  if (n < 1 || params.size() != 2 * n * per_gate) {
    throw std::invalid_argument(
        "parameter vector length " + std::to_string(params.size()) +
        " does not match " + std::to_string(2 * n * per_gate));
  }
  std::vector<SymmetricGate> data, ancilla;
  for (int t = 0; t < 2 * n; ++t) {
    const double *p = params.data() + t * per_gate;
    SymmetricGate g =
        parametrization.kind == Parametrization::Kind::Angles
            ? gate_from_angles({p[0], p[1]})
            : gate_from_entries({p[0], p[1]}, {p[2], p[3]});
    (t < n ? data : ancilla).push_back(g);
  }
  return CircuitLayout(std::move(data), std::move(ancilla));
}

ParameterVector encode(const CircuitLayout &layout,
                       const Parametrization &parametrization) {
  const int n = layout.n();
  const int per_gate = parametrization.parameters_per_gate();
  ParameterVector params(2 * n * per_gate);
  for (int t = 0; t < 2 * n; ++t) {
    const auto &g = layout.gate(t);
    double *p = params.data() + t * per_gate;
    if (parametrization.kind == Parametrization::Kind::Angles) {
      if (!unitarity_residuals(g).passes(kSolverUnitarityTol)) {
        throw std::invalid_argument("angle encoding needs unitary gates");
      }
      const auto angles = angles_from_gate(g);
      p[0] = angles.gamma;
      p[1] = angles.theta;
    } else {
      p[0] = g.a().real();
      p[1] = g.a().imag();
      p[2] = g.b().real();
      p[3] = g.b().imag();
    }
  }
  return params;
}

Eigen::MatrixXd central_difference_jacobian(const ResidualFunction &f,
                                            const Eigen::VectorXd &x,
                                            double step) {
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  const Eigen::VectorXd f0 = f(x);
  if (!all_finite(f0)) throw std::invalid_argument("non-finite residuals");
  Eigen::MatrixXd jac(f0.size(), x.size());
  Eigen::VectorXd probe = x;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    probe[k] = x[k] + step;
    const Eigen::VectorXd plus = f(probe);
    probe[k] = x[k] - step;
    const Eigen::VectorXd minus = f(probe);
    probe[k] = x[k];
    if (!all_finite(plus) || !all_finite(minus)) {
      throw std::invalid_argument("non-finite residuals in finite difference");
    }
    jac.col(k) = (plus - minus) / (2.0 * step);
  }
  return jac;
}

ResidualSystem::ResidualSystem(TargetState target,
                               Parametrization parametrization)
    : target_(std::move(target)), parametrization_(parametrization) {
  if (!(parametrization_.unitarity_weight >= 0.0)) {
    throw std::invalid_argument("unitarity weight must be >= 0");
  }
}

int ResidualSystem::residual_count() const {
  int rows = 2 * static_cast<int>(target_.size());
  if (parametrization_.has_unitarity_rows()) rows += 2 * 2 * n();
  return rows;
}

int ResidualSystem::parameter_count() const {
  return 2 * n() * parametrization_.parameters_per_gate();
}

void ResidualSystem::check_params(const ParameterVector &params) const {
  if (params.size() != parameter_count()) {
    throw std::invalid_argument("expected " + std::to_string(parameter_count()) +
                                " parameters, got " +
                                std::to_string(params.size()));
  }
  if (!all_finite(params)) {
    throw std::invalid_argument("parameters must be finite");
  }
}

Eigen::VectorXd ResidualSystem::residuals(const ParameterVector &params) const {
  check_params(params);
  const auto layout = decode(params, parametrization_, n());
  const auto model = closed_form_amplitudes(layout);
  Eigen::VectorXd r(residual_count());
  const auto &target = target_.amplitudes();
  for (std::size_t x = 0; x < target.size(); ++x) {
    const Complex d = model.values[x] - target[x];
    r[2 * x] = d.real();
    r[2 * x + 1] = d.imag();
  }
  if (parametrization_.has_unitarity_rows()) {
    const double w = parametrization_.unitarity_weight;
    const auto base = static_cast<Eigen::Index>(2 * target.size());
    for (int t = 0; t < 2 * n(); ++t) {
      const auto u = unitarity_residuals(layout.gate(t));
      r[base + 2 * t] = w * u.d_norm;
      r[base + 2 * t + 1] = w * u.d_orth;
    }
  }
  return r;
}

Eigen::MatrixXd ResidualSystem::jacobian_analytic(
    const ParameterVector &params) const {
  check_params(params);
  const int n = this->n();
  const int gates = 2 * n;
  const int per_gate = parametrization_.parameters_per_gate();

  std::vector<LocalGate> local(gates);
  for (int t = 0; t < gates; ++t) {
    local[t] = local_gate(params.data() + t * per_gate, parametrization_.kind);
  }

  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(residual_count(), parameter_count());

  // Each model amplitude is a product of 2n factors (ancilla factors are 1
  // when their control bit is 0). Prefix/suffix products give the product of
  // all other factors without dividing.
  std::vector<Complex> factor(gates), prefix(gates + 1), suffix(gates + 1);
  std::vector<std::array<Complex, 4>> dfactor(gates);
  const std::size_t dim = target_.size();
  for (std::size_t x = 0; x < dim; ++x) {
    for (int i = 0; i < n; ++i) {
      const bool bit = data_bit(x, i, n) == 1;
      const auto &dg = local[i];
      factor[i] = bit ? dg.b : dg.a;
      dfactor[i] = bit ? dg.db : dg.da;
      const auto &ag = local[n + i];
      if (bit) {
        factor[n + i] = ag.a + ag.b;
        for (int k = 0; k < per_gate; ++k) dfactor[n + i][k] = ag.da[k] + ag.db[k];
      } else {
        factor[n + i] = 1.0;
        dfactor[n + i].fill(0.0);
      }
    }
    prefix[0] = 1.0;
    for (int t = 0; t < gates; ++t) prefix[t + 1] = prefix[t] * factor[t];
    suffix[gates] = 1.0;
    for (int t = gates - 1; t >= 0; --t) suffix[t] = suffix[t + 1] * factor[t];

    for (int t = 0; t < gates; ++t) {
      const Complex others = prefix[t] * suffix[t + 1];
      for (int k = 0; k < per_gate; ++k) {
        const Complex d = others * dfactor[t][k];
        jac(2 * x, t * per_gate + k) = d.real();
        jac(2 * x + 1, t * per_gate + k) = d.imag();
      }
    }
  }

  if (parametrization_.has_unitarity_rows()) {
    const double w = parametrization_.unitarity_weight;
    const auto base = static_cast<Eigen::Index>(2 * dim);
    for (int t = 0; t < gates; ++t) {
      const double *p = params.data() + t * per_gate;
      const double ar = p[0], ai = p[1], br = p[2], bi = p[3];
      const Eigen::Index row = base + 2 * t;
      const Eigen::Index col = t * per_gate;
      jac(row, col + 0) = 2.0 * w * ar;
      jac(row, col + 1) = 2.0 * w * ai;
      jac(row, col + 2) = 2.0 * w * br;
      jac(row, col + 3) = 2.0 * w * bi;
      // d_orth = 2 (ar br + ai bi)
      jac(row + 1, col + 0) = 2.0 * w * br;
      jac(row + 1, col + 1) = 2.0 * w * bi;
      jac(row + 1, col + 2) = 2.0 * w * ar;
      jac(row + 1, col + 3) = 2.0 * w * ai;
    }
  }
  return jac;
}

Eigen::MatrixXd ResidualSystem::jacobian_fd(const ParameterVector &params,
                                            double step) const {
  check_params(params);
  return central_difference_jacobian(
      [this](const Eigen::VectorXd &p) { return residuals(p); }, params, step);
}

}  // namespace pnegprep
