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

#include <random>

#include <benchmark/benchmark.h>

#include "pnegprep/circuit.hpp"
#include "pnegprep/distributions.hpp"
#include "pnegprep/solver.hpp"

using namespace pnegprep;

namespace {

CircuitLayout random_layout(int n) {
  std::mt19937_64 rng(n);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<SymmetricGate> data, ancilla;
  for (int i = 0; i < n; ++i) data.push_back(gate_from_angles({u(rng), u(rng)}));
  for (int i = 0; i < n; ++i) ancilla.push_back(gate_from_angles({u(rng), u(rng)}));
  return CircuitLayout(std::move(data), std::move(ancilla));
}

void BM_ClosedForm(benchmark::State &state) {
  const auto layout = random_layout(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(closed_form_amplitudes(layout));
}
BENCHMARK(BM_ClosedForm)->DenseRange(2, 12, 2);

void BM_SimulateFull(benchmark::State &state) {
  const auto layout = random_layout(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(simulate_full(layout));
}
BENCHMARK(BM_SimulateFull)->DenseRange(2, 12, 2);

void BM_Jacobian(benchmark::State &state) {
  const int n = static_cast<int>(state.range(0));
  const ResidualSystem system(generate({Family::RandomComplex, n, 1}), {});
  const ParameterVector p = ParameterVector::Constant(system.parameter_count(), 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(system.jacobian_analytic(p));
}
BENCHMARK(BM_Jacobian)->DenseRange(2, 8, 2);

void BM_Multistart(benchmark::State &state) {
  const auto target = generate({Family::Decreasing, static_cast<int>(state.range(0)), 0});
  for (auto _ : state) benchmark::DoNotOptimize(multistart_solve(target, {}, {}));
}
BENCHMARK(BM_Multistart)->DenseRange(2, 6, 1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
