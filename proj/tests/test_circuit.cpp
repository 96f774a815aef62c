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

#include <Eigen/Dense>

#include "doctest.h"
#include "pnegprep/circuit.hpp"
#include "test_support.hpp"

using namespace pnegprep;
using testing::max_abs_diff;

namespace {

// Independent dense oracle: full (n+1)-qubit operators from Kronecker
// products, qubit 0 leftmost and the ancilla rightmost.
Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::MatrixXcd as_matrix(const SymmetricGate &g) {
  Eigen::MatrixXcd m(2, 2);
  m << g.a(), g.b(), g.b(), g.a();
  return m;
}

Eigen::MatrixXcd embed(int qubits, int position, const Eigen::MatrixXcd &op) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int q = 0; q < qubits; ++q) {
    out = kron(out, q == position ? op : Eigen::MatrixXcd::Identity(2, 2));
  }
  return out;
}

std::vector<Complex> dense_oracle(const CircuitLayout &layout) {
  const int n = layout.n();
  const int qubits = n + 1;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(Eigen::Index{1} << qubits);
  psi[0] = 1.0;
  for (int i = 0; i < n; ++i) psi = embed(qubits, i, as_matrix(layout.data_gates()[i])) * psi;
  Eigen::MatrixXcd p0(2, 2), p1(2, 2);
  p0 << 1, 0, 0, 0;
  p1 << 0, 0, 0, 1;
  for (int i = 0; i < n; ++i) {
    const Eigen::MatrixXcd off = embed(qubits, i, p0);
    Eigen::MatrixXcd on = Eigen::MatrixXcd::Identity(1, 1);
    for (int q = 0; q < qubits; ++q) {
      Eigen::MatrixXcd f = Eigen::MatrixXcd::Identity(2, 2);
      if (q == i) f = p1;
      if (q == n) f = as_matrix(layout.ancilla_gates()[i]);
      on = kron(on, f);
    }
    psi = (off + on) * psi;
  }
  return {psi.data(), psi.data() + psi.size()};
}

}  // namespace

TEST_CASE("layout validation") {
  CHECK_THROWS_AS(CircuitLayout({kIdentityGate}, {}), std::invalid_argument);
  CHECK_THROWS_AS(CircuitLayout({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(CircuitLayout::uniform(kMaxDataQubits + 1, kIdentityGate),
                  std::invalid_argument);
  const auto layout = CircuitLayout::uniform(3, gate_from_root(2.0));
  CHECK(layout.n() == 3);
  CHECK(layout.gate(5) == gate_from_root(2.0));
  CHECK_THROWS(layout.gate(6));
}

TEST_CASE("simulate_full examples") {
  SUBCASE("identity data gate never fires the control") {
    const CircuitLayout layout({kIdentityGate}, {gate_from_root(3.0)});
    const auto sv = simulate_full(layout);
    REQUIRE(sv.amplitudes.size() == 4);
    CHECK(sv.amplitudes[0] == Complex{1.0, 0.0});
    CHECK(std::abs(sv.amplitudes[1]) + std::abs(sv.amplitudes[2]) + std::abs(sv.amplitudes[3]) ==
          0.0);
  }
  SUBCASE("X then controlled X gives |11>") {
    const auto x = gate_from_root(1.0);
    const auto sv = simulate_full(CircuitLayout({x}, {x}));
    CHECK(std::abs(sv.amplitudes[3] - 1.0) <= 1e-15);
    CHECK(std::abs(sv.amplitudes[0]) + std::abs(sv.amplitudes[1]) + std::abs(sv.amplitudes[2]) ==
          0.0);
  }
  SUBCASE("all square-root gates match the dense oracle") {
    const auto layout = CircuitLayout::uniform(3, gate_from_root(2.0));
    const auto sv = simulate_full(layout);
    CHECK(max_abs_diff(sv.amplitudes, dense_oracle(layout)) <= 1e-12);
  }
  SUBCASE("non-unitary gates need the permissive flag") {
    const auto bad = gate_from_entries({1.0, 0.0}, {1.0, 0.0});
    const CircuitLayout layout({bad}, {kIdentityGate});
    CHECK_THROWS_AS(simulate_full(layout), std::invalid_argument);
    SimulateOptions options;
    options.permissive = true;
    CHECK_NOTHROW(simulate_full(layout, options));
  }
}

TEST_CASE("random layouts agree with the dense oracle") {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 4; ++n) {
    for (int k = 0; k < 10; ++k) {
      const auto layout = testing::random_unitary_layout(n, rng);
      CHECK(max_abs_diff(simulate_full(layout).amplitudes, dense_oracle(layout)) <= 1e-12);
    }
  }
}

TEST_CASE("summed ancilla amplitudes") {
  StateVector ground{2, {1.0, 0.0, 0.0, 0.0}};
  const auto g = summed_ancilla_amplitudes(ground);
  CHECK(g.n == 1);
  CHECK(g.values == std::vector<Complex>{1.0, 0.0});

  StateVector split{2, {0.0, 0.0, 0.5, 0.5}};
  CHECK(summed_ancilla_amplitudes(split).values == std::vector<Complex>{0.0, 1.0});

  CHECK_THROWS_AS(summed_ancilla_amplitudes(StateVector{1, {1.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("closed form agrees with full simulation") {
  std::mt19937_64 rng(17);
  for (int n = 1; n <= 6; ++n) {
    for (int k = 0; k < 20; ++k) {
      const auto layout = testing::random_unitary_layout(n, rng);
      const auto sim = summed_ancilla_amplitudes(simulate_full(layout));
      CHECK(max_abs_diff(closed_form_amplitudes(layout).values, sim.values) <= 1e-12);
    }
  }
  // Also without unitarity: both routes are linear in each gate.
  SimulateOptions permissive;
  permissive.permissive = true;
  for (int k = 0; k < 20; ++k) {
    const auto layout = testing::random_raw_layout(3, rng);
    const auto sim = summed_ancilla_amplitudes(simulate_full(layout, permissive));
    CHECK(max_abs_diff(closed_form_amplitudes(layout).values, sim.values) <= 1e-11);
  }
}

TEST_CASE("closed form examples") {
  SUBCASE("identity data gates") {
    const CircuitLayout layout(std::vector<SymmetricGate>(3, kIdentityGate),
                               std::vector<SymmetricGate>(3, gate_from_root(5.0)));
    const auto amps = closed_form_amplitudes(layout).values;
    CHECK(amps[0] == Complex{1.0, 0.0});
    for (std::size_t x = 1; x < amps.size(); ++x) CHECK(amps[x] == Complex{0.0, 0.0});
  }
  SUBCASE("one qubit, square-root gates") {
    const auto amps = closed_form_amplitudes(CircuitLayout::uniform(1, gate_from_root(2.0))).values;
    CHECK(std::abs(amps[0] - Complex{0.5, 0.5}) <= 1e-15);
    CHECK(std::abs(amps[1] - Complex{0.5, -0.5}) <= 1e-15);
  }
}

TEST_CASE("three-qubit closed form reproduces the explicit expansion") {
  // Gate K_t has entries (c_{2t-1}, c_{2t}); the worked three-qubit system
  // lists each amplitude in these symbols.
  std::mt19937_64 rng(29);
  for (int rep = 0; rep < 10; ++rep) {
    const auto layout = testing::random_raw_layout(3, rng);
    std::array<Complex, 13> c;
    for (int t = 0; t < 6; ++t) {
      c[2 * t + 1] = layout.gate(t).a();
      c[2 * t + 2] = layout.gate(t).b();
    }
    const std::array<Complex, 8> expected{
        c[1] * c[3] * c[5],
        c[1] * c[3] * c[6] * (c[11] + c[12]),
        c[1] * c[4] * c[5] * (c[9] + c[10]),
        c[1] * c[4] * c[6] * (c[9] * c[11] + c[9] * c[12] + c[10] * c[11] + c[10] * c[12]),
        c[2] * c[3] * c[5] * (c[7] + c[8]),
        c[2] * c[3] * c[6] * (c[7] * c[11] + c[7] * c[12] + c[8] * c[11] + c[8] * c[12]),
        c[2] * c[4] * c[5] * (c[7] * c[9] + c[7] * c[10] + c[8] * c[9] + c[8] * c[10]),
        c[2] * c[4] * c[6] *
            (c[7] * c[9] * c[11] + c[7] * c[10] * c[11] + c[7] * c[9] * c[12] +
             c[7] * c[10] * c[12] + c[8] * c[9] * c[11] + c[8] * c[10] * c[11] +
             c[8] * c[9] * c[12] + c[8] * c[10] * c[12]),
    };
    const auto amps = closed_form_amplitudes(layout).values;
    CHECK(max_abs_diff(amps, expected) <= 1e-12);
  }
}

TEST_CASE("marginal probabilities") {
  CHECK(marginal_probabilities(StateVector{2, {1.0, 0.0, 0.0, 0.0}}) ==
        std::vector<double>{1.0, 0.0});
  const auto p = marginal_probabilities(StateVector{2, {0.5, 0.5, 0.5, -0.5}});
  CHECK(p[0] == doctest::Approx(0.5));
  CHECK(p[1] == doctest::Approx(0.5));

  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    const auto sv = simulate_full(testing::random_unitary_layout(4, rng));
    double total = 0.0;
    for (double v : marginal_probabilities(sv)) {
      CHECK(v >= 0.0);
      total += v;
    }
    CHECK(std::abs(total - 1.0) <= 1e-10);
    CHECK(std::abs(sv.squared_norm() - 1.0) <= 1e-10);
  }
}

TEST_CASE("instruction trace shows n single and n controlled gates") {
  for (int n = 1; n <= 8; ++n) {
    int singles = 0, controlled = 0;
    SimulateOptions options;
    options.trace = [&](const GateInstruction &ins) {
      if (ins.kind == GateInstruction::Kind::Single) {
        ++singles;
        CHECK(ins.control == -1);
      } else {
        ++controlled;
        CHECK(ins.target == n);
        CHECK(ins.gate_index == n + ins.control);
      }
    };
    simulate_full(CircuitLayout::uniform(n, gate_from_root(3.0)), options);
    CHECK(singles == n);
    CHECK(controlled == n);
  }
}

TEST_CASE("ancilla gates are inert when their control bit is zero") {
  std::mt19937_64 rng(41);
  const int n = 3;
  const auto base = testing::random_unitary_layout(n, rng);
  for (int i = 0; i < n; ++i) {
    auto ancilla = base.ancilla_gates();
    ancilla[i] = gate_from_angles(testing::random_angles(rng));
    const CircuitLayout changed(base.data_gates(), ancilla);
    const auto before = simulate_full(base).amplitudes;
    const auto after = simulate_full(changed).amplitudes;
    for (std::size_t x = 0; x < (std::size_t{1} << n); ++x) {
      if (data_bit(x, i, n)) continue;
      CHECK(std::abs(before[2 * x] - after[2 * x]) <= 1e-14);
      CHECK(std::abs(before[2 * x + 1] - after[2 * x + 1]) <= 1e-14);
    }
  }
}
