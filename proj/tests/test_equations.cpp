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

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "pnegprep/equations.hpp"
#include "test_support.hpp"

using namespace pnegprep;

namespace {

const Parametrization kAngles{Parametrization::Kind::Angles, 1.0};
const Parametrization kRaw{Parametrization::Kind::RawEntries, 1.0};

TargetState uniform_target(int n) {
  const double v = 1.0 / std::sqrt(double(std::size_t{1} << n));
  return TargetState(n, std::vector<Complex>(std::size_t{1} << n, v));
}

}  // namespace

TEST_CASE("target validation") {
  CHECK_THROWS_AS(TargetState(2, {1.0, 0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(TargetState(1, {2.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(TargetState(1, {0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(TargetState(1, {0.0, 0.0}, true), std::invalid_argument);
  CHECK_THROWS_AS(TargetState(1, {Complex{NAN, 0.0}, 0.0}), std::invalid_argument);
  CHECK_NOTHROW(TargetState(1, {0.5, 0.0}));

  const TargetState t(1, {3.0, 4.0}, true);
  CHECK(t.normalized());
  CHECK(t.amplitudes()[0].real() == doctest::Approx(0.6));
  CHECK(t.squared_norm() == doctest::Approx(1.0));
}

TEST_CASE("residual and parameter counts") {
  const ResidualSystem angles(uniform_target(3), kAngles);
  CHECK(angles.residual_count() == 16);
  CHECK(angles.parameter_count() == 12);

  const ResidualSystem raw(uniform_target(3), kRaw);
  CHECK(raw.residual_count() == 16 + 12);
  CHECK(raw.parameter_count() == 24);

  const ResidualSystem unweighted(uniform_target(3), {Parametrization::Kind::RawEntries, 0.0});
  CHECK(unweighted.residual_count() == 16);
}

TEST_CASE("decode examples") {
  SUBCASE("zero angles give the identity everywhere") {
    const auto layout = decode(ParameterVector::Zero(8), kAngles, 2);
    for (int t = 0; t < 4; ++t) CHECK(layout.gate(t) == kIdentityGate);
  }
  SUBCASE("theta = -pi/2 gives X up to phase") {
    ParameterVector p = ParameterVector::Zero(4);
    p[1] = -std::numbers::pi / 2;
    const auto layout = decode(p, kAngles, 1);
    CHECK(std::abs(layout.gate(0).a()) <= 1e-15);
    CHECK(std::abs(layout.gate(0).b() - Complex{0.0, -1.0}) <= 1e-15);
  }
  SUBCASE("raw entries are read component by component") {
    ParameterVector p(8);
    p << 1, 2, 3, 4, 5, 6, 7, 8;
    const auto layout = decode(p, kRaw, 1);
    CHECK(layout.gate(0).a() == Complex{1, 2});
    CHECK(layout.gate(0).b() == Complex{3, 4});
    CHECK(layout.gate(1).a() == Complex{5, 6});
    CHECK(layout.gate(1).b() == Complex{7, 8});
  }
  CHECK_THROWS_AS(decode(ParameterVector::Zero(7), kAngles, 2), std::invalid_argument);
}

TEST_CASE("encode inverts decode") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 50; ++k) {
    const auto layout = testing::random_unitary_layout(3, rng);
    CHECK(decode(encode(layout, kAngles), kAngles, 3).max_unitarity_residual() <= 1e-12);
    const auto back = decode(encode(layout, kAngles), kAngles, 3);
    for (int t = 0; t < 6; ++t) {
      CHECK(std::abs(back.gate(t).a() - layout.gate(t).a()) <= 1e-12);
      CHECK(std::abs(back.gate(t).b() - layout.gate(t).b()) <= 1e-12);
    }
    const auto raw = testing::random_raw_layout(2, rng);
    CHECK(decode(encode(raw, kRaw), kRaw, 2) == raw);
  }
  CHECK_THROWS_AS(encode(testing::random_raw_layout(2, rng), kAngles), std::invalid_argument);
}

TEST_CASE("residuals at an exact solution vanish") {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 5; ++n) {
    const auto params = testing::random_params(4 * n, rng);
    const auto amps = closed_form_amplitudes(decode(params, kAngles, n)).values;
    const ResidualSystem system(TargetState(n, amps), kAngles);
    CHECK(system.residuals(params).lpNorm<Eigen::Infinity>() <= 1e-13);
  }
}

TEST_CASE("residual layout is interleaved real and imaginary parts") {
  const ResidualSystem system(TargetState(1, {Complex{0.6, 0.0}, Complex{0.0, 0.8}}), kAngles);
  const auto r = system.residuals(ParameterVector::Zero(4));
  // Identity gates give model (1, 0).
  CHECK(r[0] == doctest::Approx(0.4));
  CHECK(r[1] == doctest::Approx(0.0));
  CHECK(r[2] == doctest::Approx(0.0));
  CHECK(r[3] == doctest::Approx(-0.8));
}

TEST_CASE("raw unitarity rows carry the weighted residuals") {
  const double w = 2.5;
  const ResidualSystem system(uniform_target(1), {Parametrization::Kind::RawEntries, w});
  ParameterVector p(8);
  p << 1, 0, 1, 0, 1, 0, 0, 0;
  const auto r = system.residuals(p);
  const auto g0 = unitarity_residuals(gate_from_entries({1, 0}, {1, 0}));
  REQUIRE(r.size() == 8);
  CHECK(r[4] == doctest::Approx(w * g0.d_norm));
  CHECK(r[5] == doctest::Approx(w * g0.d_orth));
  CHECK(r[6] == doctest::Approx(0.0));
  CHECK(r[7] == doctest::Approx(0.0));
}

TEST_CASE("analytic jacobian matches central differences") {
  std::mt19937_64 rng(13);
  for (const auto &param : {kAngles, kRaw}) {
    for (int k = 0; k < 100; ++k) {
      const int n = 1 + k % 4;
      const int count = 2 * n * param.parameters_per_gate();
      std::vector<Complex> t(std::size_t{1} << n);
      for (auto &z : t) z = testing::random_complex(rng);
      const ResidualSystem system(TargetState(n, t, true), param);
      const auto p = testing::random_params(count, rng);
      const Eigen::MatrixXd ja = system.jacobian_analytic(p);
      const Eigen::MatrixXd jf = system.jacobian_fd(p);
      const double scale = std::max(1.0, ja.lpNorm<Eigen::Infinity>());
      CHECK((ja - jf).lpNorm<Eigen::Infinity>() <= 1e-7 * scale);
    }
  }
}

TEST_CASE("finite-difference error shrinks quadratically with the step") {
  std::mt19937_64 rng(19);
  const ResidualSystem system(uniform_target(3), kAngles);
  const auto p = testing::random_params(12, rng);
  const Eigen::MatrixXd ja = system.jacobian_analytic(p);
  const double coarse = (system.jacobian_fd(p, 1e-2) - ja).lpNorm<Eigen::Infinity>();
  const double fine = (system.jacobian_fd(p, 5e-3) - ja).lpNorm<Eigen::Infinity>();
  // Central differences: halving the step quarters the error.
  CHECK(fine / coarse == doctest::Approx(0.25).epsilon(0.05));
}

TEST_CASE("raw jacobian column follows the product rule") {
  // d a_x / d Re(a_0) for x with x_0 = 0 is a_x / a_0.
  std::mt19937_64 rng(23);
  const int n = 2;
  const ResidualSystem system(uniform_target(n), {Parametrization::Kind::RawEntries, 0.0});
  const auto p = testing::random_params(16, rng);
  const auto layout = decode(p, system.parametrization(), n);
  const auto amps = closed_form_amplitudes(layout).values;
  const Eigen::MatrixXd j = system.jacobian_analytic(p);
  for (std::size_t x = 0; x < 2; ++x) {
    const Complex d = amps[x] / layout.gate(0).a();
    CHECK(j(2 * x, 0) == doctest::Approx(d.real()));
    CHECK(j(2 * x + 1, 0) == doctest::Approx(d.imag()));
    CHECK(j(2 * x, 1) == doctest::Approx(-d.imag()));
    CHECK(j(2 * x + 1, 1) == doctest::Approx(d.real()));
  }
  for (std::size_t x = 2; x < 4; ++x) {
    CHECK(j(2 * x, 0) == 0.0);
    CHECK(j(2 * x + 1, 0) == 0.0);
  }
}

TEST_CASE("central differences on a known function") {
  const ResidualFunction f = [](const Eigen::VectorXd &x) {
    Eigen::VectorXd r(2);
    r << x[0] * x[1], std::sin(x[0]);
    return r;
  };
  Eigen::VectorXd x(2);
  x << 0.3, -1.2;
  const auto j = central_difference_jacobian(f, x);
  CHECK(j(0, 0) == doctest::Approx(-1.2));
  CHECK(j(0, 1) == doctest::Approx(0.3));
  CHECK(j(1, 0) == doctest::Approx(std::cos(0.3)));
  CHECK(j(1, 1) == doctest::Approx(0.0));
  CHECK_THROWS_AS(central_difference_jacobian(f, x, 0.0), std::invalid_argument);
}

TEST_CASE("residuals reject bad parameters") {
  const ResidualSystem system(uniform_target(2), kAngles);
  CHECK_THROWS_AS(system.residuals(ParameterVector::Zero(3)), std::invalid_argument);
  ParameterVector p = ParameterVector::Zero(8);
  p[2] = INFINITY;
  CHECK_THROWS_AS(system.residuals(p), std::invalid_argument);
}

TEST_CASE("printed worked-example amplitudes against the target") {
  // Four-decimal acquired amplitudes printed for the worked 3-qubit example.
  const TargetState target(3, {{-0.15, 0.51}, {0.44, 0.12}, {0.368, 0.111}, {0.09, -0.32},
                               {0.292, 0.092}, {0.076, -0.25}, {0.061, -0.213}, {-0.183, -0.051}});
  const std::vector<Complex> printed{{-0.1503, 0.5103}, {0.4404, 0.1222}, {0.3698, 0.1089},
                                     {0.0885, -0.3190}, {0.2918, 0.0900}, {0.0733, -0.2519},
                                     {0.0652, -0.2114}, {-0.1825, -0.0531}};
  double norm2 = 0.0;
  for (std::size_t x = 0; x < 8; ++x) norm2 += std::norm(printed[x] - target.amplitudes()[x]);
  // Worst component is 4.5e-3 and the 2-norm 7.5e-3, larger than rounding
  // to four decimals alone would give.
  CHECK(std::sqrt(norm2) == doctest::Approx(7.4753e-3).epsilon(1e-3));
  CHECK(std::sqrt(norm2) <= 1e-2);
}
