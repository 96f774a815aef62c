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

#include "pnegprep/distributions.hpp"

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

namespace pnegprep {

namespace {

struct FamilyName {
  Family family;
  std::string_view name;
};

constexpr std::array<FamilyName, 9> kNames{{
    {Family::EqualReal, "equal-real"},
    {Family::EqualComplex, "equal-complex"},
    {Family::Prime, "prime"},
    {Family::Decreasing, "decreasing"},
    {Family::Increasing, "increasing"},
    {Family::Even, "even"},
    {Family::Odd, "odd"},
    {Family::RandomComplex, "random-complex"},
    {Family::RandomReal, "random-real"},
}};

// Sign pattern of the 3-qubit equal-magnitude complex state, in units of
// 0.25: (re, im) per basis state.
constexpr std::array<std::array<double, 2>, 8> kEqualComplexSigns{{
    {-1, 1}, {1, 1}, {1, 1}, {1, -1}, {1, 1}, {1, -1}, {1, -1}, {-1, -1},
}};

}  // namespace

std::string_view family_name(Family family) {
  for (const auto &entry : kNames) {
    if (entry.family == family) return entry.name;
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  if (name == "equal") return Family::EqualReal;
  if (name == "random") return Family::RandomComplex;
  for (const auto &entry : kNames) {
    if (entry.name == name) return entry.family;
  }
  return std::nullopt;
}

const std::vector<Family> &all_families() {
  static const std::vector<Family> families = [] {
    std::vector<Family> out;
    for (const auto &entry : kNames) out.push_back(entry.family);
    return out;
  }();
  return families;
}

std::vector<int> primes_below(int limit) {
  if (limit < 2) throw std::invalid_argument("primes_below needs limit >= 2");
  std::vector<bool> composite(static_cast<std::size_t>(limit), false);
  std::vector<int> primes;
  for (int i = 2; i < limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (long long j = static_cast<long long>(i) * i; j < limit; j += i) {
      composite[static_cast<std::size_t>(j)] = true;
    }
  }
  return primes;
}

TargetState generate(const DistributionSpec &spec) {
  const int n = spec.n;
  if (n < 1 || n > kMaxDataQubits) {
    throw std::invalid_argument("distribution qubit count out of range");
  }
  const std::size_t dim = std::size_t{1} << n;
  std::vector<Complex> amps(dim, Complex{0.0, 0.0});
  const double uniform = 1.0 / std::sqrt(static_cast<double>(dim));

  switch (spec.family) {
    case Family::EqualReal:
      std::fill(amps.begin(), amps.end(), Complex{uniform, 0.0});
      break;
    case Family::EqualComplex:
      if (n == 3) {
        for (std::size_t i = 0; i < dim; ++i) {
          amps[i] = 0.25 * Complex{kEqualComplexSigns[i][0], kEqualComplexSigns[i][1]};
        }
      } else {
        std::fill(amps.begin(), amps.end(), Complex{uniform, 0.0});
      }
      break;
    case Family::Prime: {
      if (n < 2) throw std::invalid_argument("prime state needs n >= 2");
      const auto primes = primes_below(static_cast<int>(dim));
      const double value = 1.0 / std::sqrt(static_cast<double>(primes.size()));
      for (int p : primes) amps[static_cast<std::size_t>(p)] = value;
      break;
    }
    case Family::Decreasing:
      for (std::size_t i = 0; i < dim; ++i) {
        amps[i] = std::exp2(-0.5 * static_cast<double>(i + 1));
      }
      break;
    case Family::Increasing:
      for (std::size_t i = 0; i < dim; ++i) {
        amps[i] = std::exp2(-0.5 * static_cast<double>(dim - i));
      }
      break;
    case Family::Even:
    case Family::Odd: {
      const double value = std::sqrt(2.0 / static_cast<double>(dim));
      const std::size_t parity = spec.family == Family::Even ? 0 : 1;
      for (std::size_t i = parity; i < dim; i += 2) amps[i] = value;
      break;
    }
    case Family::RandomComplex:
    case Family::RandomReal: {
      std::mt19937_64 rng(spec.rng_seed);
      std::normal_distribution<double> normal(0.0, 1.0);
      const bool complex = spec.family == Family::RandomComplex;
      for (auto &z : amps) {
        const double re = normal(rng);
        const double im = complex ? normal(rng) : 0.0;
        z = {re, im};
      }
      return TargetState(n, std::move(amps), /*normalize=*/true);
    }
  }
  return TargetState(n, std::move(amps));
}

std::optional<std::string> generation_note(const DistributionSpec &spec) {
  if (spec.family == Family::EqualComplex && spec.n != 3) {
    return "equal-complex phases are only tabulated for 3 qubits; using the "
           "real equal superposition instead";
  }
  return std::nullopt;
}

}  // namespace pnegprep
