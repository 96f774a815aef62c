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

#include "pnegprep/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pnegprep {

std::vector<double> probabilities(std::span<const Complex> amps) {
  std::vector<double> p(amps.size());
  std::transform(amps.begin(), amps.end(), p.begin(),
                 [](const Complex &z) { return std::norm(z); });
  return p;
}

double relative_error(std::span<const double> prepared,
                      std::span<const double> acquired) {
  if (prepared.size() != acquired.size()) {
    throw std::invalid_argument("relative error needs equal lengths");
  }
  double sum = 0.0;
  std::size_t supported = 0;
  for (std::size_t i = 0; i < prepared.size(); ++i) {
    if (prepared[i] <= kSupportEpsilon) continue;
    sum += std::abs(prepared[i] - acquired[i]) / prepared[i];
    ++supported;
  }
  if (supported == 0) {
    throw std::invalid_argument("prepared probabilities are all zero");
  }
  return sum / static_cast<double>(supported);
}

double fidelity(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw std::invalid_argument("fidelity needs equal lengths");
  Complex overlap{0.0, 0.0};
  double na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    overlap += std::conj(a[i]) * b[i];
    na += std::norm(a[i]);
    nb += std::norm(b[i]);
  }
  if (na == 0.0 || nb == 0.0) throw std::invalid_argument("fidelity of a zero vector");
  return std::norm(overlap) / (na * nb);
}

ComparisonReport compare(const TargetState &prepared,
                         const DataAmplitudes &acquired) {
  if (prepared.n() != acquired.n || prepared.size() != acquired.values.size()) {
    throw std::invalid_argument("prepared and acquired sizes differ");
  }
  ComparisonReport report;
  report.prepared_probs = probabilities(prepared.amplitudes());
  report.acquired_probs = probabilities(acquired.values);
  report.relative_error = relative_error(report.prepared_probs, report.acquired_probs);

  double acquired_norm = 0.0;
  for (std::size_t i = 0; i < prepared.size(); ++i) {
    acquired_norm += report.acquired_probs[i];
    report.max_abs_amp_diff =
        std::max(report.max_abs_amp_diff,
                 std::abs(prepared.amplitudes()[i] - acquired.values[i]));
    if (report.prepared_probs[i] <= kSupportEpsilon) {
      report.zero_support_leakage =
          std::max(report.zero_support_leakage, report.acquired_probs[i]);
    }
  }
  report.fidelity =
      acquired_norm > 0.0 ? fidelity(prepared.amplitudes(), acquired.values) : 0.0;
  return report;
}

}  // namespace pnegprep
