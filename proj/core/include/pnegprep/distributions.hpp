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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pnegprep/equations.hpp"

namespace pnegprep {

enum class Family {
  EqualReal,
  EqualComplex,
  Prime,
  Decreasing,
  Increasing,
  Even,
  Odd,
  RandomComplex,
  RandomReal,
};

struct DistributionSpec {
  Family family = Family::EqualReal;
  int n = 1;
  std::uint64_t rng_seed = 0;  ///< random families only

  friend bool operator==(const DistributionSpec &,
                         const DistributionSpec &) = default;
};

/// Kebab-case name, e.g. "equal-complex".
std::string_view family_name(Family family);
/// Accepts family_name() spellings; "equal" is EqualReal and "random" is
/// RandomComplex.
std::optional<Family> parse_family(std::string_view name);
const std::vector<Family> &all_families();

/// Ascending primes below limit.
/// @throws std::invalid_argument if limit < 2
std::vector<int> primes_below(int limit);

/**
 * Target amplitudes for a family. Decreasing and Increasing are left
 * unnormalized (squared norm 1 - 2^{-2^n}); every other family has unit norm.
 * EqualComplex uses a fixed sign pattern that is only defined for n = 3;
 * other sizes fall back to EqualReal (see generation_note).
 *
 * @throws std::invalid_argument for Prime with n < 2 or n out of range
 */
TargetState generate(const DistributionSpec &spec);

/// Human-readable caveat about a spec, if any.
std::optional<std::string> generation_note(const DistributionSpec &spec);

}  // namespace pnegprep
