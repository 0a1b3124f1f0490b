// Copyright 2026 The catsampler authors
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

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <utility>

namespace catsampler {

// Every seeded operation in the library draws from std::mt19937_64 seeded
// directly with the user-supplied value. Uniform and Gaussian variates are
// derived here by fixed formulas (top-53-bit mantissa, Box-Muller) instead of
// std::*_distribution, whose algorithms the standard leaves unspecified; a
// seed therefore pins the exact variate sequence.
using SeededRng = std::mt19937_64;

/// Uniform double in [0, 1), using the top 53 bits of one generator draw.
inline double uniform_unit(SeededRng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Pair of independent standard normal variates (Box-Muller).
inline std::pair<double, double> normal_pair(SeededRng& rng) {
  // First uniform shifted into (0, 1] so the logarithm stays finite.
  const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * 3.141592653589793238462643383279502884 * u2;
  return {r * std::cos(theta), r * std::sin(theta)};
}

/// Complex Gaussian with independent N(0,1) real and imaginary parts.
inline std::complex<double> complex_normal(SeededRng& rng) {
  auto [re, im] = normal_pair(rng);
  return {re, im};
}

}  // namespace catsampler
