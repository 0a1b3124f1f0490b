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

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <complex>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <vector>

#include "catsampler/errors.hpp"

namespace catsampler {

/// Hard size cap for the inclusion-exclusion permanent (2^30 subset steps).
inline constexpr int kPermanentMaxDim = 30;
/// Size cap for the factorial-time reference permanent.
inline constexpr int kPermanentNaiveMaxDim = 9;

namespace detail {

inline void require_square(const Eigen::MatrixXcd& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream msg;
    msg << what << " requires a square matrix, got " << m.rows() << "x"
        << m.cols();
    throw NonSquareError(msg.str());
  }
}

}  // namespace detail

/// Permanent by Ryser's inclusion-exclusion over column subsets.
///
/// Subsets are visited in Gray-code order so each step updates the running
/// row sums by a single column, giving O(2^n · n) arithmetic. The iteration
/// order is fixed, so the result is bitwise reproducible for a given input.
/// Accepts n = 0 (empty product, permanent 1) up to n = 30.
inline std::complex<double> permanent(const Eigen::MatrixXcd& m) {
  detail::require_square(m, "permanent");
  const int n = static_cast<int>(m.rows());
  if (n > kPermanentMaxDim) {
    std::ostringstream msg;
    msg << "permanent dimension " << n << " exceeds cap " << kPermanentMaxDim;
    throw TooLargeError(msg.str());
  }
  if (!m.allFinite()) throw NonFiniteError("permanent input has NaN or Inf");
  if (n == 0) return {1.0, 0.0};

  std::vector<std::complex<double>> row_sums(n, {0.0, 0.0});
  std::complex<double> total{0.0, 0.0};
  int subset_parity = 1;  // (-1)^|subset|, updated as columns toggle
  const std::uint64_t steps = std::uint64_t{1} << n;
  std::uint64_t gray = 0;
  for (std::uint64_t k = 1; k < steps; ++k) {
    const int col = std::countr_zero(k);
    const std::uint64_t bit = std::uint64_t{1} << col;
    gray ^= bit;
    const double sign = (gray & bit) ? 1.0 : -1.0;
    for (int r = 0; r < n; ++r) row_sums[r] += sign * m(r, col);
    subset_parity = -subset_parity;

    std::complex<double> prod{1.0, 0.0};
    for (int r = 0; r < n; ++r) prod *= row_sums[r];
    total += static_cast<double>(subset_parity) * prod;
  }
  const double overall = (n % 2 == 0) ? 1.0 : -1.0;
  return overall * total;
}

/// Definitional permanent: sum over all n! permutations. Test oracle only;
/// capped at n = 9.
inline std::complex<double> permanent_naive(const Eigen::MatrixXcd& m) {
  detail::require_square(m, "permanent_naive");
  const int n = static_cast<int>(m.rows());
  if (n > kPermanentNaiveMaxDim) {
    std::ostringstream msg;
    msg << "permanent_naive dimension " << n << " exceeds cap "
        << kPermanentNaiveMaxDim;
    throw TooLargeError(msg.str());
  }
  if (n == 0) return {1.0, 0.0};
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::complex<double> total{0.0, 0.0};
  do {
    std::complex<double> prod{1.0, 0.0};
    for (int r = 0; r < n; ++r) prod *= m(r, perm[r]);
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace catsampler
