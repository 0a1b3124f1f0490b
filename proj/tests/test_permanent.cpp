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

#include "catsampler/permanent.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "catsampler/rng.hpp"
#include "catsampler/unitary.hpp"

using namespace catsampler;

namespace {

Eigen::MatrixXcd random_complex(int n, SeededRng& rng) {
  Eigen::MatrixXcd m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = complex_normal(rng);
  return m;
}

}  // namespace

TEST_CASE("permanent closed-form values") {
  CHECK(permanent(Eigen::MatrixXcd::Identity(3, 3)) == Complex(1.0, 0.0));
  CHECK(permanent_naive(Eigen::MatrixXcd::Identity(2, 2)) == Complex(1.0, 0.0));

  Eigen::MatrixXcd ones(2, 2);
  ones << 1.0, 1.0, 1.0, 1.0;
  CHECK(permanent(ones) == Complex(2.0, 0.0));

  CHECK(permanent_naive(Eigen::MatrixXcd::Zero(2, 2)) == Complex(0.0, 0.0));

  CHECK(std::abs(permanent(hadamard2().matrix())) < 1e-15);
  CHECK(std::abs(permanent_naive(hadamard2().matrix())) < 1e-15);

  // Empty matrix: empty permutation sum contributes the empty product.
  CHECK(permanent(Eigen::MatrixXcd(0, 0)) == Complex(1.0, 0.0));
  CHECK(permanent_naive(Eigen::MatrixXcd(0, 0)) == Complex(1.0, 0.0));
}

TEST_CASE("permanent agrees with the factorial-time oracle") {
  SeededRng rng(20260809);
  for (int n = 2; n <= 8; ++n) {
    for (int rep = 0; rep < 100; ++rep) {
      const Eigen::MatrixXcd m = random_complex(n, rng);
      const Complex fast = permanent(m);
      const Complex slow = permanent_naive(m);
      const double scale = std::max(std::abs(slow), 1e-30);
      CHECK(std::abs(fast - slow) / scale <= 1e-9);
    }
  }
}

TEST_CASE("permanent is multilinear in rows") {
  SeededRng rng(77);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 3 + static_cast<int>(rng() % 4);
    const Eigen::MatrixXcd m = random_complex(n, rng);
    const Complex c = complex_normal(rng);
    const int row = static_cast<int>(rng() % n);
    Eigen::MatrixXcd scaled = m;
    scaled.row(row) *= c;
    const Complex lhs = permanent(scaled);
    const Complex rhs = c * permanent(m);
    CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("permanent is symmetric under transposition") {
  SeededRng rng(501);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const Eigen::MatrixXcd m = random_complex(n, rng);
    const Complex a = permanent(m);
    const Complex b = permanent(m.transpose());
    CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("permanent size caps and input checks") {
  CHECK_THROWS_AS(permanent(Eigen::MatrixXcd::Identity(31, 31)),
                  TooLargeError);
  CHECK_THROWS_AS(permanent_naive(Eigen::MatrixXcd::Identity(10, 10)),
                  TooLargeError);
  CHECK_THROWS_AS(permanent(Eigen::MatrixXcd::Identity(2, 3)),
                  NonSquareError);
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2);
  bad(1, 1) = Complex(1.0 / 0.0, 0.0);
  CHECK_THROWS_AS(permanent(bad), NonFiniteError);
}
