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

#include "catsampler/experiments.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

using namespace catsampler;

TEST_CASE("hom_check at small amplitude") {
  const HomReport r = hom_check(1e-3);
  CHECK(r.p11 <= 1e-12);
  CHECK(r.dev20 <= 1e-4);
  CHECK(r.dev02 <= 1e-4);
  CHECK(r.signs_ok);
  CHECK(r.gamma20.real() > 0.0);
  CHECK(r.gamma02.real() < 0.0);
  CHECK(r.captured_mass >= 1.0 - 1e-12);

  CHECK_THROWS_AS(hom_check(1e-7), ValidationError);
  CHECK_THROWS_AS(hom_check(0.2), ValidationError);
}

TEST_CASE("hom_check deviation decays at least quadratically") {
  // The bunched-probability deviation falls as the fourth power of the
  // amplitude (the quadratic corrections cancel), which in particular
  // satisfies the quadratic upper bound: halving alpha at least halves a
  // quartered deviation.
  const double a = 0.05;
  const double dev_full = hom_check(a).dev20;
  const double dev_half = hom_check(a / 2).dev20;
  REQUIRE(dev_full > 1e-13);  // comfortably above rounding noise
  CHECK(dev_half <= dev_full / 2.0);
  // Document the measured quartic decay.
  const double ratio = dev_full / dev_half;
  CHECK(ratio >= 8.0);
  CHECK(ratio <= 32.0);
}

TEST_CASE("fock_reduction_check") {
  SECTION("small amplitudes sit within the quadratic bound") {
    const ReductionReport r = fock_reduction_check(2, 4, 1e-3, 7);
    CHECK(r.max_deviation <= 1e-4);
    CHECK(r.fitted_c <= 100.0);
  }

  SECTION("the empty register is exact") {
    const ReductionReport r = fock_reduction_check(0, 3, 1e-3, 1);
    CHECK(r.max_deviation == 0.0);
  }

  SECTION("desk-scale preconditions") {
    CHECK_THROWS_AS(fock_reduction_check(4, 6, 1e-3, 1), ValidationError);
    CHECK_THROWS_AS(fock_reduction_check(2, 7, 1e-3, 1), ValidationError);
    CHECK_THROWS_AS(fock_reduction_check(2, 4, 0.5, 1), ValidationError);
    CHECK_THROWS_AS(fock_reduction_check(3, 2, 1e-3, 1), ValidationError);
  }

  SECTION("measured decay between 1e-2 and 1e-3 is quartic in alpha") {
    const ReductionSweep sweep =
        fock_reduction_sweep(2, 4, {1e-2, 1e-3}, 11);
    REQUIRE(sweep.points.size() == 2);
    // Both points well above the double-precision noise floor.
    CHECK(sweep.points[0].max_deviation > 1e-11);
    CHECK(sweep.points[1].max_deviation > 1e-15);
    // Deviation shrinks at least a hundredfold per decade (the quadratic
    // claim), and in fact ten-thousandfold (quartic).
    const double shrink =
        sweep.points[0].max_deviation / sweep.points[1].max_deviation;
    CHECK(shrink >= 100.0);
    CHECK(sweep.slope_vs_alpha == Catch::Approx(4.0).margin(0.3));
    CHECK(sweep.slope_vs_alpha_sq == Catch::Approx(2.0).margin(0.15));
  }
}

TEST_CASE("hardness_bound values") {
  // 2 / (e - 1/e) frozen from a 50-digit evaluation.
  const double p11 = hardness_bound(1, 1.0).probability;
  CHECK(std::abs(p11 - 0.85091812823932155) <= 1e-12);
  const double p21 = hardness_bound(2, 1.0).probability;
  CHECK(std::abs(p21 - 0.72406166096631047) <= 1e-12);

  for (int n : {1, 10, 100}) {
    const HardnessBoundValue v = hardness_bound(n, 1e-8);
    CHECK(std::abs(v.probability - 1.0) <= 1e-12);
    CHECK_FALSE(v.underflow);
  }

  CHECK_THROWS_AS(hardness_bound(0, 1.0), ValidationError);
  CHECK_THROWS_AS(hardness_bound(1, 0.0), ValidationError);
  CHECK_THROWS_AS(hardness_bound(1, -1.0), ValidationError);
}

TEST_CASE("hardness_bound properties") {
  SECTION("power identity") {
    for (double a : {0.3, 1.0, 2.0}) {
      const double base = hardness_bound(1, a).probability;
      for (int n : {2, 5, 17}) {
        const double direct = hardness_bound(n, a).probability;
        CHECK(std::abs(direct - std::pow(base, n)) <= 1e-12);
      }
    }
  }

  SECTION("strictly decreasing in alpha, limit 1 at zero") {
    double prev = 1.0 + 1e-15;
    for (double a = 0.05; a <= 3.0 + 1e-9; a += 0.05) {
      const double p = hardness_bound(3, a).probability;
      CHECK(p < prev);
      prev = p;
    }
    CHECK(hardness_bound(3, 1e-10).probability == 1.0);
  }

  SECTION("deep tails underflow to an exact flagged zero") {
    const HardnessBoundValue v = hardness_bound(200, 3.0);
    CHECK(v.probability == 0.0);
    CHECK(v.underflow);
  }
}

TEST_CASE("bound_check") {
  SECTION("vanishing amplitude satisfies any sane polynomial") {
    for (int n : {1, 10, 100}) {
      for (double k : {0.0, 1.0, 2.0}) {
        // c slightly below 1 keeps the n = 1, k = 0 case off the exact
        // P = threshold = 1 boundary.
        const HardnessBoundReport r = bound_check(n, 1e-8, 0.999999, k);
        CHECK(r.satisfied);
      }
    }
  }

  SECTION("the exponential eventually loses to any polynomial") {
    // alpha = 0.5, threshold n^-2: the product n^2 * P(1)^n rises until
    // n ~ 192 and then falls below 1 for good near n ~ 1460.
    const double c = 1.0, k = 2.0;
    CHECK(bound_check(500, 0.5, c, k).satisfied);
    int last_satisfied = 0;
    for (int n = 1; n <= 4000; ++n) {
      if (bound_check(n, 0.5, c, k).satisfied) last_satisfied = n;
    }
    CHECK(last_satisfied > 500);
    CHECK(last_satisfied < 3000);
    // Once lost, never recovered.
    for (int n = last_satisfied + 1; n <= 4000; n += 97) {
      CHECK_FALSE(bound_check(n, 0.5, c, k).satisfied);
    }
  }

  SECTION("probability decreases with alpha at fixed n") {
    double prev = 2.0;
    for (double a : {0.1, 0.4, 0.8, 1.5, 2.5}) {
      const HardnessBoundReport r = bound_check(4, a, 1.0, 1.0);
      CHECK(r.probability < prev);
      prev = r.probability;
    }
  }

  CHECK_THROWS_AS(bound_check(1, 1.0, 0.0, 1.0), ValidationError);
  CHECK_THROWS_AS(bound_check(1, 1.0, 1.0, -1.0), ValidationError);
}
