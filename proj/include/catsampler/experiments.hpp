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
#include <functional>
#include <sstream>
#include <vector>

#include "catsampler/amplitudes.hpp"
#include "catsampler/cat_states.hpp"
#include "catsampler/sampler.hpp"
#include "catsampler/unitary.hpp"

namespace catsampler {

namespace detail {

/// Visits every way of splitting `total` photons over `modes` modes, in
/// lexicographic order of the counts vector.
inline void for_each_composition(
    int total, int modes, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> counts(modes, 0);
  const std::function<void(int, int)> rec = [&](int mode, int remaining) {
    if (mode == modes - 1) {
      counts[mode] = remaining;
      fn(counts);
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      counts[mode] = c;
      rec(mode + 1, remaining - c);
    }
  };
  if (modes > 0) rec(0, total);
}

/// ln(sinh(x)/x) for x > 0, stable across the whole range.
inline double log_sinh_ratio(double x) {
  if (x < 1e-4) {
    const double x2 = x * x;
    return std::log1p(x2 / 6.0 + x2 * x2 / 120.0);
  }
  if (x <= 20.0) return std::log(std::sinh(x) / x);
  // sinh(x) = e^x (1 - e^{-2x}) / 2 avoids overflow for large x.
  return x - std::log(2.0 * x) + std::log1p(-std::exp(-2.0 * x));
}

/// Least-squares slope of y against x.
inline double ls_slope(const std::vector<double>& x,
                       const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (x[i] - mx) * (y[i] - my);
    den += (x[i] - mx) * (x[i] - mx);
  }
  return num / den;
}

}  // namespace detail

/// Two-mode interference report for odd cats on a 50/50 coupler.
struct HomReport {
  double alpha = 0.0;
  double p11 = 0.0;
  double p20 = 0.0;
  double p02 = 0.0;
  Complex gamma20;
  Complex gamma02;
  double dev11 = 0.0;  // |P(1,1) - 0|
  double dev20 = 0.0;  // |P(2,0) - 1/2|
  double dev02 = 0.0;  // |P(0,2) - 1/2|
  bool signs_ok = false;
  double captured_mass = 0.0;
};

/// Two odd cats of real amplitude alpha through the 50/50 coupler, truncated
/// at a 1e-12 tail target. The coincidence outcome (1,1) is suppressed
/// exactly; the bunched outcomes (2,0)/(0,2) carry probability 1/2 each in
/// the small-amplitude limit with amplitudes of sign +/-.
inline HomReport hom_check(double alpha) {
  if (!(alpha >= 1e-6 && alpha <= 0.1)) {
    throw ValidationError("hom_check amplitude must lie in [1e-6, 0.1]");
  }
  const UnitaryMatrix h = hadamard2();
  const InputRegister reg = make_register({odd_cat(alpha), odd_cat(alpha)});
  const CutoffPolicy cutoffs = auto_cutoff(reg, h, 1e-12);
  const SampledDistribution dist = build_distribution(h, reg, cutoffs);
  const OutputSuperposition output = propagate_register(h, reg);

  HomReport r;
  r.alpha = alpha;
  r.p11 = dist.probability(Signature({1, 1}));
  r.p20 = dist.probability(Signature({2, 0}));
  r.p02 = dist.probability(Signature({0, 2}));
  r.gamma20 = gamma_S(output, Signature({2, 0}));
  r.gamma02 = gamma_S(output, Signature({0, 2}));
  r.dev11 = r.p11;
  r.dev20 = std::abs(r.p20 - 0.5);
  r.dev02 = std::abs(r.p02 - 0.5);
  r.signs_ok = r.gamma20.real() > 0.0 && r.gamma02.real() < 0.0;
  r.captured_mass = dist.captured_mass();
  return r;
}

/// Deviation between the superposition amplitudes and the Fock reference on
/// the total-photon shell, for n small odd cats among m modes.
struct ReductionReport {
  int n = 0;
  int m = 0;
  double alpha = 0.0;
  std::uint64_t seed = 0;
  double max_deviation = 0.0;
  double fitted_c = 0.0;  // max_deviation / alpha^2
};

/// Register of n odd cats (amplitude alpha) and m - n vacuums through a
/// seeded Haar unitary; compares gamma_S against fock_gamma_S for every
/// signature with total n.
inline ReductionReport fock_reduction_check(int n, int m, double alpha,
                                            std::uint64_t seed) {
  if (!(0 <= n && n <= 3 && n <= m && m <= 6)) {
    throw ValidationError(
        "fock_reduction_check is desk-scale: 0 <= n <= 3, n <= m <= 6");
  }
  if (!(alpha > 0.0 && alpha <= 1e-2)) {
    throw ValidationError(
        "fock_reduction_check amplitude must lie in (0, 1e-2]");
  }
  std::vector<CatSpec> modes;
  std::vector<int> input_counts;
  for (int i = 0; i < n; ++i) {
    modes.push_back(odd_cat(alpha));
    input_counts.push_back(1);
  }
  for (int i = n; i < m; ++i) {
    modes.push_back(vacuum());
    input_counts.push_back(0);
  }
  const InputRegister reg = make_register(std::move(modes));
  const UnitaryMatrix u = haar_random_unitary(m, seed);
  const OutputSuperposition output = propagate_register(u, reg);
  const FockConfig input(input_counts);

  ReductionReport r;
  r.n = n;
  r.m = m;
  r.alpha = alpha;
  r.seed = seed;
  detail::for_each_composition(n, m, [&](const std::vector<int>& counts) {
    const Signature s(counts);
    const double dev = std::abs(gamma_S(output, s) - fock_gamma_S(u, input, s));
    r.max_deviation = std::max(r.max_deviation, dev);
  });
  r.fitted_c = r.max_deviation / (alpha * alpha);
  return r;
}

struct ReductionSweep {
  std::vector<ReductionReport> points;
  double slope_vs_alpha = 0.0;     // d log(maxdev) / d log(alpha)
  double slope_vs_alpha_sq = 0.0;  // d log(maxdev) / d log(alpha^2)
};

/// Runs the reduction check across several amplitudes with one seed and fits
/// the decay exponent of the max deviation on a log-log scale.
inline ReductionSweep fock_reduction_sweep(int n, int m,
                                           const std::vector<double>& alphas,
                                           std::uint64_t seed) {
  if (alphas.size() < 2) {
    throw ValidationError("sweep needs at least two amplitudes");
  }
  ReductionSweep sweep;
  std::vector<double> lx, ly;
  for (double a : alphas) {
    sweep.points.push_back(fock_reduction_check(n, m, a, seed));
    lx.push_back(std::log(a));
    ly.push_back(std::log(sweep.points.back().max_deviation));
  }
  sweep.slope_vs_alpha = detail::ls_slope(lx, ly);
  sweep.slope_vs_alpha_sq = sweep.slope_vs_alpha / 2.0;
  return sweep;
}

/// Probability of drawing the intended single photon from every one of the
/// n small odd cats: P = alpha^{2n} csch^n(alpha^2), evaluated in log space.
struct HardnessBoundValue {
  double probability = 0.0;
  bool underflow = false;  // true when P rounds to exactly 0
};

inline HardnessBoundValue hardness_bound(int n, double alpha) {
  if (n < 1) throw ValidationError("hardness_bound requires n >= 1");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ValidationError("hardness_bound requires finite alpha > 0");
  }
  const double x = alpha * alpha;
  // P = exp(n * ln(x / sinh x)); the ratio is computed stably so the alpha
  // -> 0 limit evaluates to exactly 1.
  const double log_p = -static_cast<double>(n) * detail::log_sinh_ratio(x);
  HardnessBoundValue v;
  v.probability = std::exp(log_p);
  v.underflow = v.probability == 0.0;
  return v;
}

struct HardnessBoundReport {
  int n = 0;
  double alpha = 0.0;
  double probability = 0.0;
  double threshold = 0.0;
  bool satisfied = false;
  bool underflow = false;
};

/// Compares the single-photon success probability against a polynomial
/// threshold c * n^-k.
inline HardnessBoundReport bound_check(int n, double alpha, double c,
                                       double k) {
  if (!(c > 0.0)) throw ValidationError("bound_check requires c > 0");
  if (!(k >= 0.0)) throw ValidationError("bound_check requires k >= 0");
  const HardnessBoundValue v = hardness_bound(n, alpha);
  HardnessBoundReport r;
  r.n = n;
  r.alpha = alpha;
  r.probability = v.probability;
  r.underflow = v.underflow;
  r.threshold = c * std::pow(static_cast<double>(n), -k);
  r.satisfied = r.probability > r.threshold;
  return r;
}

}  // namespace catsampler
