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

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <sstream>
#include <utility>
#include <vector>

#include "catsampler/errors.hpp"

namespace catsampler {

using Complex = std::complex<double>;

/// Photon numbers above this overflow the factorial scale of the amplitude
/// formulas even in log space bookkeeping; rejected everywhere.
inline constexpr int kMaxPhotonNumber = 170;

/// Branch-count cap for expanded multi-mode superpositions (2^40).
inline constexpr std::uint64_t kMaxBranchCount = std::uint64_t{1} << 40;

namespace detail {

inline bool finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// n! as double, exact up to n = 20 (fits in 53 bits), correctly rounded
/// products beyond.
inline double factorial(int n) {
  static const std::array<double, kMaxPhotonNumber + 1> table = [] {
    std::array<double, kMaxPhotonNumber + 1> t{};
    t[0] = 1.0;
    for (int i = 1; i <= kMaxPhotonNumber; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  return table[n];
}

inline Complex pow_int(Complex base, int n) {
  Complex p{1.0, 0.0};
  for (int i = 0; i < n; ++i) p *= base;
  return p;
}

}  // namespace detail

/// Photon-number amplitude of a coherent state:
/// f_n(a) = exp(-|a|^2 / 2) a^n / sqrt(n!).
///
/// Up to n = 20 the factorial is exact and the power is a plain product;
/// beyond that the magnitude is assembled in log space (lgamma) and the
/// phase applied separately. Real-axis inputs keep an exactly real result
/// with exact sign, so parity cancellations between ±a terms are exact.
inline Complex fock_amplitude(Complex alpha, int n) {
  if (n < 0) throw ValidationError("photon number must be non-negative");
  if (n > kMaxPhotonNumber) {
    std::ostringstream msg;
    msg << "photon number " << n << " exceeds cap " << kMaxPhotonNumber;
    throw NOverflowError(msg.str());
  }
  if (!detail::finite(alpha)) {
    throw NonFiniteError("coherent amplitude must be finite");
  }
  const double a2 = std::norm(alpha);
  if (alpha == Complex{}) return n == 0 ? Complex{1.0, 0.0} : Complex{};
  // Beyond n = 20 the factorial needs log space; beyond |a|^2 = 700 the
  // direct product can pair an underflowed Gaussian with an overflowed
  // power (0 * inf), so those also take the log route.
  if (n <= 20 && a2 <= 700.0) {
    return std::exp(-a2 / 2.0) * detail::pow_int(alpha, n) /
           std::sqrt(detail::factorial(n));
  }
  const double log_mag = -a2 / 2.0 + n * std::log(std::abs(alpha)) -
                         0.5 * std::lgamma(static_cast<double>(n) + 1.0);
  const double mag = std::exp(log_mag);
  if (alpha.imag() == 0.0) {
    const double sign = (alpha.real() < 0.0 && n % 2 == 1) ? -1.0 : 1.0;
    return {sign * mag, 0.0};
  }
  return std::polar(mag, n * std::arg(alpha));
}

/// <a|b> = exp(-(|a|^2 + |b|^2)/2 + conj(a)·b).
inline Complex coherent_overlap(Complex a, Complex b) {
  if (!detail::finite(a) || !detail::finite(b)) {
    throw NonFiniteError("coherent_overlap requires finite amplitudes");
  }
  return std::exp(Complex{-(std::norm(a) + std::norm(b)) / 2.0, 0.0} +
                  std::conj(a) * b);
}

/// One superposition term: weight * |alpha>.
struct CatTerm {
  Complex weight;
  Complex alpha;
};

/// A normalized superposition of coherent states on one mode.
///
/// Construction goes through make_cat, which prunes zero weights, merges
/// exact duplicate amplitudes and rescales by the Gram norm
/// N^2 = sum_{jk} conj(w_j) w_k <a_j|a_k> (coherent states are not
/// orthogonal, so a plain sum of |w|^2 would be wrong).
class CatSpec {
 public:
  const std::vector<CatTerm>& terms() const { return terms_; }
  int term_count() const { return static_cast<int>(terms_.size()); }

 private:
  explicit CatSpec(std::vector<CatTerm> terms) : terms_(std::move(terms)) {}
  friend CatSpec make_cat(std::vector<CatTerm>);

  std::vector<CatTerm> terms_;
};

/// Squared Gram norm of an un-normalized term list.
///
/// The balanced antisymmetric pair {(w, a), (-w, -a)} gets its closed form
/// 2|w|^2 (1 - e^{-2|a|^2}) through expm1: the generic sum cancels
/// catastrophically there for small |a|, and that pair is exactly the state
/// whose small-amplitude behavior the experiments probe.
inline double gram_norm_sq(const std::vector<CatTerm>& terms) {
  if (terms.size() == 2 && terms[1].alpha == -terms[0].alpha &&
      terms[1].weight == -terms[0].weight) {
    return 2.0 * std::norm(terms[0].weight) *
           -std::expm1(-2.0 * std::norm(terms[0].alpha));
  }
  long double re = 0.0L;
  for (const CatTerm& tj : terms) {
    for (const CatTerm& tk : terms) {
      const Complex cross = std::conj(tj.weight) * tk.weight *
                            coherent_overlap(tj.alpha, tk.alpha);
      re += cross.real();
    }
  }
  return static_cast<double>(re);
}

inline CatSpec make_cat(std::vector<CatTerm> terms) {
  for (const CatTerm& t : terms) {
    if (!detail::finite(t.weight) || !detail::finite(t.alpha)) {
      throw NonFiniteError("cat term has non-finite weight or amplitude");
    }
  }
  // Merge exact duplicate amplitudes (first occurrence keeps its slot),
  // then drop terms whose weight is or became exactly zero.
  std::vector<CatTerm> merged;
  merged.reserve(terms.size());
  for (const CatTerm& t : terms) {
    if (t.weight == Complex{}) continue;
    bool found = false;
    for (CatTerm& m : merged) {
      if (m.alpha == t.alpha) {
        m.weight += t.weight;
        found = true;
        break;
      }
    }
    if (!found) merged.push_back(t);
  }
  std::erase_if(merged, [](const CatTerm& t) { return t.weight == Complex{}; });
  if (merged.empty()) {
    throw EmptyCatError("cat state has no surviving terms after merging");
  }
  const double n2 = gram_norm_sq(merged);
  if (!std::isfinite(n2)) {
    throw NonFiniteError("cat state norm overflowed");
  }
  if (!(n2 > 1e-24)) {
    std::ostringstream msg;
    msg << "cat state norm is numerically degenerate (N^2 = " << n2 << ")";
    throw DegenerateNormError(msg.str());
  }
  const double scale = 1.0 / std::sqrt(n2);
  for (CatTerm& t : merged) t.weight *= scale;
  return CatSpec(std::move(merged));
}

inline CatSpec vacuum() { return make_cat({{Complex{1.0, 0.0}, Complex{}}}); }

/// Single coherent state |alpha> (one-term cat).
inline CatSpec coherent_state(Complex alpha) {
  return make_cat({{Complex{1.0, 0.0}, alpha}});
}

/// (|a> + |-a>) normalized; only even photon numbers survive.
inline CatSpec even_cat(Complex alpha) {
  return make_cat({{Complex{1.0, 0.0}, alpha}, {Complex{1.0, 0.0}, -alpha}});
}

/// (|a> - |-a>) normalized; only odd photon numbers survive. The norm
/// degenerates as a -> 0, so amplitudes below 1e-6 are rejected; the
/// single-photon limit is approached with small but finite a.
inline CatSpec odd_cat(Complex alpha) {
  if (std::abs(alpha) < 1e-6) {
    throw DegenerateNormError(
        "odd cat amplitude below 1e-6 has a numerically degenerate norm");
  }
  return make_cat({{Complex{1.0, 0.0}, alpha}, {Complex{-1.0, 0.0}, -alpha}});
}

/// Photon-number amplitude of a cat: sum_j w_j f_n(a_j).
inline Complex fock_overlap(const CatSpec& cat, int n) {
  Complex amp{};
  for (const CatTerm& t : cat.terms()) amp += t.weight * fock_amplitude(t.alpha, n);
  return amp;
}

struct PhotonNumberDist {
  std::vector<double> prob;  // P(n) for n = 0..cutoff
  double captured_mass = 0.0;
};

/// P(n) = |sum_j w_j f_n(a_j)|^2 for n = 0..cutoff, plus the retained mass.
inline PhotonNumberDist photon_number_dist(const CatSpec& cat, int cutoff) {
  if (cutoff < 0) throw ValidationError("cutoff must be non-negative");
  PhotonNumberDist out;
  out.prob.resize(cutoff + 1);
  for (int n = 0; n <= cutoff; ++n) {
    out.prob[n] = std::norm(fock_overlap(cat, n));
    out.captured_mass += out.prob[n];
  }
  return out;
}

/// Tensor product of per-mode cats. Immutable; the branch count
/// (product of per-mode term counts) is validated at construction.
class InputRegister {
 public:
  int mode_count() const { return static_cast<int>(modes_.size()); }
  const std::vector<CatSpec>& modes() const { return modes_; }
  const CatSpec& mode(int i) const { return modes_[i]; }  // 0-based
  std::uint64_t branch_count() const { return branch_count_; }

 private:
  InputRegister(std::vector<CatSpec> modes, std::uint64_t branches)
      : modes_(std::move(modes)), branch_count_(branches) {}
  friend InputRegister make_register(std::vector<CatSpec>);

  std::vector<CatSpec> modes_;
  std::uint64_t branch_count_;
};

inline InputRegister make_register(std::vector<CatSpec> specs) {
  if (specs.empty()) {
    throw ValidationError("register needs at least one mode");
  }
  std::uint64_t branches = 1;
  for (const CatSpec& s : specs) {
    const auto t = static_cast<std::uint64_t>(s.term_count());
    if (branches > kMaxBranchCount / t) {
      std::ostringstream msg;
      msg << "expanded branch count exceeds cap 2^40 ("
          << specs.size() << " modes)";
      throw TermExplosionError(msg.str());
    }
    branches *= t;
  }
  return InputRegister(std::move(specs), branches);
}

}  // namespace catsampler
