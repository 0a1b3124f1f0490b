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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "catsampler/amplitudes.hpp"
#include "catsampler/digest.hpp"
#include "catsampler/errors.hpp"
#include "catsampler/parallel.hpp"
#include "catsampler/propagation.hpp"
#include "catsampler/rng.hpp"

namespace catsampler {

/// Cap on the enumerated signature space.
inline constexpr std::uint64_t kMaxSignatureSpace = 100'000'000;

/// Per-mode photon-count ceilings for the truncated outcome enumeration.
/// tail_epsilon records the targeted missing mass when the policy came from
/// auto_cutoff; explicit policies leave it empty.
struct CutoffPolicy {
  std::vector<int> per_mode_max;
  std::optional<double> tail_epsilon;
};

namespace detail {

inline void validate_cutoffs(const CutoffPolicy& c) {
  if (c.per_mode_max.empty()) {
    throw ValidationError("cutoff policy needs at least one mode");
  }
  for (int n : c.per_mode_max) {
    if (n < 0) throw ValidationError("per-mode cutoffs must be non-negative");
    if (n > kMaxPhotonNumber) {
      std::ostringstream msg;
      msg << "per-mode cutoff " << n << " exceeds photon cap "
          << kMaxPhotonNumber;
      throw NOverflowError(msg.str());
    }
  }
}

/// Upper Poisson mass sum_{n >= n_min} e^-mu mu^n / n!.
inline double poisson_tail_from(double mu, int n_min) {
  if (n_min <= 0) return 1.0;
  if (mu <= 0.0) return 0.0;
  double term = std::exp(-mu + n_min * std::log(mu) -
                         std::lgamma(static_cast<double>(n_min) + 1.0));
  double sum = 0.0;
  for (int n = n_min; n < n_min + 4096; ++n) {
    sum += term;
    term *= mu / (n + 1);
    if (term < sum * 1e-19 + 5e-324) break;
  }
  return sum;
}

}  // namespace detail

/// Picks per-mode ceilings so the truncated enumeration keeps at least
/// 1 - epsilon of the mass. Each branch of the propagated superposition has
/// exactly Poisson photon statistics per mode, so the worst branch mean
/// mu_j = max |beta_j|^2 bounds each mode's tail; the per-mode budget
/// epsilon / (m * branches) then union-bounds the total leakage. N_j is the
/// smallest count with inclusive Poisson tail within budget (exactly 0 for
/// a mode that is vacuum in every branch).
inline CutoffPolicy auto_cutoff(const InputRegister& reg,
                                const UnitaryMatrix& u, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ValidationError("auto_cutoff epsilon must lie in (0, 1)");
  }
  const OutputSuperposition output = propagate_register(u, reg);
  const int m = output.mode_count();
  std::vector<double> mu(m, 0.0);
  output.for_each_term([&](const MultiModeTerm& term) {
    for (int j = 0; j < m; ++j) {
      mu[j] = std::max(mu[j], std::norm(term.alphas[j]));
    }
  });
  const double budget =
      epsilon / (static_cast<double>(m) *
                 static_cast<double>(output.term_count()));
  CutoffPolicy policy;
  policy.tail_epsilon = epsilon;
  policy.per_mode_max.resize(m);
  for (int j = 0; j < m; ++j) {
    if (mu[j] == 0.0) {
      policy.per_mode_max[j] = 0;
      continue;
    }
    int n = 0;
    while (detail::poisson_tail_from(mu[j], n) > budget) {
      if (++n > kMaxPhotonNumber) {
        std::ostringstream msg;
        msg << "auto cutoff for mode " << j + 1 << " (mean " << mu[j]
            << ") exceeds photon cap " << kMaxPhotonNumber;
        throw TooLargeError(msg.str());
      }
    }
    policy.per_mode_max[j] = n;
  }
  return policy;
}

/// Number of signatures under the policy, prod (N_i + 1); capped.
inline std::uint64_t signature_space_size(const CutoffPolicy& cutoffs) {
  detail::validate_cutoffs(cutoffs);
  std::uint64_t size = 1;
  for (int n : cutoffs.per_mode_max) {
    // size stays <= 1e8 before each multiply and radix <= 171, so the
    // product cannot wrap.
    size *= static_cast<std::uint64_t>(n) + 1;
    if (size > kMaxSignatureSpace) {
      throw TermExplosionError(
          "signature space exceeds the 1e8 enumeration cap");
    }
  }
  return size;
}

/// Counts vector of the rank-th signature in lexicographic order (mode 1
/// most significant).
inline std::vector<int> signature_counts_at(const CutoffPolicy& cutoffs,
                                            std::uint64_t rank) {
  const int m = static_cast<int>(cutoffs.per_mode_max.size());
  std::vector<int> counts(m);
  for (int i = m - 1; i >= 0; --i) {
    const auto radix = static_cast<std::uint64_t>(cutoffs.per_mode_max[i]) + 1;
    counts[i] = static_cast<int>(rank % radix);
    rank /= radix;
  }
  return counts;
}

/// Lexicographic rank of a counts vector under the policy.
inline std::uint64_t signature_rank(const CutoffPolicy& cutoffs,
                                    const std::vector<int>& counts) {
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    rank = rank * (static_cast<std::uint64_t>(cutoffs.per_mode_max[i]) + 1) +
           static_cast<std::uint64_t>(counts[i]);
  }
  return rank;
}

/// fn(const std::vector<int>&) over all signatures in lexicographic order;
/// the counts vector is a reused buffer.
template <typename Fn>
void for_each_signature(const CutoffPolicy& cutoffs, Fn&& fn) {
  const std::uint64_t size = signature_space_size(cutoffs);
  const int m = static_cast<int>(cutoffs.per_mode_max.size());
  std::vector<int> counts(m, 0);
  for (std::uint64_t r = 0; r < size; ++r) {
    fn(static_cast<const std::vector<int>&>(counts));
    for (int i = m - 1; i >= 0; --i) {
      if (++counts[i] <= cutoffs.per_mode_max[i]) break;
      counts[i] = 0;
    }
  }
}

/// Materialized signature list (tests and small spaces).
inline std::vector<Signature> enumerate_signatures(
    const CutoffPolicy& cutoffs) {
  std::vector<Signature> out;
  out.reserve(signature_space_size(cutoffs));
  for_each_signature(cutoffs, [&](const std::vector<int>& counts) {
    out.push_back(Signature(counts));
  });
  return out;
}

/// Truncated outcome distribution: raw |gamma_S|^2 for every signature under
/// the cutoffs, stored by lexicographic rank, plus the captured mass and
/// input digests. Entries are not renormalized; sampling renormalizes.
class SampledDistribution {
 public:
  const CutoffPolicy& cutoffs() const { return cutoffs_; }
  int mode_count() const {
    return static_cast<int>(cutoffs_.per_mode_max.size());
  }
  std::uint64_t size() const { return probs_.size(); }
  double captured_mass() const { return captured_mass_; }

  double probability_at(std::uint64_t rank) const { return probs_[rank]; }
  Signature signature_at(std::uint64_t rank) const {
    return Signature(signature_counts_at(cutoffs_, rank));
  }

  bool contains(const std::vector<int>& counts) const {
    if (counts.size() != cutoffs_.per_mode_max.size()) return false;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      if (counts[i] < 0 || counts[i] > cutoffs_.per_mode_max[i]) return false;
    }
    return true;
  }

  /// Raw probability of the signature; zero outside the cutoffs.
  double probability(const Signature& s) const {
    if (s.mode_count() != mode_count()) {
      throw DimMismatchError("signature mode count does not match");
    }
    if (!contains(s.counts())) return 0.0;
    return probs_[signature_rank(cutoffs_, s.counts())];
  }

  const std::string& register_digest() const { return register_digest_; }
  const std::string& unitary_digest() const { return unitary_digest_; }

 private:
  SampledDistribution() = default;
  friend SampledDistribution build_distribution(const UnitaryMatrix&,
                                                const InputRegister&,
                                                const CutoffPolicy&);
  friend SampledDistribution empirical_distribution(
      const std::vector<Signature>&, CutoffPolicy);

  CutoffPolicy cutoffs_;
  std::vector<double> probs_;
  double captured_mass_ = 0.0;
  std::string register_digest_;
  std::string unitary_digest_;
};

/// Evaluates |gamma_S|^2 for every signature under the policy. Signatures
/// are partitioned into contiguous rank chunks across workers; each slot is
/// written by exactly one worker and the captured-mass reduction runs in
/// rank order afterwards, so the result does not depend on the worker count.
inline SampledDistribution build_distribution(const UnitaryMatrix& u,
                                              const InputRegister& reg,
                                              const CutoffPolicy& cutoffs) {
  if (u.dim() != reg.mode_count() ||
      static_cast<int>(cutoffs.per_mode_max.size()) != reg.mode_count()) {
    throw DimMismatchError(
        "unitary, register and cutoff policy must agree on the mode count");
  }
  const std::uint64_t size = signature_space_size(cutoffs);
  const OutputSuperposition output = propagate_register(u, reg);

  SampledDistribution dist;
  dist.cutoffs_ = cutoffs;
  dist.probs_.assign(size, 0.0);
  dist.register_digest_ = digest_register(reg);
  dist.unitary_digest_ = digest_unitary(u);

  parallel_for_chunks(
      size, thread_count(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t rank = begin; rank < end; ++rank) {
          const Signature s(signature_counts_at(dist.cutoffs_, rank));
          dist.probs_[rank] = std::norm(gamma_S(output, s));
        }
      });

  double mass = 0.0;
  for (double p : dist.probs_) mass += p;
  dist.captured_mass_ = mass;
  return dist;
}

/// Frequencies of an observed sample list under the same cutoff policy.
inline SampledDistribution empirical_distribution(
    const std::vector<Signature>& samples, CutoffPolicy cutoffs) {
  const std::uint64_t size = signature_space_size(cutoffs);
  SampledDistribution dist;
  dist.cutoffs_ = std::move(cutoffs);
  dist.probs_.assign(size, 0.0);
  dist.register_digest_ = "empirical";
  dist.unitary_digest_ = "empirical";
  if (samples.empty()) {
    throw EmptyDistributionError("empirical distribution needs samples");
  }
  const double w = 1.0 / static_cast<double>(samples.size());
  for (const Signature& s : samples) {
    if (!dist.contains(s.counts())) {
      throw ValidationError("sample lies outside the cutoff policy");
    }
    dist.probs_[signature_rank(dist.cutoffs_, s.counts())] += w;
  }
  double mass = 0.0;
  for (double p : dist.probs_) mass += p;
  dist.captured_mass_ = mass;
  return dist;
}

/// Draws i.i.d. signatures from the distribution renormalized by its
/// captured mass, by inverse-CDF over the lexicographic order. The sequence
/// is a pure function of (distribution, count, seed).
inline std::vector<Signature> draw_samples(const SampledDistribution& dist,
                                           std::size_t count,
                                           std::uint64_t seed) {
  if (!(dist.captured_mass() > 0.0)) {
    throw EmptyDistributionError("distribution has no captured mass");
  }
  std::vector<double> cdf(dist.size());
  double acc = 0.0;
  for (std::uint64_t r = 0; r < dist.size(); ++r) {
    acc += dist.probability_at(r);
    cdf[r] = acc;
  }
  SeededRng rng(seed);
  std::vector<Signature> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double target = uniform_unit(rng) * dist.captured_mass();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
    const std::uint64_t rank =
        it == cdf.end() ? dist.size() - 1
                        : static_cast<std::uint64_t>(it - cdf.begin());
    out.push_back(dist.signature_at(rank));
  }
  return out;
}

/// (1/2) sum over the union of supports of |P_a - P_b|.
inline double total_variation(const SampledDistribution& a,
                              const SampledDistribution& b) {
  if (a.mode_count() != b.mode_count()) {
    throw DimMismatchError("distributions have different mode counts");
  }
  double acc = 0.0;
  for (std::uint64_t r = 0; r < a.size(); ++r) {
    const auto counts = signature_counts_at(a.cutoffs(), r);
    const double pb =
        b.contains(counts) ? b.probability_at(signature_rank(b.cutoffs(), counts))
                           : 0.0;
    acc += std::abs(a.probability_at(r) - pb);
  }
  for (std::uint64_t r = 0; r < b.size(); ++r) {
    const auto counts = signature_counts_at(b.cutoffs(), r);
    if (!a.contains(counts)) acc += b.probability_at(r);
  }
  return acc / 2.0;
}

}  // namespace catsampler
