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
#include <numeric>
#include <sstream>
#include <utility>
#include <vector>

#include "catsampler/cat_states.hpp"
#include "catsampler/errors.hpp"
#include "catsampler/permanent.hpp"
#include "catsampler/propagation.hpp"
#include "catsampler/unitary.hpp"

namespace catsampler {

namespace detail {

inline std::vector<int> checked_counts(std::vector<int> counts,
                                       const char* what) {
  if (counts.empty()) {
    throw ValidationError(std::string(what) + " needs at least one mode");
  }
  for (int c : counts) {
    if (c < 0) {
      throw ValidationError(std::string(what) +
                            " counts must be non-negative");
    }
    if (c > kMaxPhotonNumber) {
      std::ostringstream msg;
      msg << what << " count " << c << " exceeds cap " << kMaxPhotonNumber;
      throw NOverflowError(msg.str());
    }
  }
  return counts;
}

/// Kahan-compensated complex accumulator; summation order is the caller's
/// visit order, making streamed sums reproducible.
class KahanSum {
 public:
  void add(Complex v) {
    add_part(v.real(), re_, re_c_);
    add_part(v.imag(), im_, im_c_);
  }
  Complex value() const { return {re_, im_}; }

 private:
  static void add_part(double v, double& sum, double& comp) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  double re_ = 0.0, im_ = 0.0, re_c_ = 0.0, im_c_ = 0.0;
};

}  // namespace detail

/// Measured photon counts per output mode.
class Signature {
 public:
  explicit Signature(std::vector<int> counts)
      : counts_(detail::checked_counts(std::move(counts), "signature")) {}

  const std::vector<int>& counts() const { return counts_; }
  int mode_count() const { return static_cast<int>(counts_.size()); }
  int operator[](int i) const { return counts_[i]; }
  int total() const {
    return std::accumulate(counts_.begin(), counts_.end(), 0);
  }
  friend bool operator==(const Signature& a, const Signature& b) {
    return a.counts_ == b.counts_;
  }

 private:
  std::vector<int> counts_;
};

/// Prepared photon counts per input mode.
class FockConfig {
 public:
  explicit FockConfig(std::vector<int> counts)
      : counts_(detail::checked_counts(std::move(counts), "fock config")) {}

  const std::vector<int>& counts() const { return counts_; }
  int mode_count() const { return static_cast<int>(counts_.size()); }
  int operator[](int i) const { return counts_[i]; }
  int total() const {
    return std::accumulate(counts_.begin(), counts_.end(), 0);
  }

 private:
  std::vector<int> counts_;
};

namespace detail {

inline void require_signature_dim(int sig_modes, int modes) {
  if (sig_modes != modes) {
    std::ostringstream msg;
    msg << "signature has " << sig_modes << " modes, expected " << modes;
    throw DimMismatchError(msg.str());
  }
}

}  // namespace detail

/// Output amplitude for signature S: the sum over all expanded branches of
/// coeff(branch) * prod_j f_{S_j}(beta_j). Branches stream in lexicographic
/// order through a Kahan accumulator, so the cost is one pass over the
/// product-of-term-counts branches and the result is reproducible.
inline Complex gamma_S(const OutputSuperposition& output, const Signature& s) {
  detail::require_signature_dim(s.mode_count(), output.mode_count());
  const int m = output.mode_count();
  detail::KahanSum acc;
  output.for_each_term([&](const MultiModeTerm& term) {
    Complex v = term.coeff;
    for (int j = 0; j < m; ++j) {
      v *= fock_amplitude(term.alphas[j], s[j]);
    }
    acc.add(v);
  });
  return acc.value();
}

/// Single-branch fast path: prod_j f_{S_j}((U alpha)_j). Polynomial cost.
inline Complex gamma_S_product(const UnitaryMatrix& u,
                               const Eigen::VectorXcd& alphas,
                               const Signature& s) {
  detail::require_signature_dim(s.mode_count(), u.dim());
  const Eigen::VectorXcd betas = propagate_coherent(u, alphas);
  Complex v{1.0, 0.0};
  for (int j = 0; j < u.dim(); ++j) v *= fock_amplitude(betas(j), s[j]);
  return v;
}

/// Fock-input reference amplitude.
///
/// Exactly zero unless the input and output photon totals match (photon
/// number is conserved by a passive network). Otherwise
/// Per(M) / sqrt(prod_i T_i! prod_j S_j!), where M repeats row j of U S_j
/// times and column k T_k times — one row per detected photon, one column
/// per injected photon, consistent with the beta_j = sum_k U(j,k) alpha_k
/// propagation convention.
inline Complex fock_gamma_S(const UnitaryMatrix& u, const FockConfig& t,
                            const Signature& s) {
  detail::require_signature_dim(s.mode_count(), u.dim());
  detail::require_signature_dim(t.mode_count(), u.dim());
  const int n = t.total();
  if (n != s.total()) return Complex{};
  if (n > kPermanentMaxDim) {
    std::ostringstream msg;
    msg << "total photon number " << n << " exceeds permanent cap "
        << kPermanentMaxDim;
    throw TooLargeError(msg.str());
  }
  Eigen::MatrixXcd sub(n, n);
  {
    int r = 0;
    for (int j = 0; j < u.dim(); ++j) {
      for (int rep = 0; rep < s[j]; ++rep, ++r) {
        int c = 0;
        for (int k = 0; k < u.dim(); ++k) {
          for (int rep2 = 0; rep2 < t[k]; ++rep2, ++c) sub(r, c) = u(j, k);
        }
      }
    }
  }
  double denom = 1.0;
  for (int k = 0; k < u.dim(); ++k) denom *= detail::factorial(t[k]);
  for (int j = 0; j < u.dim(); ++j) denom *= detail::factorial(s[j]);
  return permanent(sub) / std::sqrt(denom);
}

/// Same amplitude as gamma_S, evaluated through the rank-3 factor tensor
/// A[j, branch] = w_{branch_j}^{(j)} f_{S_j}(beta_j(branch)): branches are
/// decoded independently by rank and the per-mode factors multiplied as a
/// group. Kept as a second code path for cross-checking the combinatoric
/// structure; plain (uncompensated) summation in reverse rank order.
inline Complex gamma_S_tensor(const OutputSuperposition& output,
                              const Signature& s) {
  detail::require_signature_dim(s.mode_count(), output.mode_count());
  const int m = output.mode_count();
  const InputRegister& reg = output.source();
  Complex total{};
  const std::uint64_t count = output.term_count();
  for (std::uint64_t rank = count; rank-- > 0;) {
    // Decode the branch digits for this rank (least significant digit last).
    std::vector<int> digits(m);
    std::uint64_t r = rank;
    for (int i = m - 1; i >= 0; --i) {
      const auto ti = static_cast<std::uint64_t>(reg.mode(i).term_count());
      digits[i] = static_cast<int>(r % ti);
      r /= ti;
    }
    Complex prod{1.0, 0.0};
    for (int j = 0; j < m; ++j) {
      Complex beta{};
      for (int k = 0; k < m; ++k) {
        beta += output.unitary()(j, k) * reg.mode(k).terms()[digits[k]].alpha;
      }
      const Complex a_jt =
          reg.mode(j).terms()[digits[j]].weight * fock_amplitude(beta, s[j]);
      prod *= a_jt;
    }
    total += prod;
  }
  return total;
}

}  // namespace catsampler
