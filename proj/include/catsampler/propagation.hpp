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
#include <cstdint>
#include <sstream>
#include <utility>
#include <vector>

#include "catsampler/cat_states.hpp"
#include "catsampler/errors.hpp"
#include "catsampler/unitary.hpp"

namespace catsampler {

/// One branch of an expanded multi-mode superposition: a scalar coefficient
/// (product of the chosen per-mode weights) and one coherent amplitude per
/// mode.
struct MultiModeTerm {
  Complex coeff;
  std::vector<Complex> alphas;
};

/// Coherent amplitudes after the network: beta_j = sum_k U(j,k) alpha_k.
inline Eigen::VectorXcd propagate_coherent(const UnitaryMatrix& u,
                                           const Eigen::VectorXcd& alphas) {
  if (alphas.size() != u.dim()) {
    std::ostringstream msg;
    msg << "amplitude vector length " << alphas.size()
        << " does not match unitary dim " << u.dim();
    throw DimMismatchError(msg.str());
  }
  return u.matrix() * alphas;
}

namespace detail {

/// Mixed-radix odometer over per-mode term choices; digit 0 is the most
/// significant, the last digit steps fastest. Branch rank r decodes to the
/// digit vector in lexicographic order.
class BranchOdometer {
 public:
  explicit BranchOdometer(const InputRegister& reg)
      : reg_(&reg), digits_(reg.mode_count(), 0) {}

  void seek(std::uint64_t rank) {
    const int m = reg_->mode_count();
    for (int i = m - 1; i >= 0; --i) {
      const auto t = static_cast<std::uint64_t>(reg_->mode(i).term_count());
      digits_[i] = static_cast<int>(rank % t);
      rank /= t;
    }
  }

  void advance() {
    for (int i = static_cast<int>(digits_.size()) - 1; i >= 0; --i) {
      if (++digits_[i] < reg_->mode(i).term_count()) return;
      digits_[i] = 0;
    }
  }

  const std::vector<int>& digits() const { return digits_; }

  void fill(MultiModeTerm& term) const {
    const int m = reg_->mode_count();
    term.coeff = Complex{1.0, 0.0};
    term.alphas.resize(m);
    for (int i = 0; i < m; ++i) {
      const CatTerm& ct = reg_->mode(i).terms()[digits_[i]];
      term.coeff *= ct.weight;
      term.alphas[i] = ct.alpha;
    }
  }

 private:
  const InputRegister* reg_;
  std::vector<int> digits_;
};

}  // namespace detail

/// Visits every branch of the register in mixed-radix lexicographic order
/// (mode 1's term index most significant). The MultiModeTerm passed to fn is
/// a reused buffer; copy it if it must outlive the call.
template <typename Fn>
void for_each_branch(const InputRegister& reg, Fn&& fn) {
  detail::BranchOdometer odo(reg);
  MultiModeTerm term;
  const std::uint64_t count = reg.branch_count();
  for (std::uint64_t r = 0; r < count; ++r) {
    odo.fill(term);
    fn(static_cast<const MultiModeTerm&>(term));
    odo.advance();
  }
}

/// Materialized branch expansion, for diagnostics and small registers.
inline std::vector<MultiModeTerm> expand_register(const InputRegister& reg) {
  std::vector<MultiModeTerm> out;
  out.reserve(reg.branch_count());
  for_each_branch(reg, [&](const MultiModeTerm& t) { out.push_back(t); });
  return out;
}

/// The propagated superposition: the input register with every branch's
/// amplitudes pushed through the unitary. Branches are generated on the fly
/// (nothing is materialized), in the same lexicographic order as
/// for_each_branch, and disjoint rank ranges can be enumerated concurrently.
class OutputSuperposition {
 public:
  OutputSuperposition(UnitaryMatrix u, InputRegister reg)
      : u_(std::move(u)), reg_(std::move(reg)) {
    if (u_.dim() != reg_.mode_count()) {
      std::ostringstream msg;
      msg << "unitary dim " << u_.dim() << " does not match register modes "
          << reg_.mode_count();
      throw DimMismatchError(msg.str());
    }
  }

  int mode_count() const { return reg_.mode_count(); }
  std::uint64_t term_count() const { return reg_.branch_count(); }
  const UnitaryMatrix& unitary() const { return u_; }
  const InputRegister& source() const { return reg_; }

  /// Propagated term for one branch rank.
  MultiModeTerm term_at(std::uint64_t rank) const {
    detail::BranchOdometer odo(reg_);
    odo.seek(rank);
    MultiModeTerm term;
    std::vector<Complex> scratch;
    odo.fill(term);
    propagate_in_place(term, scratch);
    return term;
  }

  /// fn(const MultiModeTerm&) over ranks [begin, end); the term is a reused
  /// buffer. All state is local, so disjoint ranges may run concurrently.
  template <typename Fn>
  void for_each_term_range(std::uint64_t begin, std::uint64_t end,
                           Fn&& fn) const {
    detail::BranchOdometer odo(reg_);
    odo.seek(begin);
    MultiModeTerm term;
    std::vector<Complex> scratch;
    for (std::uint64_t r = begin; r < end; ++r) {
      odo.fill(term);
      propagate_in_place(term, scratch);
      fn(static_cast<const MultiModeTerm&>(term));
      odo.advance();
    }
  }

  template <typename Fn>
  void for_each_term(Fn&& fn) const {
    for_each_term_range(0, term_count(), std::forward<Fn>(fn));
  }

 private:
  void propagate_in_place(MultiModeTerm& term,
                          std::vector<Complex>& scratch) const {
    const int m = mode_count();
    scratch.resize(m);
    const Eigen::MatrixXcd& mat = u_.matrix();
    for (int j = 0; j < m; ++j) {
      Complex beta{};
      for (int k = 0; k < m; ++k) beta += mat(j, k) * term.alphas[k];
      scratch[j] = beta;
    }
    term.alphas.swap(scratch);
  }

  UnitaryMatrix u_;
  InputRegister reg_;
};

inline OutputSuperposition propagate_register(const UnitaryMatrix& u,
                                              const InputRegister& reg) {
  return OutputSuperposition(u, reg);
}

}  // namespace catsampler
