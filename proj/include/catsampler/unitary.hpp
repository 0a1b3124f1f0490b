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
#include <cmath>
#include <complex>
#include <cstdint>
#include <sstream>
#include <utility>

#include "catsampler/errors.hpp"
#include "catsampler/rng.hpp"

namespace catsampler {

using Complex = std::complex<double>;

/// Max absolute entry of M·M† − I. Requires a square matrix.
inline double unitarity_deviation(const Eigen::MatrixXcd& m) {
  const Eigen::MatrixXcd gram = m * m.adjoint();
  const Eigen::MatrixXcd eye =
      Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  return (gram - eye).cwiseAbs().maxCoeff();
}

/// An m-mode transfer matrix, validated to be unitary at construction and
/// immutable afterwards. Entry (j, k) is the amplitude from input mode k+1
/// to output mode j+1; mode numbers in the builder functions below are
/// 1-based, matrix indices are 0-based.
class UnitaryMatrix {
 public:
  static constexpr double kDefaultTol = 1e-10;

  int dim() const { return static_cast<int>(u_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return u_; }
  Complex operator()(int row, int col) const { return u_(row, col); }

 private:
  explicit UnitaryMatrix(Eigen::MatrixXcd u) : u_(std::move(u)) {}
  friend UnitaryMatrix validate_unitary(const Eigen::MatrixXcd&, double);

  Eigen::MatrixXcd u_;
};

/// Checks shape, finiteness and unitarity (max |U·U† − I| entry ≤ tol).
inline UnitaryMatrix validate_unitary(const Eigen::MatrixXcd& entries,
                                      double tol = UnitaryMatrix::kDefaultTol) {
  if (entries.rows() != entries.cols() || entries.rows() < 1) {
    std::ostringstream msg;
    msg << "matrix must be square and non-empty, got " << entries.rows()
        << "x" << entries.cols();
    throw NonSquareError(msg.str());
  }
  if (!entries.allFinite()) {
    throw NonFiniteError("matrix contains NaN or Inf entries");
  }
  const double dev = unitarity_deviation(entries);
  if (!(dev <= tol)) {
    std::ostringstream msg;
    msg << "matrix is not unitary: max |U*Udag - I| = " << dev
        << " exceeds tolerance " << tol;
    throw NotUnitaryError(msg.str(), dev);
  }
  return UnitaryMatrix(entries);
}

/// 50/50 two-mode coupler, (1/sqrt2) [[1, 1], [1, -1]].
inline UnitaryMatrix hadamard2() {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd h(2, 2);
  h << s, s, s, -s;
  return validate_unitary(h);
}

/// Two-mode coupler on modes (i, j) of an m-mode identity, 1 <= i < j <= m.
/// The coupled block is [[cos t, e^{i p} sin t], [-e^{-i p} sin t, cos t]].
inline UnitaryMatrix beamsplitter(int m, int i, int j, double theta,
                                  double phi) {
  if (!(1 <= i && i < j && j <= m)) {
    std::ostringstream msg;
    msg << "beamsplitter modes (" << i << ", " << j
        << ") must satisfy 1 <= i < j <= m with m = " << m;
    throw ModeOutOfRangeError(msg.str());
  }
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(m, m);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Complex ep = std::polar(1.0, phi);
  u(i - 1, i - 1) = c;
  u(i - 1, j - 1) = ep * s;
  u(j - 1, i - 1) = -std::conj(ep) * s;
  u(j - 1, j - 1) = c;
  return validate_unitary(u);
}

/// Phase e^{i phi} on mode i (1-based) of an m-mode identity.
inline UnitaryMatrix phase_shifter(int m, int i, double phi) {
  if (!(1 <= i && i <= m)) {
    std::ostringstream msg;
    msg << "phase shifter mode " << i << " out of range 1..m with m = " << m;
    throw ModeOutOfRangeError(msg.str());
  }
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(m, m);
  u(i - 1, i - 1) = std::polar(1.0, phi);
  return validate_unitary(u);
}

/// Network applying u first, then v: returns the matrix product v·u.
inline UnitaryMatrix compose(const UnitaryMatrix& u, const UnitaryMatrix& v) {
  if (u.dim() != v.dim()) {
    std::ostringstream msg;
    msg << "cannot compose unitaries of dims " << u.dim() << " and "
        << v.dim();
    throw DimMismatchError(msg.str());
  }
  return validate_unitary(v.matrix() * u.matrix());
}

/// Haar-distributed m x m unitary, reproducible from the seed.
///
/// An m x m matrix of independent standard complex Gaussians is
/// orthonormalized column by column (modified Gram-Schmidt with one
/// re-orthogonalization pass). The triangular factor implied by this process
/// has positive real diagonal, so the column-phase correction by the sign of
/// those diagonal entries is the identity and the result is already a draw
/// from the invariant measure.
inline UnitaryMatrix haar_random_unitary(int m, std::uint64_t seed) {
  if (m < 1) throw ValidationError("haar_random_unitary requires m >= 1");
  SeededRng rng(seed);
  Eigen::MatrixXcd a(m, m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) a(r, c) = complex_normal(rng);

  for (int c = 0; c < m; ++c) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int k = 0; k < c; ++k) {
        const Complex proj = a.col(k).adjoint() * a.col(c);
        a.col(c) -= proj * a.col(k);
      }
    }
    a.col(c) /= a.col(c).norm();
  }
  return validate_unitary(a);
}

}  // namespace catsampler
