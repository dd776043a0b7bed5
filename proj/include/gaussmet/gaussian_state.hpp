// Copyright 2026 The gaussmet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Single- and two-mode Gaussian states in the covariance-matrix picture.
//
// Quadratures are ordered (q1, p1, ..., qn, pn) and normalised so that the
// vacuum has covariance matrix I. A thermal state with mean occupation nbar
// therefore has sigma = (2 nbar + 1) I, and the Heisenberg bound reads
// sigma + i Omega >= 0 (all symplectic eigenvalues >= 1).

#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <sstream>
#include <string>

#include "gaussmet/errors.hpp"

namespace gaussmet {

/// Tolerance on eigenvalue bounds used by every physicality check.
inline constexpr double kPhysicalityTol = 1e-9;

template <class Scalar, int Modes>
class GaussianState {
  static_assert(Modes == 1 || Modes == 2, "only one- and two-mode states are supported");

 public:
  static constexpr int kModes = Modes;
  static constexpr int kDim = 2 * Modes;
  using scalar_type = Scalar;
  using Vector = Eigen::Matrix<Scalar, kDim, 1>;
  using Matrix = Eigen::Matrix<Scalar, kDim, kDim>;

  /// Vacuum.
  GaussianState() : d_(Vector::Zero()), sigma_(Matrix::Identity()) {}

  /// The covariance is replaced by its symmetric part (sigma + sigma^T) / 2.
  /// No physicality check is made here; see check_physicality().
  GaussianState(const Vector& d, const Matrix& sigma)
      : d_(d), sigma_((sigma + sigma.transpose()) / Scalar(2)) {}

  const Vector& mean() const noexcept { return d_; }
  const Matrix& covariance() const noexcept { return sigma_; }
  static constexpr int n_modes() noexcept { return Modes; }

  template <class T>
  GaussianState<T, Modes> cast() const {
    return {d_.template cast<T>(), sigma_.template cast<T>()};
  }

 private:
  Vector d_;
  Matrix sigma_;
};

template <class Scalar = double>
using SingleModeState = GaussianState<Scalar, 1>;
template <class Scalar = double>
using TwoModeState = GaussianState<Scalar, 2>;

/// Direct sum of [[0, 1], [-1, 0]] blocks.
template <class Scalar, int Modes>
Eigen::Matrix<Scalar, 2 * Modes, 2 * Modes> symplectic_form() {
  Eigen::Matrix<Scalar, 2 * Modes, 2 * Modes> omega =
      Eigen::Matrix<Scalar, 2 * Modes, 2 * Modes>::Zero();
  for (int k = 0; k < Modes; ++k) {
    omega(2 * k, 2 * k + 1) = Scalar(1);
    omega(2 * k + 1, 2 * k) = Scalar(-1);
  }
  return omega;
}

template <class Scalar = double>
SingleModeState<Scalar> make_vacuum() {
  return {};
}

template <class Scalar = double>
SingleModeState<Scalar> make_thermal(Scalar nbar) {
  if (!(nbar >= Scalar(0))) {
    throw InvalidArgument("make_thermal: mean occupation must be >= 0");
  }
  using State = SingleModeState<Scalar>;
  return {State::Vector::Zero(), (Scalar(2) * nbar + Scalar(1)) * State::Matrix::Identity()};
}

/// Symplectic eigenvalues in ascending order.
///
/// One mode: sqrt(det sigma). Two modes: the moduli of the eigenvalues of the
/// Hermitian matrix i sigma^1/2 Omega sigma^1/2, which stay accurate when the
/// two eigenvalues coincide (the quartic's discriminant does not).
template <class Scalar, int Modes>
std::array<Scalar, Modes> symplectic_spectrum(
    const Eigen::Matrix<Scalar, 2 * Modes, 2 * Modes>& sigma) {
  using std::sqrt;
  if constexpr (Modes == 1) {
    const Scalar det = sigma.determinant();
    return {sqrt(det > Scalar(0) ? det : Scalar(0))};
  } else {
    using Matrix = Eigen::Matrix<Scalar, 4, 4>;
    using Complex = std::complex<Scalar>;
    using CMatrix = Eigen::Matrix<Complex, 4, 4>;
    const Matrix sym = Scalar(0.5) * (sigma + sigma.transpose());
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
    Eigen::Matrix<Scalar, 4, 1> w = eig.eigenvalues();
    for (int i = 0; i < 4; ++i) w(i) = w(i) > Scalar(0) ? sqrt(w(i)) : Scalar(0);
    const Matrix root = eig.eigenvectors() * w.asDiagonal() * eig.eigenvectors().transpose();
    const Matrix k = root * symplectic_form<Scalar, 2>() * root;
    const CMatrix h = Complex(0, 1) * k.template cast<Complex>();
    const Eigen::SelfAdjointEigenSolver<CMatrix> heig(h, Eigen::EigenvaluesOnly);
    // Eigenvalues come as -nu_2, -nu_1, nu_1, nu_2.
    const auto& ev = heig.eigenvalues();
    const Scalar nu1 = Scalar(0.5) * (ev(2) - ev(1));
    const Scalar nu2 = Scalar(0.5) * (ev(3) - ev(0));
    return {nu1, nu2};
  }
}

template <class Scalar, int Modes>
std::array<Scalar, Modes> symplectic_spectrum(const GaussianState<Scalar, Modes>& s) {
  return symplectic_spectrum<Scalar, Modes>(s.covariance());
}

/// nu = sqrt(det sigma) of a single-mode state.
template <class Scalar>
Scalar symplectic_eigenvalue(const SingleModeState<Scalar>& s) {
  const Scalar nu = symplectic_spectrum(s)[0];
  if (nu < Scalar(1) - Scalar(kPhysicalityTol)) {
    std::ostringstream msg;
    msg << "symplectic_eigenvalue: nu = " << static_cast<double>(nu) << " < 1, state is unphysical";
    throw NumericError(msg.str());
  }
  return nu;
}

/// Tr rho^2 = (det sigma)^(-1/2).
template <class Scalar>
Scalar purity(const SingleModeState<Scalar>& s) {
  const Scalar det = s.covariance().determinant();
  if (det < Scalar(1) - Scalar(kPhysicalityTol)) {
    std::ostringstream msg;
    msg << "purity: det sigma = " << static_cast<double>(det) << " < 1, state is unphysical";
    throw NumericError(msg.str());
  }
  using std::sqrt;
  return Scalar(1) / sqrt(det > Scalar(1) ? det : Scalar(1));
}

/// Entropy (nats) of a mode with symplectic eigenvalue nu.
///
/// Evaluated as g(n) = log1p(n) + n log1p(1/n), n = (nu - 1) / 2, which is the
/// same function as ((nu+1)/2) ln((nu+1)/2) - ((nu-1)/2) ln((nu-1)/2) without
/// the cancellation between the two large terms at high occupation.
template <class Scalar>
Scalar entropy_from_symplectic(Scalar nu) {
  using std::log1p;
  if (nu < Scalar(1) - Scalar(kPhysicalityTol)) {
    throw NumericError("von_neumann_entropy: symplectic eigenvalue below 1");
  }
  const Scalar excess = nu - Scalar(1);
  if (excess < Scalar(1e-12)) {
    // n ln n -> 0; what remains is log1p(n) ~ n, below 1e-12.
    return excess > Scalar(0) ? log1p(excess / Scalar(2)) : Scalar(0);
  }
  const Scalar n = excess / Scalar(2);
  return log1p(n) + n * log1p(Scalar(1) / n);
}

template <class Scalar>
Scalar von_neumann_entropy(const SingleModeState<Scalar>& s) {
  return entropy_from_symplectic(symplectic_eigenvalue(s));
}

/// <a^dagger a> = (sigma_11 + sigma_22 + d_1^2 + d_2^2 - 2) / 4.
template <class Scalar>
Scalar mean_photon_number(const SingleModeState<Scalar>& s) {
  const auto& sigma = s.covariance();
  const Scalar n = (sigma.trace() + s.mean().squaredNorm() - Scalar(2)) / Scalar(4);
  if (n < Scalar(-1e-12)) {
    throw NumericError("mean_photon_number: negative occupation, state is unphysical");
  }
  return n > Scalar(0) ? n : Scalar(0);
}

struct PhysicalityReport {
  bool physical = true;
  std::string diagnostic;
  explicit operator bool() const noexcept { return physical; }
};

/// Checks symmetry, positive semidefiniteness and the uncertainty principle
/// (every symplectic eigenvalue >= 1) of a raw covariance matrix.
template <class Scalar, int Dim>
PhysicalityReport check_physicality(const Eigen::Matrix<Scalar, Dim, Dim>& sigma) {
  static_assert(Dim == 2 || Dim == 4, "covariance must be 2x2 or 4x4");
  constexpr int modes = Dim / 2;
  using std::abs;
  PhysicalityReport report;
  auto fail = [&report](const std::string& why) {
    report.physical = false;
    if (!report.diagnostic.empty()) report.diagnostic += "; ";
    report.diagnostic += why;
  };

  if (!sigma.allFinite()) {
    fail("covariance has non-finite entries");
    return report;
  }
  Scalar asym(0);
  for (int i = 0; i < Dim; ++i) {
    for (int j = i + 1; j < Dim; ++j) {
      const Scalar diff = abs(sigma(i, j) - sigma(j, i));
      if (diff > asym) asym = diff;
    }
  }
  if (asym > Scalar(1e-12)) {
    std::ostringstream msg;
    msg << "covariance not symmetric (max |s_ij - s_ji| = " << static_cast<double>(asym) << ")";
    fail(msg.str());
    return report;
  }

  const Eigen::Matrix<Scalar, Dim, Dim> sym = (sigma + sigma.transpose()) / Scalar(2);
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Scalar, Dim, Dim>> eig(sym, Eigen::EigenvaluesOnly);
  const Scalar min_eig = eig.eigenvalues().minCoeff();
  if (min_eig < -Scalar(kPhysicalityTol)) {
    std::ostringstream msg;
    msg << "covariance not positive semidefinite (min eigenvalue " << static_cast<double>(min_eig) << ")";
    fail(msg.str());
  }

  const auto spectrum = symplectic_spectrum<Scalar, modes>(sym);
  for (int k = 0; k < modes; ++k) {
    if (spectrum[k] < Scalar(1) - Scalar(kPhysicalityTol)) {
      std::ostringstream msg;
      msg << "symplectic eigenvalue " << static_cast<double>(spectrum[k])
          << " < 1 violates the uncertainty principle";
      fail(msg.str());
      break;
    }
  }
  return report;
}

template <class Scalar, int Modes>
PhysicalityReport check_physicality(const GaussianState<Scalar, Modes>& s) {
  PhysicalityReport report = check_physicality<Scalar, 2 * Modes>(s.covariance());
  if (!s.mean().allFinite()) {
    report.physical = false;
    if (!report.diagnostic.empty()) report.diagnostic += "; ";
    report.diagnostic += "first moments have non-finite entries";
  }
  return report;
}

}  // namespace gaussmet
