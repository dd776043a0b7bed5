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

// Gaussian fidelity, Bures distance and the quantum Fisher information (QFI)
// of single-mode states along a channel parameter.

#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>

#include "gaussmet/channels.hpp"
#include "gaussmet/errors.hpp"
#include "gaussmet/gaussian_state.hpp"

namespace gaussmet {

/// Uhlmann fidelity of two single-mode Gaussian states,
///
///   F = 2 / (sqrt(D + d) - sqrt(d)) * exp(-1/2 x^T (Sa + Sb)^-1 x)
///
/// with D = det(Sa + Sb), d = (det Sa - 1)(det Sb - 1), x = da - db. The
/// prefactor is evaluated as 2 (sqrt(D + d) + sqrt(d)) / D, which avoids the
/// cancellation between sqrt(D + d) and sqrt(d) for strongly mixed states.
template <class Scalar>
Scalar fidelity(const SingleModeState<Scalar>& a, const SingleModeState<Scalar>& b) {
  using std::exp;
  using std::sqrt;
  const Scalar det_a = a.covariance().determinant();
  const Scalar det_b = b.covariance().determinant();
  if (det_a < Scalar(1) - Scalar(kPhysicalityTol) || det_b < Scalar(1) - Scalar(kPhysicalityTol)) {
    throw NumericError("fidelity: unphysical input state");
  }
  const detail::Mat2<Scalar> sum = a.covariance() + b.covariance();
  const Scalar big_delta = sum.determinant();
  const detail::Mat2<Scalar> inv = detail::inverse2x2<Scalar>(sum);
  Scalar small_delta = (det_a - Scalar(1)) * (det_b - Scalar(1));
  if (small_delta < Scalar(0)) small_delta = Scalar(0);
  const Scalar prefactor = Scalar(2) * (sqrt(big_delta + small_delta) + sqrt(small_delta)) / big_delta;
  const detail::Vec2<Scalar> x = a.mean() - b.mean();
  return prefactor * exp(Scalar(-0.5) * x.dot(inv * x));
}

/// sqrt(2) sqrt(1 - sqrt(F)).
template <class Scalar>
Scalar bures_distance(const SingleModeState<Scalar>& a, const SingleModeState<Scalar>& b) {
  using std::sqrt;
  const Scalar root_f = sqrt(fidelity(a, b));
  const Scalar gap = Scalar(1) - root_f;
  return sqrt(Scalar(2)) * sqrt(gap > Scalar(0) ? gap : Scalar(0));
}

template <class Scalar = double>
struct QfiBreakdown {
  Scalar term_sigma = Scalar(0);
  Scalar term_purity = Scalar(0);
  Scalar term_displacement = Scalar(0);
  Scalar total = Scalar(0);
};

/// Below this value of 1 - P^4 the state is treated as pure and the purity
/// term is replaced by its limit.
inline constexpr double kPureStateThreshold = 1e-10;

/// QFI from the output state and its parameter derivatives:
///
///   I = 1/2 Tr[(S^-1 S')^2] / (1 + P^2) + 2 P'^2 / (1 - P^4) + d'^T S^-1 d'.
///
/// At a pure point P' = 0 and 1 - P^4 = 0 simultaneously; the purity term is
/// then continued by its limit -P'' (L'Hopital twice), which is also the value
/// the fidelity expansion produces there.
template <class Scalar>
QfiBreakdown<Scalar> qfi_from_derivatives(const ChannelDerivatives<Scalar>& der) {
  using std::abs;
  const auto& sigma = der.state.covariance();
  const detail::Mat2<Scalar> inv = detail::inverse2x2<Scalar>(sigma);
  const detail::Mat2<Scalar> a = inv * der.sigma_dot;
  const Scalar p = der.purity;

  QfiBreakdown<Scalar> q;
  q.term_sigma = Scalar(0.5) * (a * a).trace() / (Scalar(1) + p * p);

  const Scalar det = sigma.determinant();
  const Scalar one_minus_p4 = (det - Scalar(1)) * (det + Scalar(1)) / (det * det);
  if (one_minus_p4 < Scalar(kPureStateThreshold)) {
    if (one_minus_p4 <= Scalar(0) && abs(der.purity_dot) >= Scalar(1e-8)) {
      std::ostringstream msg;
      msg << "qfi: pure output state with first-order purity change P' = "
          << static_cast<double>(der.purity_dot);
      throw NumericError(msg.str());
    }
    q.term_purity = der.purity_ddot < Scalar(0) ? -der.purity_ddot : Scalar(0);
  } else {
    q.term_purity = Scalar(2) * der.purity_dot * der.purity_dot / one_minus_p4;
  }

  q.term_displacement = der.d_dot.dot(inv * der.d_dot) + Scalar(0);  // no -0 in output
  q.total = q.term_sigma + q.term_purity + q.term_displacement;
  return q;
}

/// Closed-form QFI of the channel parameter for probe -> channel -> bath.
template <class Scalar>
QfiBreakdown<Scalar> qfi_closed_form(const ProbeSpec<Scalar>& probe, const ChannelSpec<Scalar>& channel,
                                     const BathSpec<Scalar>& bath) {
  return qfi_from_derivatives(channel_derivatives(prepare_probe(probe), channel, bath));
}

/// QFI from the Bures distance between rho(p) and rho(p + eps):
/// I(eps) = 8 (1 - sqrt F) / eps^2, extrapolated once as 2 I(eps/2) - I(eps).
///
/// Shares no code with channel_derivatives(); states are propagated in
/// `Work` precision because 1 - sqrt F is O(eps^2).
template <class Work = long double>
double qfi_fidelity_oracle(const ProbeSpec<double>& probe, const ChannelSpec<double>& channel,
                           const BathSpec<double>& bath, double eps = 1e-4) {
  using std::sqrt;
  if (!(eps > 0.0)) throw InvalidArgument("qfi_fidelity_oracle: eps must be > 0");
  const auto p = probe.cast<Work>();
  const auto c = channel.cast<Work>();
  const auto b = bath.cast<Work>();
  const auto rho = evolve(p, c, b);
  auto estimate = [&](Work h) {
    const auto shifted = evolve(p, c.with_param(c.param + h), b);
    const Work f = fidelity(rho, shifted);
    return Work(8) * (Work(1) - f) / ((Work(1) + sqrt(f)) * h * h);
  };
  const Work coarse = estimate(Work(eps));
  const Work fine = estimate(Work(eps) / Work(2));
  return static_cast<double>(Work(2) * fine - coarse);
}

/// Parameter estimation gain in dB, 10 log10(I_c / I_wc).
inline double estimation_gain(double qfi_coherent, double qfi_thermal) {
  if (!(qfi_coherent > 0.0) || !(qfi_thermal > 0.0)) {
    std::ostringstream msg;
    msg << "estimation_gain: undefined for non-positive QFI (I_c = " << qfi_coherent
        << ", I_wc = " << qfi_thermal << ")";
    throw NumericError(msg.str());
  }
  return 10.0 * std::log10(qfi_coherent / qfi_thermal);
}

/// Quantum Cramer-Rao bound on the variance after n measurements, 1 / (n I).
inline double cramer_rao_bound(double qfi, std::int64_t n_measurements) {
  if (n_measurements < 1) throw InvalidArgument("cramer_rao_bound: need at least one measurement");
  if (!(qfi > 0.0)) throw NumericError("cramer_rao_bound: QFI must be > 0");
  return 1.0 / (static_cast<double>(n_measurements) * qfi);
}

}  // namespace gaussmet
