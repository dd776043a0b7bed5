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

// Probe preparation, the thermal attenuator and thermal amplifier channels,
// the Markovian bath, and analytic parameter derivatives of the composed
// pipeline  probe -> channel -> bath.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <string_view>

#include "gaussmet/errors.hpp"
#include "gaussmet/gaussian_state.hpp"

namespace gaussmet {

enum class ProbeKind { kVacuum, kDisplaced, kSqueezed };
enum class ChannelKind { kAttenuator, kAmplifier };

inline std::string_view to_string(ProbeKind kind) {
  switch (kind) {
    case ProbeKind::kVacuum: return "vacuum";
    case ProbeKind::kDisplaced: return "displaced";
    case ProbeKind::kSqueezed: return "squeezed";
  }
  return "unknown";
}

inline std::string_view to_string(ChannelKind kind) {
  return kind == ChannelKind::kAttenuator ? "attenuator" : "amplifier";
}

inline ProbeKind parse_probe_kind(std::string_view name) {
  if (name == "vacuum") return ProbeKind::kVacuum;
  if (name == "displaced") return ProbeKind::kDisplaced;
  if (name == "squeezed") return ProbeKind::kSqueezed;
  throw InvalidArgument("unknown probe kind '" + std::string(name) + "'");
}

inline ChannelKind parse_channel_kind(std::string_view name) {
  if (name == "attenuator") return ChannelKind::kAttenuator;
  if (name == "amplifier") return ChannelKind::kAmplifier;
  throw InvalidArgument("unknown channel kind '" + std::string(name) + "'");
}

/// How the probe is made from the vacuum. alpha_in is the first-moment
/// amplitude d_1 of the displaced probe; r_in the quadrature squeezing
/// (sigma = diag(e^{-2 r_in}, e^{2 r_in})). Vacuum ignores both.
template <class Scalar = double>
struct ProbeSpec {
  ProbeKind kind = ProbeKind::kVacuum;
  Scalar alpha_in = Scalar(0);
  Scalar r_in = Scalar(0);

  static ProbeSpec vacuum() { return {}; }
  static ProbeSpec displaced(Scalar alpha) { return {ProbeKind::kDisplaced, alpha, Scalar(0)}; }
  static ProbeSpec squeezed(Scalar r) { return {ProbeKind::kSqueezed, Scalar(0), r}; }

  template <class T>
  ProbeSpec<T> cast() const {
    return {kind, static_cast<T>(alpha_in), static_cast<T>(r_in)};
  }
};

/// Attenuator: param is the beam-splitter angle theta (eta = cos^2 theta).
/// Amplifier: param is the two-mode squeezing r >= 0 (g = cosh^2 r).
template <class Scalar = double>
struct ChannelSpec {
  ChannelKind kind = ChannelKind::kAttenuator;
  Scalar param = Scalar(0);
  Scalar nbar_env = Scalar(0);

  static ChannelSpec attenuator(Scalar theta, Scalar nbar = Scalar(0)) {
    return {ChannelKind::kAttenuator, theta, nbar};
  }
  static ChannelSpec amplifier(Scalar r, Scalar nbar = Scalar(0)) {
    return {ChannelKind::kAmplifier, r, nbar};
  }

  ChannelSpec with_param(Scalar p) const { return {kind, p, nbar_env}; }

  template <class T>
  ChannelSpec<T> cast() const {
    return {kind, static_cast<T>(param), static_cast<T>(nbar_env)};
  }
};

/// Markovian thermal bath acting for a time t at rate gamma.
template <class Scalar = double>
struct BathSpec {
  Scalar gamma = Scalar(0);
  Scalar t = Scalar(0);
  Scalar nbar_th = Scalar(0);

  static BathSpec none() { return {}; }

  /// mu = exp(-gamma t).
  Scalar transmission() const {
    using std::exp;
    return exp(-gamma * t);
  }

  template <class T>
  BathSpec<T> cast() const {
    return {static_cast<T>(gamma), static_cast<T>(t), static_cast<T>(nbar_th)};
  }
};

namespace detail {

template <class Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
template <class Scalar>
using Mat2 = Eigen::Matrix<Scalar, 2, 2>;

/// Closed-form adjugate inverse; det >= 1e-12 or NumericError.
template <class Scalar>
Mat2<Scalar> inverse2x2(const Mat2<Scalar>& m) {
  const Scalar det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  if (!(det >= Scalar(1e-12))) {
    throw NumericError("singular covariance matrix (det < 1e-12)");
  }
  Mat2<Scalar> inv;
  inv << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
  return inv / det;
}

/// Channel as d -> m(p) d, sigma -> m(p)^2 sigma + k(p) (2 nbar + 1) I, with
/// first and second derivatives of m and k in the channel parameter p.
template <class Scalar>
struct ChannelCoefficients {
  Scalar m, dm, ddm;
  Scalar k, dk, ddk;
};

template <class Scalar>
ChannelCoefficients<Scalar> coefficients(const ChannelSpec<Scalar>& c) {
  using std::cos;
  using std::cosh;
  using std::sin;
  using std::sinh;
  const Scalar p = c.param;
  if (c.kind == ChannelKind::kAttenuator) {
    const Scalar cp = cos(p), sp = sin(p);
    return {cp, -sp, -cp, sp * sp, sin(Scalar(2) * p), Scalar(2) * cos(Scalar(2) * p)};
  }
  const Scalar ch = cosh(p), sh = sinh(p);
  return {ch, sh, ch, sh * sh, sinh(Scalar(2) * p), Scalar(2) * cosh(Scalar(2) * p)};
}

template <class Scalar>
void validate(const ChannelSpec<Scalar>& c) {
  using std::isfinite;
  if (!isfinite(c.param)) throw InvalidArgument("channel parameter must be finite");
  if (!(c.nbar_env >= Scalar(0))) throw InvalidArgument("environment thermal number must be >= 0");
  if (c.kind == ChannelKind::kAmplifier && c.param < Scalar(0)) {
    throw InvalidArgument("amplifier squeezing r must be >= 0");
  }
}

template <class Scalar>
void validate(const BathSpec<Scalar>& b) {
  if (!(b.gamma >= Scalar(0)) || !(b.t >= Scalar(0)) || !(b.nbar_th >= Scalar(0))) {
    throw InvalidArgument("bath gamma, t and nbar_th must all be >= 0");
  }
}

}  // namespace detail

template <class Scalar>
SingleModeState<Scalar> prepare_probe(const ProbeSpec<Scalar>& p) {
  using State = SingleModeState<Scalar>;
  using std::exp;
  switch (p.kind) {
    case ProbeKind::kVacuum:
      return {};
    case ProbeKind::kDisplaced:
      return {typename State::Vector(p.alpha_in, Scalar(0)), State::Matrix::Identity()};
    case ProbeKind::kSqueezed: {
      typename State::Matrix sigma = State::Matrix::Zero();
      sigma(0, 0) = exp(Scalar(-2) * p.r_in);
      sigma(1, 1) = exp(Scalar(2) * p.r_in);
      return {State::Vector::Zero(), sigma};
    }
  }
  throw InvalidArgument("prepare_probe: unknown probe kind");
}

/// d -> cos(theta) d, sigma -> cos^2(theta) sigma + sin^2(theta) (2N + 1) I.
/// The first-moment factor keeps the sign of cos(theta).
template <class Scalar>
SingleModeState<Scalar> apply_attenuator(const SingleModeState<Scalar>& s,
                                         const ChannelSpec<Scalar>& c) {
  if (c.kind != ChannelKind::kAttenuator) {
    throw InvalidArgument("apply_attenuator: channel is not an attenuator");
  }
  detail::validate(c);
  using std::cos;
  using std::sin;
  const Scalar m = cos(c.param), sn = sin(c.param);
  const Scalar noise = sn * sn * (Scalar(2) * c.nbar_env + Scalar(1));
  using State = SingleModeState<Scalar>;
  return {m * s.mean(), m * m * s.covariance() + noise * State::Matrix::Identity()};
}

/// d -> cosh(r) d, sigma -> cosh^2(r) sigma + sinh^2(r) (2N + 1) I.
template <class Scalar>
SingleModeState<Scalar> apply_amplifier(const SingleModeState<Scalar>& s,
                                        const ChannelSpec<Scalar>& c) {
  if (c.kind != ChannelKind::kAmplifier) {
    throw InvalidArgument("apply_amplifier: channel is not an amplifier");
  }
  detail::validate(c);
  using std::cosh;
  using std::sinh;
  const Scalar m = cosh(c.param), sh = sinh(c.param);
  const Scalar noise = sh * sh * (Scalar(2) * c.nbar_env + Scalar(1));
  using State = SingleModeState<Scalar>;
  return {m * s.mean(), m * m * s.covariance() + noise * State::Matrix::Identity()};
}

template <class Scalar>
SingleModeState<Scalar> apply_channel(const SingleModeState<Scalar>& s,
                                      const ChannelSpec<Scalar>& c) {
  return c.kind == ChannelKind::kAttenuator ? apply_attenuator(s, c) : apply_amplifier(s, c);
}

/// d -> sqrt(mu) d, sigma -> mu sigma + (1 - mu)(2 N_th + 1) I, mu = exp(-gamma t).
template <class Scalar>
SingleModeState<Scalar> apply_markovian_bath(const SingleModeState<Scalar>& s,
                                             const BathSpec<Scalar>& b) {
  detail::validate(b);
  using std::sqrt;
  const Scalar mu = b.transmission();
  const Scalar fill = (Scalar(1) - mu) * (Scalar(2) * b.nbar_th + Scalar(1));
  using State = SingleModeState<Scalar>;
  return {sqrt(mu) * s.mean(), mu * s.covariance() + fill * State::Matrix::Identity()};
}

/// prepare -> channel -> bath.
template <class Scalar>
SingleModeState<Scalar> evolve(const ProbeSpec<Scalar>& probe, const ChannelSpec<Scalar>& channel,
                               const BathSpec<Scalar>& bath) {
  return apply_markovian_bath(apply_channel(prepare_probe(probe), channel), bath);
}

namespace detail {

/// Tensors s with a thermal environment, applies the 4x4 symplectic and
/// traces out the environment.
template <class Scalar>
SingleModeState<Scalar> through_dilation(const SingleModeState<Scalar>& s, Scalar nbar_env,
                                         const Eigen::Matrix<Scalar, 4, 4>& symplectic) {
  using Two = TwoModeState<Scalar>;
  typename Two::Vector d = Two::Vector::Zero();
  d.template head<2>() = s.mean();
  typename Two::Matrix sigma = Two::Matrix::Zero();
  sigma.template block<2, 2>(0, 0) = s.covariance();
  sigma.template block<2, 2>(2, 2) = make_thermal<Scalar>(nbar_env).covariance();
  const Two joint(symplectic * d, symplectic * sigma * symplectic.transpose());
  return {joint.mean().template head<2>(), joint.covariance().template block<2, 2>(0, 0)};
}

}  // namespace detail

/// Attenuator as a beam splitter with a thermal environment mode.
template <class Scalar>
SingleModeState<Scalar> attenuator_via_dilation(const SingleModeState<Scalar>& s,
                                                const ChannelSpec<Scalar>& c) {
  if (c.kind != ChannelKind::kAttenuator) {
    throw InvalidArgument("attenuator_via_dilation: channel is not an attenuator");
  }
  detail::validate(c);
  using std::cos;
  using std::sin;
  const Scalar ct = cos(c.param), st = sin(c.param);
  const auto id = detail::Mat2<Scalar>::Identity();
  Eigen::Matrix<Scalar, 4, 4> bs;
  bs << ct * id, st * id, -st * id, ct * id;
  return detail::through_dilation(s, c.nbar_env, bs);
}

/// Amplifier as two-mode squeezing with a thermal environment mode.
template <class Scalar>
SingleModeState<Scalar> amplifier_via_dilation(const SingleModeState<Scalar>& s,
                                               const ChannelSpec<Scalar>& c) {
  if (c.kind != ChannelKind::kAmplifier) {
    throw InvalidArgument("amplifier_via_dilation: channel is not an amplifier");
  }
  detail::validate(c);
  using std::cosh;
  using std::sinh;
  const Scalar ch = cosh(c.param), sh = sinh(c.param);
  const auto id = detail::Mat2<Scalar>::Identity();
  detail::Mat2<Scalar> z = detail::Mat2<Scalar>::Zero();
  z(0, 0) = Scalar(1);
  z(1, 1) = Scalar(-1);
  Eigen::Matrix<Scalar, 4, 4> tms;
  tms << ch * id, sh * z, sh * z, ch * id;
  return detail::through_dilation(s, c.nbar_env, tms);
}

/// Output state of bath(channel(s0)) together with its first and second
/// derivatives in the channel parameter.
template <class Scalar>
struct ChannelDerivatives {
  SingleModeState<Scalar> state;
  detail::Vec2<Scalar> d_dot;
  detail::Mat2<Scalar> sigma_dot;
  detail::Mat2<Scalar> sigma_ddot;
  Scalar purity;
  Scalar purity_dot;
  Scalar purity_ddot;
};

template <class Scalar>
ChannelDerivatives<Scalar> channel_derivatives(const SingleModeState<Scalar>& s0,
                                               const ChannelSpec<Scalar>& c,
                                               const BathSpec<Scalar>& b) {
  detail::validate(c);
  detail::validate(b);
  using std::sqrt;
  const auto k = detail::coefficients(c);
  const Scalar mu = b.transmission();
  const Scalar env = Scalar(2) * c.nbar_env + Scalar(1);
  const auto id = detail::Mat2<Scalar>::Identity();
  const auto& sigma0 = s0.covariance();

  const Scalar m2 = k.m * k.m;
  const Scalar dm2 = Scalar(2) * k.m * k.dm;
  const Scalar ddm2 = Scalar(2) * (k.dm * k.dm + k.m * k.ddm);

  const detail::Mat2<Scalar> sigma =
      mu * (m2 * sigma0 + k.k * env * id) + (Scalar(1) - mu) * (Scalar(2) * b.nbar_th + Scalar(1)) * id;
  const SingleModeState<Scalar> out(sqrt(mu) * k.m * s0.mean(), sigma);

  ChannelDerivatives<Scalar> r{out,
                               sqrt(mu) * k.dm * s0.mean(),
                               mu * (dm2 * sigma0 + k.dk * env * id),
                               mu * (ddm2 * sigma0 + k.ddk * env * id),
                               Scalar(0),
                               Scalar(0),
                               Scalar(0)};

  // Jacobi: d ln P = -1/2 Tr(sigma^-1 dsigma),
  // d^2 ln P = -1/2 [Tr(sigma^-1 d2sigma) - Tr((sigma^-1 dsigma)^2)].
  const detail::Mat2<Scalar> inv = detail::inverse2x2<Scalar>(out.covariance());
  const detail::Mat2<Scalar> a = inv * r.sigma_dot;
  const Scalar g1 = a.trace();
  const Scalar g2 = (inv * r.sigma_ddot).trace();
  const Scalar h = (a * a).trace();
  r.purity = purity(out);
  r.purity_dot = Scalar(-0.5) * r.purity * g1;
  r.purity_ddot = r.purity * (Scalar(-0.5) * (g2 - h) + Scalar(0.25) * g1 * g1);
  return r;
}

/// Default central-difference step for a parameter value.
inline double finite_difference_step(double param) {
  return 1e-5 * std::max(1.0, std::abs(param));
}

/// (M, N) of the Gaussian map d -> M d, sigma -> M sigma M^T + N.
template <class Scalar = double>
struct ChannelMatrices {
  detail::Mat2<Scalar> m;
  detail::Mat2<Scalar> n;
};

template <class Scalar>
ChannelMatrices<Scalar> channel_matrices(const ChannelSpec<Scalar>& c) {
  detail::validate(c);
  const auto k = detail::coefficients(c);
  const auto id = detail::Mat2<Scalar>::Identity();
  return {k.m * id, k.k * (Scalar(2) * c.nbar_env + Scalar(1)) * id};
}

/// Complete positivity: N + i Omega - i M Omega M^T >= 0 (eigenvalues of the
/// Hermitian matrix >= -1e-9).
template <class Scalar>
bool cptp_check(const detail::Mat2<Scalar>& m, const detail::Mat2<Scalar>& n) {
  using Complex = std::complex<Scalar>;
  using CMat = Eigen::Matrix<Complex, 2, 2>;
  const auto omega = symplectic_form<Scalar, 1>();
  const CMat h = n.template cast<Complex>() +
                 Complex(0, 1) * (omega - m * omega * m.transpose()).template cast<Complex>();
  const Eigen::SelfAdjointEigenSolver<CMat> eig(h, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff() >= Scalar(-kPhysicalityTol);
}

template <class Scalar>
bool cptp_check(const ChannelSpec<Scalar>& c) {
  const auto mats = channel_matrices(c);
  return cptp_check<Scalar>(mats.m, mats.n);
}

}  // namespace gaussmet
