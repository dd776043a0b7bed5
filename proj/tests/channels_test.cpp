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

#include "gaussmet/channels.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gaussmet/random.hpp"

using namespace gaussmet;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs_diff(const SingleModeState<double>& a, const SingleModeState<double>& b) {
  return std::max((a.mean() - b.mean()).cwiseAbs().maxCoeff(),
                  (a.covariance() - b.covariance()).cwiseAbs().maxCoeff());
}

const ProbeSpec<double> kProbes[] = {ProbeSpec<double>::vacuum(), ProbeSpec<double>::displaced(1.04),
                                     ProbeSpec<double>::squeezed(0.5)};

}  // namespace

TEST(PrepareProbe, Kinds) {
  const auto vac = prepare_probe(ProbeSpec<double>::vacuum());
  EXPECT_EQ(vac.mean(), Eigen::Vector2d::Zero());
  EXPECT_EQ(vac.covariance(), Eigen::Matrix2d::Identity());

  const auto disp = prepare_probe(ProbeSpec<double>::displaced(1.04));
  EXPECT_EQ(disp.mean(), Eigen::Vector2d(1.04, 0.0));
  EXPECT_EQ(disp.covariance(), Eigen::Matrix2d::Identity());

  const auto sq = prepare_probe(ProbeSpec<double>::squeezed(0.5));
  EXPECT_EQ(sq.mean(), Eigen::Vector2d::Zero());
  EXPECT_DOUBLE_EQ(sq.covariance()(0, 0), std::exp(-1.0));
  EXPECT_DOUBLE_EQ(sq.covariance()(1, 1), std::exp(1.0));
  EXPECT_EQ(sq.covariance()(0, 1), 0.0);
}

TEST(ApplyAttenuator, IdentityAtZeroAngle) {
  std::mt19937_64 rng(1);
  const auto s = random_single_mode_state(rng);
  EXPECT_LE(max_abs_diff(apply_attenuator(s, ChannelSpec<double>::attenuator(0.0, 0.7)), s), 1e-15);
}

TEST(ApplyAttenuator, FullSwapGivesEnvironment) {
  for (const auto& p : kProbes) {
    const auto out = apply_attenuator(prepare_probe(p), ChannelSpec<double>::attenuator(kPi / 2));
    EXPECT_LE(max_abs_diff(out, make_vacuum()), 1e-15);
  }
}

TEST(ApplyAttenuator, SqueezedAtQuarterTurn) {
  const auto out = apply_attenuator(prepare_probe(ProbeSpec<double>::squeezed(0.5)),
                                    ChannelSpec<double>::attenuator(kPi / 4));
  EXPECT_NEAR(out.covariance()(0, 0), (std::exp(-1.0) + 1.0) / 2.0, 1e-15);
  EXPECT_NEAR(out.covariance()(1, 1), (std::exp(1.0) + 1.0) / 2.0, 1e-15);
  EXPECT_NEAR(out.covariance()(0, 1), 0.0, 1e-15);
}

TEST(ApplyAttenuator, RejectsWrongKindAndNegativeNoise) {
  const auto s = make_vacuum();
  EXPECT_THROW(apply_attenuator(s, ChannelSpec<double>::amplifier(0.1)), InvalidArgument);
  EXPECT_THROW(apply_attenuator(s, ChannelSpec<double>::attenuator(0.1, -1.0)), InvalidArgument);
}

TEST(ApplyAmplifier, Values) {
  const auto s = make_vacuum();
  EXPECT_LE(max_abs_diff(apply_amplifier(s, ChannelSpec<double>::amplifier(0.0, 2.0)), s), 0.0);

  // cosh^2 r = 2: quantum-limited amplifier doubles the vacuum and adds one unit.
  const double r = std::acosh(std::sqrt(2.0));
  EXPECT_NEAR(r, 0.88137358701954302, 1e-15);
  const auto out = apply_amplifier(s, ChannelSpec<double>::amplifier(r));
  EXPECT_LE(max_abs_diff(out, make_thermal(1.0)), 1e-13);

  const auto disp = apply_amplifier(prepare_probe(ProbeSpec<double>::displaced(1.04)),
                                    ChannelSpec<double>::amplifier(0.5));
  // mpmath: 1.04 cosh(0.5) = 1.172731003814636...
  EXPECT_NEAR(disp.mean()(0), 1.1727310038146360, 1e-15);
  EXPECT_EQ(disp.mean()(1), 0.0);

  EXPECT_THROW(apply_amplifier(s, ChannelSpec<double>::amplifier(-0.1)), InvalidArgument);
  EXPECT_THROW(apply_amplifier(s, ChannelSpec<double>::attenuator(0.1)), InvalidArgument);
}

TEST(ApplyMarkovianBath, Values) {
  std::mt19937_64 rng(2);
  const auto s = random_single_mode_state(rng);
  EXPECT_LE(max_abs_diff(apply_markovian_bath(s, BathSpec<double>{0.05, 0.0, 1.0}), s), 0.0);
  EXPECT_LE(max_abs_diff(apply_markovian_bath(s, BathSpec<double>{0.05, 2000.0, 0.0}), make_vacuum()), 1e-15);

  const auto out = apply_markovian_bath(make_thermal(1.0), BathSpec<double>{0.05, 10.0, 0.0});
  // mpmath: 3 e^-0.5 + (1 - e^-0.5) = 2.213061319425266...
  EXPECT_NEAR(out.covariance()(0, 0), 2.2130613194252668, 1e-15);
  EXPECT_NEAR(out.covariance()(1, 1), 2.2130613194252668, 1e-15);

  EXPECT_THROW(apply_markovian_bath(s, BathSpec<double>{-1.0, 1.0, 0.0}), InvalidArgument);
}

TEST(Dilation, SpecialCases) {
  std::mt19937_64 rng(3);
  const auto s = random_single_mode_state(rng);
  EXPECT_LE(max_abs_diff(attenuator_via_dilation(s, ChannelSpec<double>::attenuator(0.0, 0.4)), s), 1e-15);
  EXPECT_LE(max_abs_diff(attenuator_via_dilation(s, ChannelSpec<double>::attenuator(kPi / 2, 0.4)),
                         make_thermal(0.4)),
            1e-15);
  EXPECT_LE(max_abs_diff(amplifier_via_dilation(s, ChannelSpec<double>::amplifier(0.0, 0.4)), s), 0.0);
  const double r = std::acosh(std::sqrt(2.0));
  EXPECT_LE(max_abs_diff(amplifier_via_dilation(make_vacuum(), ChannelSpec<double>::amplifier(r)),
                         make_thermal(1.0)),
            1e-14);
}

TEST(Dilation, MatchesDirectMapsOnRandomInputs) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto s = random_single_mode_state(rng);
    const auto att = ChannelSpec<double>::attenuator(2 * kPi * unit(rng), 3.0 * unit(rng));
    const auto amp = ChannelSpec<double>::amplifier(1.5 * unit(rng), 3.0 * unit(rng));
    worst = std::max(worst, max_abs_diff(apply_attenuator(s, att), attenuator_via_dilation(s, att)));
    worst = std::max(worst, max_abs_diff(apply_amplifier(s, amp), amplifier_via_dilation(s, amp)));
  }
  EXPECT_LE(worst, 1e-12);
  EXPECT_LE(max_abs_diff(apply_attenuator(make_vacuum(), ChannelSpec<double>::attenuator(0.7, 0.3)),
                         attenuator_via_dilation(make_vacuum(), ChannelSpec<double>::attenuator(0.7, 0.3))),
            1e-12);
  EXPECT_LE(max_abs_diff(apply_amplifier(make_thermal(0.2), ChannelSpec<double>::amplifier(0.8, 0.5)),
                         amplifier_via_dilation(make_thermal(0.2), ChannelSpec<double>::amplifier(0.8, 0.5))),
            1e-12);
}

TEST(Pipeline, OutputsArePhysical) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const auto s = random_single_mode_state(rng);
    const ChannelSpec<double> c = i % 2 ? ChannelSpec<double>::attenuator(7.0 * unit(rng), 2.0 * unit(rng))
                                        : ChannelSpec<double>::amplifier(3.0 * unit(rng), 2.0 * unit(rng));
    const auto out = apply_markovian_bath(apply_channel(s, c), BathSpec<double>{0.05, 40.0 * unit(rng), unit(rng)});
    const auto report = check_physicality(out);
    EXPECT_TRUE(report) << report.diagnostic;
  }
}

TEST(Attenuator, Periodicity) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 50; ++i) {
    const auto s = random_single_mode_state(rng);
    const double theta = 0.13 * i;
    const auto a = apply_attenuator(s, ChannelSpec<double>::attenuator(theta, 0.3));
    const auto b = apply_attenuator(s, ChannelSpec<double>::attenuator(theta + kPi, 0.3));
    const auto c = apply_attenuator(s, ChannelSpec<double>::attenuator(theta + 2 * kPi, 0.3));
    // cos(theta + pi) and -cos(theta) agree only up to the rounding of theta + pi,
    // scaled by the covariance entries (up to about 30 here).
    EXPECT_LE((a.covariance() - b.covariance()).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_LE((a.mean() + b.mean()).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_LE(max_abs_diff(a, c), 1e-13);
  }
}

TEST(Amplifier, NeverDecreasesDeterminant) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const auto s = random_single_mode_state(rng);
    const auto out = apply_amplifier(s, ChannelSpec<double>::amplifier(2.0 * unit(rng), 2.0 * unit(rng)));
    EXPECT_GE(out.covariance().determinant(), s.covariance().determinant() * (1 - 1e-14));
  }
}

TEST(ChannelDerivatives, VacuumThroughPureLossIsStationary) {
  const auto der = channel_derivatives(make_vacuum(), ChannelSpec<double>::attenuator(0.9), BathSpec<double>::none());
  EXPECT_LE(der.sigma_dot.cwiseAbs().maxCoeff(), 1e-16);
  EXPECT_LE(der.d_dot.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(der.purity_dot, 0.0);
}

TEST(ChannelDerivatives, DisplacedFirstMomentDerivative) {
  const auto der = channel_derivatives(prepare_probe(ProbeSpec<double>::displaced(1.04)),
                                       ChannelSpec<double>::attenuator(kPi / 4), BathSpec<double>::none());
  EXPECT_NEAR(der.d_dot(0), -std::sin(kPi / 4) * 1.04, 1e-15);
  EXPECT_EQ(der.d_dot(1), 0.0);
}

// Central differences (step 1e-5 max(1, |p|)) of the composed map against the
// analytic first and second derivatives.
TEST(ChannelDerivatives, MatchFiniteDifferencesOnGrid) {
  const BathSpec<double> baths[] = {BathSpec<double>::none(), BathSpec<double>{0.05, 10.0, 0.0},
                                    BathSpec<double>{0.05, 25.0, 0.4}};
  int checked = 0;
  for (auto kind : {ChannelKind::kAttenuator, ChannelKind::kAmplifier}) {
    for (int k = 0; k < 50; ++k) {
      const double param = kind == ChannelKind::kAttenuator ? 0.05 + 0.125 * k : 0.05 + 0.1 * k;
      for (const auto& probe : kProbes) {
        const auto& bath = baths[k % 3];
        const ChannelSpec<double> c{kind, param, 0.3};
        const auto der = channel_derivatives(prepare_probe(probe), c, bath);
        const double h = finite_difference_step(param);
        const auto plus = evolve(probe, c.with_param(param + h), bath);
        const auto minus = evolve(probe, c.with_param(param - h), bath);
        const auto mid = evolve(probe, c, bath);

        const Eigen::Matrix2d fd_sigma = (plus.covariance() - minus.covariance()) / (2 * h);
        const Eigen::Vector2d fd_d = (plus.mean() - minus.mean()) / (2 * h);
        const double fd_p = (purity(plus) - purity(minus)) / (2 * h);
        for (int i = 0; i < 4; ++i) {
          const double a = der.sigma_dot.data()[i], f = fd_sigma.data()[i];
          EXPECT_LE(std::abs(a - f), std::max(1e-9, 1e-6 * std::abs(a))) << "param=" << param;
        }
        for (int i = 0; i < 2; ++i) {
          EXPECT_LE(std::abs(der.d_dot(i) - fd_d(i)), std::max(1e-9, 1e-6 * std::abs(der.d_dot(i))));
        }
        EXPECT_LE(std::abs(der.purity_dot - fd_p), std::max(1e-9, 1e-6 * std::abs(der.purity_dot)));
        EXPECT_LE(max_abs_diff(der.state, mid), 1e-12 * std::max(1.0, mid.covariance().norm()));

        // Second derivative with a wider step; only a consistency check.
        const double h2 = 1e-3 * std::max(1.0, param);
        const auto p2 = evolve(probe, c.with_param(param + h2), bath);
        const auto m2 = evolve(probe, c.with_param(param - h2), bath);
        const Eigen::Matrix2d fd2 = (p2.covariance() - 2 * mid.covariance() + m2.covariance()) / (h2 * h2);
        EXPECT_LE((fd2 - der.sigma_ddot).cwiseAbs().maxCoeff(), 1e-4 * std::max(1.0, der.sigma_ddot.norm()));
        ++checked;
      }
    }
  }
  EXPECT_EQ(checked, 300);
}

TEST(CptpCheck, ChannelsAreCompletelyPositive) {
  for (int k = 0; k <= 40; ++k) {
    for (double n : {0.0, 0.5, 3.0}) {
      EXPECT_TRUE(cptp_check(ChannelSpec<double>::attenuator(0.16 * k, n)));
      EXPECT_TRUE(cptp_check(ChannelSpec<double>::amplifier(0.1 * k, n)));
    }
  }
}

TEST(CptpCheck, RejectsNegativeNoise) {
  EXPECT_FALSE(cptp_check<double>(Eigen::Matrix2d::Identity(), -0.5 * Eigen::Matrix2d::Identity()));
  // An ideal amplifier without added noise violates the bound.
  EXPECT_FALSE(cptp_check<double>(2.0 * Eigen::Matrix2d::Identity(), Eigen::Matrix2d::Zero()));
  EXPECT_TRUE(cptp_check<double>(Eigen::Matrix2d::Identity(), Eigen::Matrix2d::Zero()));
}
