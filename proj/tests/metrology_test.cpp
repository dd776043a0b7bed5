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

#include "gaussmet/metrology.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gaussmet/random.hpp"

using namespace gaussmet;

namespace {

constexpr double kPi = std::numbers::pi;

SingleModeState<double> displaced_vacuum(double x, double p) {
  return {Eigen::Vector2d(x, p), Eigen::Matrix2d::Identity()};
}

}  // namespace

TEST(Fidelity, KnownValues) {
  const auto vac = make_vacuum();
  EXPECT_NEAR(fidelity(vac, vac), 1.0, 1e-15);
  // exp(-|x|^2 / 4) between coherent states.
  EXPECT_NEAR(fidelity(vac, displaced_vacuum(1.0, 0.0)), 0.77880078307140487, 1e-15);
  EXPECT_NEAR(fidelity(displaced_vacuum(0.3, -0.4), displaced_vacuum(-0.3, 0.4)), std::exp(-0.25), 1e-15);
  // Fock-basis sum of sqrt(p_n q_n) for thermal states 0.3 and 1.7.
  EXPECT_NEAR(fidelity(make_thermal(0.3), make_thermal(1.7)), 0.74398804161303680, 1e-13);
  EXPECT_NEAR(fidelity(make_thermal(0.8), make_thermal(0.8)), 1.0, 1e-14);
}

TEST(Fidelity, SymmetricAndBounded) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const auto a = random_single_mode_state(rng);
    const auto b = random_single_mode_state(rng);
    const double fab = fidelity(a, b);
    EXPECT_NEAR(fab, fidelity(b, a), 1e-14);
    EXPECT_GE(fab, 0.0);
    EXPECT_LE(fab, 1.0 + 1e-12);
    EXPECT_NEAR(fidelity(a, a), 1.0, 1e-12);
  }
}

TEST(Fidelity, RejectsUnphysicalInput) {
  const SingleModeState<double> bad(Eigen::Vector2d::Zero(), 0.5 * Eigen::Matrix2d::Identity());
  EXPECT_THROW(fidelity(bad, make_vacuum()), NumericError);
}

TEST(BuresDistance, Values) {
  EXPECT_NEAR(bures_distance(make_vacuum(), make_vacuum()), 0.0, 1e-7);
  const double f = std::exp(-0.25);
  EXPECT_NEAR(bures_distance(make_vacuum(), displaced_vacuum(1.0, 0.0)),
              std::sqrt(2.0) * std::sqrt(1.0 - std::sqrt(f)), 1e-15);
}

TEST(QfiClosedForm, DisplacedProbeThroughPureLoss) {
  // alpha^2 sin^2(theta): only the first moment carries information.
  for (double theta : {0.1, 0.7, 1.3, 2.0, 4.0}) {
    const auto q = qfi_closed_form(ProbeSpec<double>::displaced(1.04), ChannelSpec<double>::attenuator(theta),
                                   BathSpec<double>::none());
    EXPECT_NEAR(q.total, 1.04 * 1.04 * std::sin(theta) * std::sin(theta), 1e-14) << theta;
    EXPECT_NEAR(q.term_sigma, 0.0, 1e-15);
    EXPECT_NEAR(q.term_purity, 0.0, 1e-15);
  }
}

TEST(QfiClosedForm, VacuumThroughPureLossCarriesNothing) {
  for (double theta : {0.0, 0.4, kPi / 2, 3.0}) {
    const auto q = qfi_closed_form(ProbeSpec<double>::vacuum(), ChannelSpec<double>::attenuator(theta),
                                   BathSpec<double>::none());
    EXPECT_NEAR(q.total, 0.0, 1e-15);
  }
}

TEST(QfiClosedForm, ThermalEnvironmentMakesVacuumInformative) {
  const auto q = qfi_closed_form(ProbeSpec<double>::vacuum(), ChannelSpec<double>::attenuator(0.7, 0.1),
                                 BathSpec<double>::none());
  EXPECT_GT(q.total, 0.0);
  EXPECT_NEAR(q.term_displacement, 0.0, 0.0);
}

TEST(QfiClosedForm, VacuumThroughQuantumLimitedAmplifier) {
  // Output is thermal with nbar = sinh^2 r; the QFI of a thermal family in its
  // mean photon number is n'^2 / (n (n + 1)) = 4 for every r.
  for (double r : {0.3, 0.9, 1.7}) {
    const auto q =
        qfi_closed_form(ProbeSpec<double>::vacuum(), ChannelSpec<double>::amplifier(r), BathSpec<double>::none());
    EXPECT_NEAR(q.total, 4.0, 1e-12) << r;
  }
}

TEST(QfiClosedForm, MatchesFidelityOracleOnRandomConfigurations) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    ProbeSpec<double> probe;
    switch (i % 3) {
      case 0: probe = ProbeSpec<double>::vacuum(); break;
      case 1: probe = ProbeSpec<double>::displaced(2.0 * unit(rng)); break;
      default: probe = ProbeSpec<double>::squeezed(unit(rng)); break;
    }
    const ChannelSpec<double> channel = i % 2 ? ChannelSpec<double>::attenuator(0.05 + 6.0 * unit(rng), unit(rng))
                                              : ChannelSpec<double>::amplifier(0.05 + 2.0 * unit(rng), unit(rng));
    const BathSpec<double> bath{0.05, 30.0 * unit(rng), unit(rng)};
    const double closed = qfi_closed_form(probe, channel, bath).total;
    const double oracle = qfi_fidelity_oracle(probe, channel, bath);
    EXPECT_LE(std::abs(closed - oracle), 1e-4 * std::max(1e-4, std::abs(oracle)))
        << "probe=" << to_string(probe.kind) << " param=" << channel.param << " tau=" << bath.t;
    ++checked;
  }
  EXPECT_EQ(checked, 100);
}

// At a pure output point the purity term takes its limiting value; the
// oracle has no such special case.
TEST(QfiClosedForm, PurePointLimitMatchesOracle) {
  for (double r_in : {0.0, 0.5, 1.0}) {
    const auto probe = ProbeSpec<double>::squeezed(r_in);
    const auto channel = ChannelSpec<double>::attenuator(0.0, 0.2);
    const auto q = qfi_closed_form(probe, channel, BathSpec<double>::none());
    const double oracle = qfi_fidelity_oracle(probe, channel, BathSpec<double>::none());
    EXPECT_NEAR(q.total, oracle, 1e-4 * std::max(1e-4, oracle)) << r_in;
    EXPECT_GE(q.term_purity, 0.0);
  }
}

TEST(QfiClosedForm, NeverNegative) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const ProbeSpec<double> probe{static_cast<ProbeKind>(i % 3), 2.0 * unit(rng), unit(rng)};
    const ChannelSpec<double> channel = i % 2 ? ChannelSpec<double>::attenuator(7.0 * unit(rng), unit(rng))
                                              : ChannelSpec<double>::amplifier(5.5 * unit(rng), unit(rng));
    const auto q = qfi_closed_form(probe, channel, BathSpec<double>{0.05, 30.0 * unit(rng), unit(rng)});
    EXPECT_GE(q.term_sigma, 0.0);
    EXPECT_GE(q.term_purity, 0.0);
    EXPECT_GE(q.term_displacement, 0.0);
    EXPECT_GE(q.total, 0.0);
  }
}

TEST(EstimationGain, Values) {
  EXPECT_DOUBLE_EQ(estimation_gain(2.0, 1.0), 10.0 * std::log10(2.0));
  EXPECT_DOUBLE_EQ(estimation_gain(10.0, 1.0), 10.0);
  EXPECT_DOUBLE_EQ(estimation_gain(1.0, 1.0), 0.0);
  EXPECT_THROW(estimation_gain(1.0, 0.0), NumericError);
  EXPECT_THROW(estimation_gain(0.0, 1.0), NumericError);
}

TEST(CramerRaoBound, Values) {
  EXPECT_NEAR(cramer_rao_bound(1.0816, 100), 9.2455621301775148e-3, 1e-18);
  EXPECT_DOUBLE_EQ(cramer_rao_bound(4.0, 1), 0.25);
  EXPECT_THROW(cramer_rao_bound(1.0, 0), InvalidArgument);
  EXPECT_THROW(cramer_rao_bound(0.0, 10), NumericError);
}
