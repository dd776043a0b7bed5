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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <string>

#include "cli.hpp"
#include "gaussmet/gaussmet.hpp"
#include "gaussmet/random.hpp"

namespace gaussmet::cli {
namespace {

class Checker {
 public:
  explicit Checker(std::ostream& out) : out_(out) {}

  void report(const std::string& name, bool ok, const std::string& detail) {
    out_ << (ok ? "PASS " : "FAIL ") << name << "  " << detail << '\n';
    all_ok_ = all_ok_ && ok;
  }

  bool all_ok() const { return all_ok_; }

 private:
  std::ostream& out_;
  bool all_ok_ = true;
};

std::string num(double v) { return format_double(v); }

double max_abs_diff(const SingleModeState<double>& a, const SingleModeState<double>& b) {
  return std::max((a.mean() - b.mean()).cwiseAbs().maxCoeff(),
                  (a.covariance() - b.covariance()).cwiseAbs().maxCoeff());
}

}  // namespace

bool selftest(std::ostream& out) {
  Checker check(out);
  std::mt19937_64 rng(20240917);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const auto s = random_single_mode_state(rng);
      const auto att = ChannelSpec<double>::attenuator(2.0 * std::numbers::pi * unit(rng), 2.0 * unit(rng));
      const auto amp = ChannelSpec<double>::amplifier(1.5 * unit(rng), 2.0 * unit(rng));
      worst = std::max(worst, max_abs_diff(apply_attenuator(s, att), attenuator_via_dilation(s, att)));
      worst = std::max(worst, max_abs_diff(apply_amplifier(s, amp), amplifier_via_dilation(s, amp)));
    }
    check.report("dilation-equivalence", worst <= 1e-12, "max|diff| = " + num(worst));
  }

  {
    double worst = 0.0;
    for (auto kind : {ChannelKind::kAttenuator, ChannelKind::kAmplifier}) {
      for (const auto& probe : standard_probes()) {
        for (int i = 0; i < 5; ++i) {
          const double param = kind == ChannelKind::kAttenuator ? 0.3 + 1.2 * i : 0.2 + 1.0 * i;
          for (double tau : {0.0, 5.0, 15.0, 30.0}) {
            const ChannelSpec<double> channel{kind, param, kPresetNbarEnv};
            const BathSpec<double> bath{kDefaultGamma, tau, 0.0};
            const double closed = qfi_closed_form(probe, channel, bath).total;
            const double oracle = qfi_fidelity_oracle(probe, channel, bath);
            worst = std::max(worst, std::abs(closed - oracle) / std::max(std::abs(closed), 1e-4));
          }
        }
      }
    }
    check.report("qfi-closed-form-vs-bures-oracle", worst <= 1e-4, "max rel err = " + num(worst));
  }

  {
    double worst = 0.0;
    for (int i = 0; i < 40; ++i) {
      const auto probe = standard_probes()[static_cast<std::size_t>(i % 3)];
      const ChannelSpec<double> channel = i % 2 == 0
                                              ? ChannelSpec<double>::attenuator(6.0 * unit(rng), unit(rng))
                                              : ChannelSpec<double>::amplifier(0.1 + 2.0 * unit(rng), unit(rng));
      const BathSpec<double> bath{kDefaultGamma, 20.0 * unit(rng), unit(rng)};
      const auto s0 = prepare_probe(probe);
      const auto der = channel_derivatives(s0, channel, bath);
      const double h = finite_difference_step(channel.param);
      const auto plus = evolve(probe, channel.with_param(channel.param + h), bath);
      const auto minus = evolve(probe, channel.with_param(channel.param - h), bath);
      const Eigen::Matrix2d fd_sigma = (plus.covariance() - minus.covariance()) / (2.0 * h);
      const double scale = std::max(1.0, der.sigma_dot.cwiseAbs().maxCoeff());
      worst = std::max(worst, (fd_sigma - der.sigma_dot).cwiseAbs().maxCoeff() / scale);
    }
    check.report("derivatives-vs-finite-differences", worst <= 1e-6, "max rel err = " + num(worst));
  }

  {
    const double alpha = calibrate_matched_alpha(kDefaultRIn);
    check.report("matched-coherence-calibration", alpha >= 1.037 && alpha <= 1.047,
                 "alpha_in(r_in = 0.5) = " + num(alpha));
  }

  {
    double worst = 0.0;
    for (int k = 0; k < 126; ++k) {
      const double theta = 0.05 * k;
      const double qfi = qfi_closed_form(ProbeSpec<double>::displaced(kDefaultAlphaIn),
                                         ChannelSpec<double>::attenuator(theta), BathSpec<double>::none())
                             .total;
      const double s = std::sin(theta);
      worst = std::max(worst, std::abs(qfi - kDefaultAlphaIn * kDefaultAlphaIn * s * s));
    }
    check.report("displaced-attenuator-closed-form", worst <= 1e-10, "max|err| = " + num(worst));
  }

  auto gain_at = [](const std::vector<SweepRecord>& records, ProbeKind probe, double param, double tau) {
    for (const auto& r : records) {
      if (r.probe == probe && std::abs(r.channel_param - param) < 1e-9 && r.tau == tau) return r.gain_db;
    }
    return std::optional<double>{};
  };

  {
    const auto records = run_sweep(*preset("paper-fig3"));
    bool ok = true;
    for (double theta : {1.55, 1.60}) {
      const auto g = gain_at(records, ProbeKind::kDisplaced, theta, 0.0);
      ok = ok && g && *g > 0.0;
    }
    for (double theta : {3.10, 3.15}) {
      const auto gs = gain_at(records, ProbeKind::kSqueezed, theta, 0.0);
      const auto gd = gain_at(records, ProbeKind::kDisplaced, theta, 0.0);
      ok = ok && gs && gd && *gs > *gd;
    }
    check.report("attenuator-gain-pattern", ok, "displaced wins near pi/2, squeezed near pi (tau = 0)");
  }

  {
    const auto records = run_sweep(*preset("paper-fig5"));
    double worst = -1e300;
    for (const auto& r : records) {
      if (r.probe == ProbeKind::kSqueezed && r.tau == 10.0 && r.gain_db) worst = std::max(worst, *r.gain_db);
    }
    check.report("amplifier-squeezed-no-advantage-at-tau-10", worst <= 0.0, "max gain = " + num(worst) + " dB");
  }

  {
    double worst = -1e300;
    for (const char* name : {"paper-fig2", "paper-fig4"}) {
      const auto records = run_sweep(*preset(name));
      for (std::size_t i = 1; i < records.size(); ++i) {
        const auto& prev = records[i - 1];
        const auto& cur = records[i];
        if (cur.probe == prev.probe && cur.channel_param == prev.channel_param) {
          worst = std::max(worst, cur.coherence - prev.coherence);
        }
      }
    }
    check.report("coherence-non-increasing-in-tau", worst <= 1e-10, "max increase = " + num(worst));
  }

  return check.all_ok();
}

}  // namespace gaussmet::cli
