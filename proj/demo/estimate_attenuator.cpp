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

// How well can the beam-splitter angle of a thermal attenuator be estimated
// with a coherent probe, and how much does a thermalizing bath cost?

#include <cstdio>
#include <numbers>

#include "gaussmet/gaussmet.hpp"

int main() {
  using namespace gaussmet;
  const double alpha = calibrate_matched_alpha(kDefaultRIn);
  const auto displaced = ProbeSpec<double>::displaced(alpha);
  const auto squeezed = ProbeSpec<double>::squeezed(kDefaultRIn);

  std::printf("matched probes: alpha_in = %.6f, r_in = %.2f\n\n", alpha, kDefaultRIn);
  std::printf("%8s %6s %12s %12s %12s %14s\n", "theta", "tau", "I(vacuum)", "I(displaced)",
              "I(squeezed)", "CRB(disp,N=100)");
  for (double theta : {std::numbers::pi / 4, 1.55, 3.10}) {
    for (double tau : {0.0, 10.0}) {
      const auto channel = ChannelSpec<double>::attenuator(theta, kPresetNbarEnv);
      const BathSpec<double> bath{kDefaultGamma, tau, 0.0};
      const double vac = qfi_closed_form(ProbeSpec<double>::vacuum(), channel, bath).total;
      const double dis = qfi_closed_form(displaced, channel, bath).total;
      const double sq = qfi_closed_form(squeezed, channel, bath).total;
      std::printf("%8.4f %6.1f %12.6f %12.6f %12.6f %14.3e\n", theta, tau, vac, dis, sq,
                  cramer_rao_bound(dis, 100));
    }
  }
  return 0;
}
