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

// Relative entropy of coherence of single-mode Gaussian states, measured
// against the thermal state of equal mean energy (the closest incoherent
// Gaussian state in the Fock basis).

#pragma once

#include <cmath>
#include <sstream>

#include "gaussmet/channels.hpp"
#include "gaussmet/errors.hpp"
#include "gaussmet/gaussian_state.hpp"

namespace gaussmet {

struct CoherenceReport {
  double coherence = 0.0;
  double nbar_ref = 0.0;
  double entropy_state = 0.0;
  double entropy_ref = 0.0;
};

/// C = S(zeta) - S(rho), zeta thermal with
/// nbar = (sigma_11 + sigma_22 + d_1^2 + d_2^2 - 2) / 4.
inline CoherenceReport relative_entropy_coherence(const SingleModeState<double>& s) {
  CoherenceReport r;
  r.entropy_state = von_neumann_entropy(s);
  r.nbar_ref = mean_photon_number(s);
  r.entropy_ref = entropy_from_symplectic(2.0 * r.nbar_ref + 1.0);
  const double c = r.entropy_ref - r.entropy_state;
  if (c < -1e-12) {
    std::ostringstream msg;
    msg << "relative_entropy_coherence: negative coherence " << c;
    throw NumericError(msg.str());
  }
  r.coherence = c > 0.0 ? c : 0.0;
  return r;
}

/// Coherence of the state at the end of the pipeline.
inline double pipeline_coherence(const ProbeSpec<double>& probe, const ChannelSpec<double>& channel,
                                 const BathSpec<double>& bath) {
  return relative_entropy_coherence(evolve(probe, channel, bath)).coherence;
}

/// Displacement amplitude whose probe carries the same coherence as the
/// squeezed probe with squeezing r_in. Solved by bisection on [0, 10] and
/// cross-checked against the closed form 2 sinh(r_in).
inline double calibrate_matched_alpha(double r_in) {
  if (!(r_in >= 0.0)) throw InvalidArgument("calibrate_matched_alpha: r_in must be >= 0");
  const double target =
      relative_entropy_coherence(prepare_probe(ProbeSpec<double>::squeezed(r_in))).coherence;
  auto mismatch = [target](double alpha) {
    return relative_entropy_coherence(prepare_probe(ProbeSpec<double>::displaced(alpha))).coherence -
           target;
  };

  double lo = 0.0;
  double hi = 10.0;
  if (mismatch(hi) < 0.0) {
    std::ostringstream msg;
    msg << "calibrate_matched_alpha: no root in [0, 10] for r_in = " << r_in;
    throw NumericError(msg.str());
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (mismatch(mid) < 0.0 ? lo : hi) = mid;
  }
  const double alpha = std::abs(mismatch(lo)) <= std::abs(mismatch(hi)) ? lo : hi;

  if (std::abs(mismatch(alpha)) > 1e-10) {
    throw NumericError("calibrate_matched_alpha: bisection did not reach |dC| <= 1e-10");
  }
  const double closed_form = 2.0 * std::sinh(r_in);
  if (std::abs(alpha - closed_form) > 1e-8) {
    std::ostringstream msg;
    msg << "calibrate_matched_alpha: bisection root " << alpha << " disagrees with 2 sinh(r_in) = "
        << closed_form;
    throw NumericError(msg.str());
  }
  return alpha;
}

/// dC/dparam of the pipeline output by central differences. Near r = 0 the
/// amplifier is not defined on both sides, so a second-order forward
/// difference is used there.
inline double coherence_derivative(const ProbeSpec<double>& probe, const ChannelSpec<double>& channel,
                                   const BathSpec<double>& bath) {
  const double p = channel.param;
  const double h = finite_difference_step(p);
  auto at = [&](double x) { return pipeline_coherence(probe, channel.with_param(x), bath); };
  if (channel.kind == ChannelKind::kAmplifier && p - h < 0.0) {
    return (-3.0 * at(p) + 4.0 * at(p + h) - at(p + 2.0 * h)) / (2.0 * h);
  }
  return (at(p + h) - at(p - h)) / (2.0 * h);
}

}  // namespace gaussmet
