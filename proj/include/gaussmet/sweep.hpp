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

// Grid sweeps of QFI, coherence and estimation gain over (channel parameter,
// thermalization time) for a list of probes.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "gaussmet/channels.hpp"
#include "gaussmet/coherence.hpp"
#include "gaussmet/errors.hpp"
#include "gaussmet/metrology.hpp"

namespace gaussmet {

inline constexpr double kDefaultAlphaIn = 1.04;
inline constexpr double kDefaultRIn = 0.5;
inline constexpr double kDefaultGamma = 0.05;
inline constexpr double kDefaultStep = 0.05;
inline constexpr double kAmplifierMaxR = 5.5;
/// Environment occupation used by the named presets. It must be > 0 for the
/// vacuum-probe attenuator QFI (the gain denominator) to be nonzero.
inline constexpr double kPresetNbarEnv = 0.1;
/// Gains are only reported when both QFIs exceed this.
inline constexpr double kGainQfiFloor = 1e-12;

struct SweepConfig {
  ChannelKind channel_kind = ChannelKind::kAttenuator;
  std::vector<ProbeSpec<double>> probes;
  double param_start = 0.0;
  double param_stop = 2.0 * std::numbers::pi;
  double param_step = kDefaultStep;
  std::vector<double> taus;
  double gamma = kDefaultGamma;
  double nbar_th = 0.0;
  double nbar_env = 0.0;
  std::string output_path;

  /// start + k * step for k = 0 .. floor((stop - start) / step), evaluated per
  /// index so that no rounding accumulates along the grid.
  std::vector<double> param_grid() const {
    const double span = (param_stop - param_start) / param_step;
    const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    std::vector<double> grid(count);
    for (std::size_t k = 0; k < count; ++k) {
      grid[k] = param_start + static_cast<double>(k) * param_step;
    }
    return grid;
  }

  std::vector<double> sorted_taus() const {
    std::vector<double> t = taus;
    std::sort(t.begin(), t.end());
    return t;
  }

  void validate() const {
    if (!(param_step > 0.0)) throw InvalidArgument("sweep: param_step must be > 0");
    if (!(param_stop >= param_start)) throw InvalidArgument("sweep: param_stop must be >= param_start");
    if (probes.empty()) throw InvalidArgument("sweep: probe list is empty");
    if (taus.empty()) throw InvalidArgument("sweep: tau list is empty");
    for (double t : taus) {
      if (!(t >= 0.0)) throw InvalidArgument("sweep: tau values must be >= 0");
    }
    if (!(gamma >= 0.0) || !(nbar_th >= 0.0) || !(nbar_env >= 0.0)) {
      throw InvalidArgument("sweep: gamma, nbar_th and nbar_env must be >= 0");
    }
    if (channel_kind == ChannelKind::kAmplifier && param_start < 0.0) {
      throw InvalidArgument("sweep: amplifier grid must start at r >= 0");
    }
  }
};

inline std::vector<ProbeSpec<double>> standard_probes() {
  return {ProbeSpec<double>::vacuum(), ProbeSpec<double>::displaced(kDefaultAlphaIn),
          ProbeSpec<double>::squeezed(kDefaultRIn)};
}

/// Sets the channel and its default parameter grid (theta in [0, 2 pi] or
/// r in [0, 5.5], step 0.05).
inline void set_channel_grid(SweepConfig& cfg, ChannelKind kind) {
  cfg.channel_kind = kind;
  cfg.param_start = 0.0;
  cfg.param_stop = kind == ChannelKind::kAttenuator ? 2.0 * std::numbers::pi : kAmplifierMaxR;
  cfg.param_step = kDefaultStep;
}

inline SweepConfig default_config(ChannelKind kind = ChannelKind::kAttenuator) {
  SweepConfig cfg;
  set_channel_grid(cfg, kind);
  cfg.probes = standard_probes();
  cfg.taus = {0.0, 10.0};
  return cfg;
}

inline std::vector<std::string_view> preset_names() {
  return {"paper-fig2", "paper-fig3", "paper-fig4", "paper-fig5", "paper-fig6"};
}

/// Named parameter sets: paper-fig2/4 are dense QFI maps (tau 0..30 in
/// steps of 2.5), paper-fig3/5 gain curves (tau 0 and 10), paper-fig6 the
/// QFI-vs-coherence curves (tau 0, 10, 30).
inline std::optional<SweepConfig> preset(std::string_view name) {
  std::vector<double> dense_taus;
  for (int k = 0; k <= 12; ++k) dense_taus.push_back(2.5 * k);

  SweepConfig cfg;
  if (name == "paper-fig2" || name == "paper-fig3" || name == "paper-fig6") {
    cfg = default_config(ChannelKind::kAttenuator);
  } else if (name == "paper-fig4" || name == "paper-fig5") {
    cfg = default_config(ChannelKind::kAmplifier);
  } else {
    return std::nullopt;
  }
  cfg.nbar_env = kPresetNbarEnv;
  if (name == "paper-fig2" || name == "paper-fig4") {
    cfg.taus = dense_taus;
  } else if (name == "paper-fig6") {
    cfg.taus = {0.0, 10.0, 30.0};
  } else {
    cfg.taus = {0.0, 10.0};
  }
  return cfg;
}

struct SweepRecord {
  ProbeKind probe = ProbeKind::kVacuum;
  double channel_param = 0.0;
  double tau = 0.0;
  QfiBreakdown<double> qfi;
  double coherence = 0.0;
  double purity = 1.0;
  std::optional<double> gain_db;
};

/// 10 log10(qfi / reference) when both exceed kGainQfiFloor.
inline std::optional<double> optional_gain(double qfi, double reference) {
  if (qfi > kGainQfiFloor && reference > kGainQfiFloor) return estimation_gain(qfi, reference);
  return std::nullopt;
}

/// GAUSSMET_THREADS if set (integer >= 1), else the hardware concurrency.
inline unsigned resolve_thread_count() {
  if (const char* env = std::getenv("GAUSSMET_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || n < 1) {
      throw InvalidArgument(std::string("GAUSSMET_THREADS must be an integer >= 1, got '") + env + "'");
    }
    return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// One record for each (probe, param, tau), ordered by probe (as listed),
/// then param ascending, then tau ascending. Each record depends only on its
/// own grid point, so the output is identical for any thread count.
inline std::vector<SweepRecord> run_sweep(const SweepConfig& cfg, unsigned threads = 0) {
  cfg.validate();
  const std::vector<double> params = cfg.param_grid();
  const std::vector<double> taus = cfg.sorted_taus();
  const std::size_t n_points = params.size() * taus.size();
  const std::size_t n_probes = cfg.probes.size();
  std::vector<SweepRecord> records(n_points * n_probes);

  auto evaluate_point = [&](std::size_t point) {
    const double param = params[point / taus.size()];
    const double tau = taus[point % taus.size()];
    const ChannelSpec<double> channel{cfg.channel_kind, param, cfg.nbar_env};
    const BathSpec<double> bath{cfg.gamma, tau, cfg.nbar_th};
    const double reference = qfi_closed_form(ProbeSpec<double>::vacuum(), channel, bath).total;
    for (std::size_t k = 0; k < n_probes; ++k) {
      const auto& probe = cfg.probes[k];
      const auto der = channel_derivatives(prepare_probe(probe), channel, bath);
      SweepRecord& rec = records[k * n_points + point];
      rec.probe = probe.kind;
      rec.channel_param = param;
      rec.tau = tau;
      rec.qfi = qfi_from_derivatives(der);
      rec.coherence = relative_entropy_coherence(der.state).coherence;
      rec.purity = der.purity;
      rec.gain_db = optional_gain(rec.qfi.total, reference);
    }
  };

  struct Failure {
    std::size_t point = std::numeric_limits<std::size_t>::max();
    std::string message;
    bool invalid_argument = false;
  } failure;
  std::mutex failure_mutex;
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t point = next++; point < n_points; point = next++) {
      try {
        evaluate_point(point);
      } catch (const std::exception& e) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (point < failure.point) {
          failure.point = point;
          failure.message = e.what();
          failure.invalid_argument = dynamic_cast<const InvalidArgument*>(&e) != nullptr;
        }
      }
    }
  };

  if (threads == 0) threads = resolve_thread_count();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, n_points)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  if (failure.point != std::numeric_limits<std::size_t>::max()) {
    std::ostringstream msg;
    msg << "sweep failed at " << to_string(cfg.channel_kind) << " param="
        << params[failure.point / taus.size()] << " tau=" << taus[failure.point % taus.size()] << ": "
        << failure.message;
    if (failure.invalid_argument) throw InvalidArgument(msg.str());
    throw NumericError(msg.str());
  }
  return records;
}

}  // namespace gaussmet
