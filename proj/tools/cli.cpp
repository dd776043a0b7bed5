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

#include "cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gaussmet/gaussmet.hpp"

namespace gaussmet::cli {
namespace {

using nlohmann::json;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

double to_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw InvalidArgument(what + ": bad number '" + s + "'");
  return v;
}

std::vector<double> parse_double_list(const std::string& s, const std::string& what) {
  std::vector<double> values;
  for (const auto& part : split(s, ',')) values.push_back(to_double(part, what));
  if (values.empty()) throw InvalidArgument(what + ": empty list");
  return values;
}

/// "vacuum", "displaced", "squeezed", optionally with "=value" overriding
/// alpha_in or r_in for that probe.
ProbeSpec<double> parse_probe(const std::string& token, double alpha, double r_in) {
  const auto eq = token.find('=');
  const ProbeKind kind = parse_probe_kind(token.substr(0, eq));
  std::optional<double> value;
  if (eq != std::string::npos) value = to_double(token.substr(eq + 1), "probe " + token);
  switch (kind) {
    case ProbeKind::kVacuum:
      return ProbeSpec<double>::vacuum();
    case ProbeKind::kDisplaced:
      return ProbeSpec<double>::displaced(value.value_or(alpha));
    case ProbeKind::kSqueezed:
      return ProbeSpec<double>::squeezed(value.value_or(r_in));
  }
  throw InvalidArgument("unknown probe '" + token + "'");
}

struct SweepOverrides {
  std::optional<std::string> preset;
  std::optional<std::string> channel;
  std::optional<std::vector<std::string>> probes;
  std::optional<double> alpha_in;
  std::optional<double> r_in;
  std::optional<double> param_start;
  std::optional<double> param_stop;
  std::optional<double> param_step;
  std::optional<std::vector<double>> taus;
  std::optional<double> gamma;
  std::optional<double> nbar_th;
  std::optional<double> nbar_env;
  std::optional<std::string> output_path;
};

SweepOverrides overrides_from_json(const json& j) {
  if (!j.is_object()) throw InvalidArgument("config: top level must be a JSON object");
  SweepOverrides o;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "preset") o.preset = value.get<std::string>();
      else if (key == "channel") o.channel = value.get<std::string>();
      else if (key == "probes") o.probes = value.get<std::vector<std::string>>();
      else if (key == "alpha_in") o.alpha_in = value.get<double>();
      else if (key == "r_in") o.r_in = value.get<double>();
      else if (key == "param_start") o.param_start = value.get<double>();
      else if (key == "param_stop") o.param_stop = value.get<double>();
      else if (key == "param_step") o.param_step = value.get<double>();
      else if (key == "taus") o.taus = value.get<std::vector<double>>();
      else if (key == "gamma") o.gamma = value.get<double>();
      else if (key == "nbar_th") o.nbar_th = value.get<double>();
      else if (key == "nbar_env") o.nbar_env = value.get<double>();
      else if (key == "output_path") o.output_path = value.get<std::string>();
      else throw InvalidArgument("config: unknown key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
  return o;
}

template <class T>
std::optional<T> first_of(const std::optional<T>& a, const std::optional<T>& b) {
  return a ? a : b;
}

/// Precedence: flags > config file > preset > built-in defaults.
SweepConfig resolve_sweep_config(const SweepOverrides& file, const SweepOverrides& flags) {
  const auto preset_name = first_of(flags.preset, file.preset);
  const auto channel_name = first_of(flags.channel, file.channel);

  SweepConfig cfg;
  if (preset_name) {
    auto p = preset(*preset_name);
    if (!p) throw InvalidArgument("unknown preset '" + *preset_name + "'");
    cfg = *p;
  } else if (channel_name) {
    cfg = default_config(parse_channel_kind(*channel_name));
  } else {
    throw InvalidArgument("sweep: --channel (or a preset) is required");
  }
  if (channel_name) {
    const ChannelKind kind = parse_channel_kind(*channel_name);
    if (kind != cfg.channel_kind) set_channel_grid(cfg, kind);
  }

  for (const SweepOverrides* o : {&file, &flags}) {
    if (o->param_start) cfg.param_start = *o->param_start;
    if (o->param_stop) cfg.param_stop = *o->param_stop;
    if (o->param_step) cfg.param_step = *o->param_step;
    if (o->taus) cfg.taus = *o->taus;
    if (o->gamma) cfg.gamma = *o->gamma;
    if (o->nbar_th) cfg.nbar_th = *o->nbar_th;
    if (o->nbar_env) cfg.nbar_env = *o->nbar_env;
    if (o->output_path) cfg.output_path = *o->output_path;
  }

  const double alpha = first_of(flags.alpha_in, file.alpha_in).value_or(kDefaultAlphaIn);
  const double r_in = first_of(flags.r_in, file.r_in).value_or(kDefaultRIn);
  if (const auto names = first_of(flags.probes, file.probes)) {
    cfg.probes.clear();
    for (const auto& name : *names) cfg.probes.push_back(parse_probe(name, alpha, r_in));
  } else {
    for (auto& p : cfg.probes) {
      if (p.kind == ProbeKind::kDisplaced) p.alpha_in = alpha;
      if (p.kind == ProbeKind::kSqueezed) p.r_in = r_in;
    }
  }
  return cfg;
}

json breakdown_json(const QfiBreakdown<double>& q) {
  return {{"total", q.total},
          {"sigma", q.term_sigma},
          {"purity", q.term_purity},
          {"displacement", q.term_displacement}};
}

std::vector<SweepRecord> read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  return read_csv(in);
}

void write_csv_to(const std::string& path, const std::vector<SweepRecord>& records, std::ostream& out) {
  if (path == "-") {
    write_csv(out, records);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InvalidArgument("cannot write '" + path + "'");
  write_csv(file, records);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian-channel parameter estimation: QFI, coherence and sweeps", "gaussmet"};
  app.require_subcommand(1);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Evaluate a (parameter, tau) grid and write CSV");
  SweepOverrides flags;
  std::string probes_flag;
  std::string taus_flag;
  std::string config_path;
  sweep->add_option("--preset", flags.preset, "paper-fig2 | paper-fig3 | paper-fig4 | paper-fig5 | paper-fig6");
  sweep->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  sweep->add_option("--channel", flags.channel, "attenuator | amplifier");
  sweep->add_option("--probes", probes_flag, "comma list: vacuum,displaced[=alpha],squeezed[=r]");
  sweep->add_option("--alpha", flags.alpha_in, "displacement amplitude of displaced probes");
  sweep->add_option("--r-in", flags.r_in, "squeezing of squeezed probes");
  sweep->add_option("--start", flags.param_start, "first channel parameter");
  sweep->add_option("--stop", flags.param_stop, "last channel parameter (inclusive)");
  sweep->add_option("--step", flags.param_step, "parameter increment");
  sweep->add_option("--taus", taus_flag, "comma list of thermalization times");
  sweep->add_option("--gamma", flags.gamma, "bath decay rate");
  sweep->add_option("--nbar-th", flags.nbar_th, "bath thermal occupation");
  sweep->add_option("--nbar-env", flags.nbar_env, "channel environment occupation");
  sweep->add_option("--out", flags.output_path, "output CSV path ('-' for stdout)");

  // calibrate
  auto* calibrate = app.add_subcommand("calibrate", "Displacement matching the coherence of a squeezed probe");
  double calib_r = 0.0;
  calibrate->add_option("--r-in", calib_r, "probe squeezing")->required();

  // qfi
  auto* qfi = app.add_subcommand("qfi", "Single-point QFI breakdown as JSON");
  std::string q_channel;
  std::string q_probe;
  double q_alpha = kDefaultAlphaIn;
  double q_r_in = kDefaultRIn;
  std::optional<double> q_theta;
  std::optional<double> q_r;
  std::optional<double> q_param;
  double q_tau = 0.0;
  double q_gamma = kDefaultGamma;
  double q_nbar_th = 0.0;
  double q_nbar_env = 0.0;
  std::optional<std::int64_t> q_measurements;
  qfi->add_option("--channel", q_channel, "attenuator | amplifier")->required();
  qfi->add_option("--probe", q_probe, "vacuum | displaced | squeezed")->required();
  qfi->add_option("--alpha", q_alpha, "displacement amplitude");
  qfi->add_option("--r-in", q_r_in, "probe squeezing");
  auto* theta_opt = qfi->add_option("--theta", q_theta, "attenuator angle");
  auto* r_opt = qfi->add_option("--r", q_r, "amplifier squeezing");
  auto* param_opt = qfi->add_option("--param", q_param, "channel parameter");
  theta_opt->excludes(r_opt)->excludes(param_opt);
  r_opt->excludes(param_opt);
  qfi->add_option("--tau", q_tau, "thermalization time");
  qfi->add_option("--gamma", q_gamma, "bath decay rate");
  qfi->add_option("--nbar-th", q_nbar_th, "bath thermal occupation");
  qfi->add_option("--nbar-env", q_nbar_env, "channel environment occupation");
  qfi->add_option("--measurements", q_measurements, "report the Cramer-Rao bound for N measurements");

  // fit
  auto* fit = app.add_subcommand("fit", "Fit QFI = sum a_n C^n on one sweep curve");
  std::string fit_in;
  std::string fit_probe;
  double fit_tau = 0.0;
  int fit_degree = 4;
  std::string fit_branch;
  std::string fit_channel = "attenuator";
  fit->add_option("--in", fit_in, "sweep CSV")->required();
  fit->add_option("--probe", fit_probe, "probe kind to fit")->required();
  fit->add_option("--tau", fit_tau, "thermalization time to fit")->required();
  fit->add_option("--degree", fit_degree, "polynomial degree")->capture_default_str();
  fit->add_option("--branch", fit_branch, "parameter interval lo:hi (default: monotone branch)");
  fit->add_option("--channel", fit_channel, "channel of the sweep, selects the default branch");

  // gain
  auto* gain = app.add_subcommand("gain", "Recompute gain_db of a sweep CSV from its vacuum rows");
  std::string gain_in;
  std::string gain_out = "-";
  gain->add_option("--in", gain_in, "sweep CSV")->required();
  gain->add_option("--out", gain_out, "output CSV ('-' for stdout)");

  auto* self = app.add_subcommand("selftest", "Run oracle cross-checks");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sweep) {
      SweepOverrides file;
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        json j;
        try {
          in >> j;
        } catch (const json::exception& e) {
          throw InvalidArgument(std::string("config: ") + e.what());
        }
        file = overrides_from_json(j);
      }
      if (!probes_flag.empty()) flags.probes = split(probes_flag, ',');
      if (!taus_flag.empty()) flags.taus = parse_double_list(taus_flag, "--taus");
      const SweepConfig cfg = resolve_sweep_config(file, flags);
      if (cfg.output_path.empty()) throw InvalidArgument("sweep: --out is required");
      const auto records = run_sweep(cfg);
      write_csv_to(cfg.output_path, records, out);
    } else if (*calibrate) {
      out << std::fixed << std::setprecision(10) << calibrate_matched_alpha(calib_r) << '\n';
    } else if (*qfi) {
      const ChannelKind kind = parse_channel_kind(q_channel);
      std::optional<double> param = q_param;
      if (q_theta) {
        if (kind != ChannelKind::kAttenuator) throw InvalidArgument("--theta applies to the attenuator");
        param = q_theta;
      }
      if (q_r) {
        if (kind != ChannelKind::kAmplifier) throw InvalidArgument("--r applies to the amplifier");
        param = q_r;
      }
      if (!param) throw InvalidArgument("qfi: one of --theta, --r or --param is required");
      const auto probe = parse_probe(q_probe, q_alpha, q_r_in);
      const ChannelSpec<double> channel{kind, *param, q_nbar_env};
      const BathSpec<double> bath{q_gamma, q_tau, q_nbar_th};
      const auto der = channel_derivatives(prepare_probe(probe), channel, bath);
      const auto breakdown = qfi_from_derivatives(der);
      const double reference = qfi_closed_form(ProbeSpec<double>::vacuum(), channel, bath).total;
      const auto g = optional_gain(breakdown.total, reference);
      json j = {{"channel", std::string(to_string(kind))},
                {"param", *param},
                {"nbar_env", q_nbar_env},
                {"probe", {{"kind", std::string(to_string(probe.kind))},
                           {"alpha_in", probe.alpha_in},
                           {"r_in", probe.r_in}}},
                {"bath", {{"gamma", q_gamma}, {"tau", q_tau}, {"nbar_th", q_nbar_th}}},
                {"qfi", breakdown_json(breakdown)},
                {"coherence", relative_entropy_coherence(der.state).coherence},
                {"purity", der.purity},
                {"gain_db", g ? json(*g) : json(nullptr)}};
      if (q_measurements) j["cramer_rao_bound"] = cramer_rao_bound(breakdown.total, *q_measurements);
      out << j.dump(2) << '\n';
    } else if (*fit) {
      const ProbeKind kind = parse_probe_kind(fit_probe);
      Interval branch = default_branch(parse_channel_kind(fit_channel));
      if (!fit_branch.empty()) {
        const auto colon = fit_branch.find(':');
        if (colon == std::string::npos) throw InvalidArgument("--branch must look like lo:hi");
        branch = {to_double(fit_branch.substr(0, colon), "--branch"),
                  to_double(fit_branch.substr(colon + 1), "--branch")};
      }
      std::vector<SweepRecord> selected;
      for (const auto& r : read_csv_file(fit_in)) {
        if (r.probe == kind && std::abs(r.tau - fit_tau) <= 1e-12) selected.push_back(r);
      }
      const FitResult result = fit_qfi_vs_coherence(selected, fit_degree, branch);
      const json j = {{"probe", fit_probe},
                      {"tau", fit_tau},
                      {"degree", result.degree},
                      {"coefficients", result.coefficients},
                      {"rmse", result.rmse},
                      {"r_squared", result.r_squared},
                      {"branch", {result.branch.lo, result.branch.hi}},
                      {"n_points", result.n_points}};
      out << j.dump(2) << '\n';
    } else if (*gain) {
      auto records = read_csv_file(gain_in);
      recompute_gain(records);
      write_csv_to(gain_out, records, out);
    } else if (*self) {
      return selftest(out) ? kExitOk : kExitNumeric;
    }
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitOk;
}

}  // namespace gaussmet::cli
