#include "zeno/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <fmt/ranges.h>

#include "zeno/errors.hpp"
#include "zeno/experiments.hpp"
#include "zeno/table.hpp"

namespace zeno::cli {
namespace {

namespace ex = zeno::experiments;

struct OutputOptions {
  std::string path;
  std::string format = "csv";
  std::uint64_t seed = 1;
};

using Params = std::vector<std::pair<std::string, std::string>>;

std::string join(const std::vector<double>& values) {
  std::vector<std::string> parts;
  parts.reserve(values.size());
  for (const double v : values) parts.push_back(format_number(v));
  return fmt::format("{}", fmt::join(parts, ","));
}

std::string angle_text(double radians) { return format_number(radians) + "rad"; }

void add_output_flags(CLI::App* sub, OutputOptions& o) {
  sub->add_option("--out", o.path, "Output file (stdout when omitted)");
  sub->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--seed", o.seed, "Random seed")->capture_default_str();
}

void emit(const Table& body, const std::string& subcommand, const Params& params,
          const OutputOptions& o, std::ostream& out) {
  Table table;
  table.add_meta("version", ex::kVersion);
  table.add_meta("subcommand", subcommand);
  for (const auto& [k, v] : params) table.add_meta(k, v);
  for (const auto& kv : body.meta) table.meta.push_back(kv);
  table.columns = body.columns;
  table.rows = body.rows;

  std::ofstream file;
  if (!o.path.empty()) {
    file.open(o.path, std::ios::binary);
    if (!file) throw DomainError("cannot open output file " + o.path);
  }
  std::ostream& sink = o.path.empty() ? out : file;
  if (o.format == "json") {
    write_json(sink, table);
  } else {
    write_csv(sink, table);
  }
}

}  // namespace

double parse_angle(const std::string& text) {
  std::string number = text;
  double scale = 1.0;
  const auto ends_with = [&](std::string_view suffix) {
    return number.size() >= suffix.size() &&
           number.compare(number.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (ends_with("deg")) {
    number.resize(number.size() - 3);
    scale = std::numbers::pi / 180.0;
  } else if (ends_with("rad")) {
    number.resize(number.size() - 3);
  }
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(number, &used);
  } catch (const std::exception&) {
    throw DomainError("cannot parse angle '" + text + "'");
  }
  if (used != number.size() || !std::isfinite(value)) {
    throw DomainError("cannot parse angle '" + text + "'");
  }
  return value * scale;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Measurement-modified polarization decay: rates, spectra and decay curves", "zeno"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file mirroring the flags ([subcommand] sections)");

  std::function<void()> action;

  // rate-curve
  OutputOptions rate_out;
  ex::RateCurveConfig rate;
  unsigned theta_steps = 100;
  auto* rate_cmd = app.add_subcommand("rate-curve", "Decay rate R against 1 - theta");
  rate_cmd->add_option("--b", rate.b, "RMS jump B")->capture_default_str();
  rate_cmd->add_option("--tau-r", rate.tau_r, "Round-trip time")->capture_default_str();
  rate_cmd->add_option("--gamma", rate.gammas, "Correlation degrees")->delimiter(',');
  rate_cmd->add_option("--theta-steps", theta_steps, "Grid 1 - theta = k/steps")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  rate_cmd->add_option("--tolerance", rate.quadrature.abs_tol, "Quadrature tolerance (abs and rel)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  rate_cmd->add_option("--max-panels", rate.quadrature.max_panels, "Quadrature panel budget")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_output_flags(rate_cmd, rate_out);
  rate_cmd->callback([&] {
    action = [&] {
      rate.quadrature.rel_tol = rate.quadrature.abs_tol;
      rate.one_minus_theta.clear();
      for (unsigned k = 0; k <= theta_steps; ++k) {
        rate.one_minus_theta.push_back(static_cast<double>(k) / theta_steps);
      }
      emit(ex::rate_curve(rate), "rate-curve",
           {{"b", format_number(rate.b)},
            {"tau-r", format_number(rate.tau_r)},
            {"gamma", join(rate.gammas)},
            {"theta-steps", std::to_string(theta_steps)},
            {"tolerance", format_number(rate.quadrature.abs_tol)},
            {"max-panels", std::to_string(rate.quadrature.max_panels)},
            {"seed", std::to_string(rate_out.seed)}},
           rate_out, out);
    };
  });

  // spectra
  OutputOptions spec_out;
  ex::SpectraConfig spec;
  auto* spec_cmd = app.add_subcommand("spectra", "Reservoir spectrum G and broadening F");
  spec_cmd->add_option("--b", spec.b, "RMS jump B")->capture_default_str();
  spec_cmd->add_option("--tau-r", spec.tau_r, "Round-trip time")->capture_default_str();
  spec_cmd->add_option("--gamma", spec.gammas, "Correlation degrees")->delimiter(',');
  spec_cmd->add_option("--theta", spec.theta, "Transmissivity for F_theta")->capture_default_str();
  spec_cmd->add_option("--points", spec.points, "Uniform zone grid size")
      ->check(CLI::Range(2, 100000000))
      ->capture_default_str();
  add_output_flags(spec_cmd, spec_out);
  spec_cmd->callback([&] {
    action = [&] {
      emit(ex::spectra(spec), "spectra",
           {{"b", format_number(spec.b)},
            {"tau-r", format_number(spec.tau_r)},
            {"gamma", join(spec.gammas)},
            {"theta", format_number(spec.theta)},
            {"points", std::to_string(spec.points)},
            {"seed", std::to_string(spec_out.seed)}},
           spec_out, out);
    };
  });

  // decay
  OutputOptions decay_out;
  ex::DecayConfig dec;
  std::string decay_angle = "4deg";
  auto* decay_cmd = app.add_subcommand("decay", "Persistence-chain decay curves");
  decay_cmd->add_option("--delta-phi", decay_angle, "Jump angle, e.g. 4deg or 0.07rad")
      ->capture_default_str();
  decay_cmd->add_option("--p", dec.p, "Persistence probability")->capture_default_str();
  decay_cmd->add_option("--n-max", dec.n_max, "Last round trip")->capture_default_str();
  decay_cmd->add_option("--trajectories", dec.trajectories, "Monte Carlo ensemble (0 = off)")
      ->capture_default_str();
  decay_cmd->add_option("--workers", dec.workers, "Worker threads (0 = all cores)");
  add_output_flags(decay_cmd, decay_out);
  decay_cmd->callback([&] {
    action = [&] {
      dec.delta_phi = parse_angle(decay_angle);
      dec.seed = decay_out.seed;
      emit(ex::decay(dec), "decay",
           {{"delta-phi", angle_text(dec.delta_phi)},
            {"p", format_number(dec.p)},
            {"n-max", std::to_string(dec.n_max)},
            {"trajectories", std::to_string(dec.trajectories)},
            {"seed", std::to_string(dec.seed)}},
           decay_out, out);
    };
  });

  // montecarlo
  OutputOptions mc_out;
  ex::MonteCarloConfig mc;
  std::string mc_angle = "4deg";
  auto* mc_cmd = app.add_subcommand("montecarlo", "Ensemble estimate of P_h(n)");
  mc_cmd->add_option("--model", mc.model, "Jump model")
      ->check(CLI::IsMember({"fixed", "iid", "persistence"}))
      ->capture_default_str();
  mc_cmd->add_option("--delta-phi", mc_angle, "Jump angle, e.g. 4deg or 0.07rad")
      ->capture_default_str();
  mc_cmd->add_option("--p", mc.p, "Persistence probability")->capture_default_str();
  mc_cmd->add_option("--theta", mc.theta, "Absorber transmissivity")->capture_default_str();
  mc_cmd->add_option("--n-max", mc.n_max, "Last round trip")->capture_default_str();
  mc_cmd->add_option("--trajectories", mc.trajectories, "Ensemble size")->capture_default_str();
  mc_cmd->add_option("--workers", mc.workers, "Worker threads (0 = all cores)");
  mc_cmd->add_option("--observable", mc.observable, "decay or survival")
      ->check(CLI::IsMember({"decay", "survival"}))
      ->capture_default_str();
  add_output_flags(mc_cmd, mc_out);
  mc_cmd->callback([&] {
    action = [&] {
      mc.delta_phi = parse_angle(mc_angle);
      mc.seed = mc_out.seed;
      emit(ex::montecarlo(mc), "montecarlo",
           {{"model", mc.model},
            {"delta-phi", angle_text(mc.delta_phi)},
            {"p", format_number(mc.p)},
            {"theta", format_number(mc.theta)},
            {"n-max", std::to_string(mc.n_max)},
            {"trajectories", std::to_string(mc.trajectories)},
            {"observable", mc.observable},
            {"seed", std::to_string(mc.seed)}},
           mc_out, out);
    };
  });

  // validate
  OutputOptions val_out;
  ex::ValidateConfig val;
  auto* val_cmd = app.add_subcommand("validate", "Validity ratios of the rate theory");
  val_cmd->add_option("--b", val.b, "RMS jump B")->capture_default_str();
  val_cmd->add_option("--gamma", val.gamma, "Correlation degree")->capture_default_str();
  val_cmd->add_option("--theta", val.theta, "Absorber transmissivity")->capture_default_str();
  val_cmd->add_option("--tau-r", val.tau_r, "Round-trip time")->capture_default_str();
  val_cmd->add_option("--n", val.n, "Round trips")->capture_default_str();
  val_cmd->add_option("--threshold", val.threshold, "Ratio counted as 'much less'")
      ->capture_default_str();
  add_output_flags(val_cmd, val_out);
  val_cmd->callback([&] {
    action = [&] {
      emit(ex::validate(val), "validate",
           {{"b", format_number(val.b)},
            {"gamma", format_number(val.gamma)},
            {"theta", format_number(val.theta)},
            {"tau-r", format_number(val.tau_r)},
            {"n", std::to_string(val.n)},
            {"threshold", format_number(val.threshold)},
            {"seed", std::to_string(val_out.seed)}},
           val_out, out);
    };
  });

  // replay
  std::string replay_source;
  OutputOptions replay_out;
  auto* replay_cmd =
      app.add_subcommand("replay", "Re-run the command recorded in a CSV metadata header");
  replay_cmd->add_option("source", replay_source, "CSV written by this tool")
      ->required()
      ->check(CLI::ExistingFile);
  replay_cmd->add_option("--out", replay_out.path, "Output file (stdout when omitted)");
  replay_cmd->add_option("--format", replay_out.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));

  int replay_status = kSuccess;
  replay_cmd->callback([&] {
    action = [&] {
      std::ifstream in(replay_source, std::ios::binary);
      const auto meta = read_csv_meta(in);
      std::vector<std::string> replay_args;
      for (const auto& [k, v] : meta) {
        if (k == "subcommand") replay_args.insert(replay_args.begin(), v);
      }
      if (replay_args.empty()) throw DomainError("no subcommand recorded in " + replay_source);
      for (const auto& [k, v] : meta) {
        if (k == "subcommand" || k == "version" || k.starts_with("info.")) continue;
        replay_args.push_back("--" + k);
        replay_args.push_back(v);
      }
      if (!replay_out.path.empty()) {
        replay_args.push_back("--out");
        replay_args.push_back(replay_out.path);
      }
      replay_args.push_back("--format");
      replay_args.push_back(replay_out.format);
      replay_status = run(replay_args, out, err);
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (action) action();
    return replay_status;
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DivergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace zeno::cli
