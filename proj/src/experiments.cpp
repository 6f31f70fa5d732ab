#include "zeno/experiments.hpp"

#include <cmath>
#include <numbers>
#include <optional>

#include <fmt/core.h>

#include "zeno/closed_forms.hpp"
#include "zeno/errors.hpp"
#include "zeno/montecarlo.hpp"
#include "zeno/spectra_rates.hpp"

namespace zeno::experiments {
namespace {

Cell maybe(const std::optional<double>& v) {
  if (v) return *v;
  return std::monostate{};
}

std::int64_t as_int(std::uint64_t n) { return static_cast<std::int64_t>(n); }

}  // namespace

std::vector<double> default_effectiveness_grid() {
  std::vector<double> grid(101);
  for (int i = 0; i <= 100; ++i) grid[i] = i / 100.0;
  return grid;
}

Table rate_curve(const RateCurveConfig& config) {
  Table table;
  table.columns = {"gamma", "one_minus_theta", "R_closed_form", "R_overlap_quadrature"};
  for (const double gamma : config.gammas) {
    const auto model = CorrelationModel::make(config.b, gamma, config.tau_r);
    for (const double eff : config.one_minus_theta) {
      const Transmissivity theta(1.0 - eff);
      const double closed = decay_rate_geometric(model, theta).r;
      // Without measurements F(ω) collapses to δ(ω) and the overlap is 2πG(0).
      const double overlap = theta.value() < 1.0
                                 ? decay_rate_overlap(model, theta, config.quadrature).r
                                 : 2.0 * std::numbers::pi * reservoir_spectrum(model, 0.0);
      table.rows.push_back({gamma, eff, closed, overlap});
    }
  }
  return table;
}

Table spectra(const SpectraConfig& config) {
  const Transmissivity theta(config.theta);
  if (theta.value() >= 1.0) throw DomainError("spectra needs theta < 1");
  const auto f0 = sample_measurement_broadening(Transmissivity(0.0), config.tau_r, config.points);
  const auto ft = sample_measurement_broadening(theta, config.tau_r, config.points);

  Table table;
  table.columns = {"gamma", "omega", "G", "F_theta0", "F_theta"};
  for (const double gamma : config.gammas) {
    const auto g = sample_reservoir_spectrum(CorrelationModel::make(config.b, gamma, config.tau_r),
                                             config.points);
    for (std::size_t i = 0; i < config.points; ++i) {
      table.rows.push_back({gamma, g.omega[i], g.value[i], f0.value[i], ft.value[i]});
    }
  }
  return table;
}

Table decay(const DecayConfig& config) {
  const bool with_mc = config.trajectories > 0;

  std::optional<DecayCurve> mc;
  if (with_mc) {
    EnsembleSpec spec;
    spec.model = Persistence{config.delta_phi, config.p};
    spec.theta = Transmissivity(1.0);
    spec.n_max = config.n_max;
    spec.trajectories = config.trajectories;
    spec.seed = config.seed;
    spec.workers = config.workers;
    mc = estimate_decay(spec);
  }

  Table table;
  table.columns = {"n", "P_free_exact", "P_free_approx", "P_projective"};
  if (with_mc) {
    table.columns.emplace_back("P_montecarlo");
    table.columns.emplace_back("stderr");
  }
  for (std::uint64_t n = 0; n <= config.n_max; ++n) {
    std::optional<double> approx;
    try {
      approx = p_h_persistence_approx(n, config.delta_phi, config.p);
    } catch (const DomainError&) {
      // Outside 0 < p < 1 the effective-step picture has no meaning.
    }
    std::vector<Cell> row{as_int(n), p_h_persistence_exact(n, config.delta_phi, config.p),
                          maybe(approx), p_h_projective(n, config.delta_phi)};
    if (mc) {
      row.emplace_back(mc->points[n].p_h);
      row.emplace_back(maybe(mc->points[n].std_error));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

Table montecarlo(const MonteCarloConfig& config) {
  EnsembleSpec spec;
  if (config.model == "fixed") {
    spec.model = FixedJumps{config.delta_phi};
  } else if (config.model == "iid") {
    spec.model = IidTwoPoint{config.delta_phi};
  } else if (config.model == "persistence") {
    spec.model = Persistence{config.delta_phi, config.p};
  } else {
    throw DomainError("unknown model '" + config.model + "' (expected fixed, iid or persistence)");
  }
  const bool survival = config.observable == "survival";
  if (!survival && config.observable != "decay") {
    throw DomainError("unknown observable '" + config.observable +
                      "' (expected decay or survival)");
  }
  spec.theta = Transmissivity(config.theta);
  spec.n_max = config.n_max;
  spec.trajectories = config.trajectories;
  spec.seed = config.seed;
  spec.workers = config.workers;

  const EnsembleResult result = run_ensemble(spec);
  const DecayCurve& curve = survival ? result.survival : result.decay;

  const double t = config.theta;
  const double dphi = config.delta_phi;
  const auto reference = [&](std::uint64_t n) -> std::optional<double> {
    if (survival) {
      if (t == 1.0) return 1.0;
      if (t == 0.0) return p_h_projective(n, dphi);  // |cos Δφ_k| is the same for ±Δφ
      return std::nullopt;
    }
    if (config.model == "fixed") return p_h_fixed_angle(n, dphi, spec.theta);
    if (t == 0.0) return p_h_projective(n, dphi);
    if (t == 1.0) {
      if (config.model == "iid") return p_h_iid(n, std::cos(2.0 * dphi));
      return p_h_persistence_exact(n, dphi, config.p);
    }
    return std::nullopt;
  };

  Table table;
  table.columns = {"n", "p_h_mc", "stderr", "p_h_reference"};
  for (const auto& pt : curve.points) {
    table.rows.push_back({as_int(pt.n), pt.p_h, maybe(pt.std_error), maybe(reference(pt.n))});
  }
  table.add_meta("info.model", curve.meta.model);
  return table;
}

Table validate(const ValidateConfig& config) {
  const auto model = CorrelationModel::make(config.b, config.gamma, config.tau_r);
  const auto diags =
      validity_check(model, Transmissivity(config.theta), config.n, config.threshold);
  Table table;
  table.columns = {"condition", "ratio", "threshold", "satisfied"};
  for (const auto& d : diags) {
    table.rows.push_back({d.name, d.ratio, config.threshold,
                          std::string(d.satisfied ? "true" : "false")});
  }
  return table;
}

}  // namespace zeno::experiments
