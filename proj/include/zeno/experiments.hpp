#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zeno/quadrature.hpp"
#include "zeno/table.hpp"

namespace zeno::experiments {

inline constexpr const char* kVersion = "1.0.0";

/// 1 − θ ∈ {0, 0.01, ..., 1}.
std::vector<double> default_effectiveness_grid();

/// Decay rate against measurement effectiveness, closed form and overlap
/// quadrature side by side. Columns: gamma, one_minus_theta, R_closed_form,
/// R_overlap_quadrature (empty at θ = 1, where F is a delta function).
struct RateCurveConfig {
  double b = 0.1;
  double tau_r = 0.07;
  std::vector<double> gammas{0.7, 0.0, -0.9};
  std::vector<double> one_minus_theta = default_effectiveness_grid();
  QuadratureOptions quadrature;
};
Table rate_curve(const RateCurveConfig& config);

/// Reservoir spectrum and broadening on the zone grid.
/// Columns: gamma, omega, G, F_theta0, F_theta.
struct SpectraConfig {
  double b = 0.1;
  double tau_r = 0.07;
  std::vector<double> gammas{0.0, 0.7, -0.7};
  double theta = 0.9;
  std::size_t points = 2001;
};
Table spectra(const SpectraConfig& config);

/// Persistence-chain decay curves. Columns: n, P_free_exact, P_free_approx,
/// P_projective and, when trajectories > 0, P_montecarlo and stderr.
struct DecayConfig {
  double delta_phi = 0.06981317007977318;  // 4°
  double p = 0.8;
  std::uint64_t n_max = 1000;
  std::uint64_t trajectories = 0;
  std::uint64_t seed = 1;
  unsigned workers = 0;
};
Table decay(const DecayConfig& config);

/// Ensemble estimate against the matching closed form (empty when none applies).
/// Columns: n, p_h_mc, stderr, p_h_reference. With observable = "survival"
/// the total unabsorbed weight is reported instead of P_h.
struct MonteCarloConfig {
  std::string model = "persistence";  // fixed | iid | persistence
  double delta_phi = 0.06981317007977318;
  double p = 0.8;
  double theta = 1.0;
  std::uint64_t n_max = 300;
  std::uint64_t trajectories = 100000;
  std::uint64_t seed = 1;
  unsigned workers = 0;
  std::string observable = "decay";  // decay | survival
};
Table montecarlo(const MonteCarloConfig& config);

/// Validity ratios. Columns: condition, ratio, threshold, satisfied.
struct ValidateConfig {
  double b = 0.1;
  double gamma = 0.0;
  double theta = 0.5;
  double tau_r = 0.07;
  std::uint64_t n = 100;
  double threshold = 0.1;
};
Table validate(const ValidateConfig& config);

}  // namespace zeno::experiments
