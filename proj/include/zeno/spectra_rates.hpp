#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "zeno/noise_models.hpp"
#include "zeno/polar_core.hpp"
#include "zeno/quadrature.hpp"

namespace zeno {

/// One "≪" condition reported as the ratio left/right. `satisfied` means
/// ratio ≤ threshold (default 0.1).
struct Diagnostic {
  std::string name;
  double ratio = 0.0;
  bool satisfied = false;
};

struct RateResult {
  double r = 0.0;
  std::vector<Diagnostic> diagnostics;

  bool all_satisfied() const noexcept;
};

/// Samples of a spectral density on the Brillouin-like zone [−π/τ_r, π/τ_r].
struct SpectralFunction {
  std::vector<double> omega;
  std::vector<double> value;
};

/// Continuous rotation-rate noise with k(t) = k0·e^{−Γ_R t}.
struct ContinuousNoiseModel {
  double k0 = 0.0;
  double gamma_r = 1.0;

  static ContinuousNoiseModel make(double k0, double gamma_r);
};

inline constexpr double kDefaultThreshold = 0.1;

// Validity ------------------------------------------------------------------

/// Ratios for the discrete-jump master-equation regime:
///   large_n      |γ|θ / (1 − (γθ)²) / n        (n ≫ ...)
///   small_jumps  B² / ((1 − γ)(1 − γθ))
///   w_offset     B² / (1 − γθ)²                 (drop the W_n offset term)
///   slow_decay   R / Γ_R with R from the geometric rate and Γ_R = (1 − γ)/τ_r
/// Ratios are +inf where a denominator vanishes.
std::vector<Diagnostic> validity_check(const CorrelationModel& model, Transmissivity theta,
                                       std::uint64_t n, double threshold = kDefaultThreshold);

// Discrete rates ------------------------------------------------------------

/// R = [(1+γθ)/(1−γθ)]·B²/τ_r. Diagnostics from validity_check at `horizon`
/// round trips. Throws DivergenceError at γθ = 1.
RateResult decay_rate_geometric(const CorrelationModel& model, Transmissivity theta,
                                std::uint64_t horizon = 1000,
                                double threshold = kDefaultThreshold);

/// R = (1/τ_r) Σ_{n=−N}^{N} K_n θ^{|n|} for a stationary (even) K.
/// Throws ConvergenceError unless |K_N θ^N| ≤ 1e-14·|K_0| at the cutoff N.
RateResult decay_rate_series(const std::function<double(long)>& correlations,
                             Transmissivity theta, double tau_r, std::uint64_t truncation);

/// G(ω) = (B²/2πτ_r)(1−γ²)/(1+γ²−2γ cos ωτ_r). Needs |γ| < 1 and |ω| ≤ π/τ_r.
double reservoir_spectrum(const CorrelationModel& model, double omega);

/// F(ω) = (τ_r/2π)(1−θ²)/(1+θ²−2θ cos ωτ_r). Needs θ < 1 and |ω| ≤ π/τ_r.
double measurement_broadening(Transmissivity theta, double tau_r, double omega);

/// Uniform grids of `points` samples over the zone (endpoints included).
SpectralFunction sample_reservoir_spectrum(const CorrelationModel& model, std::size_t points);
SpectralFunction sample_measurement_broadening(Transmissivity theta, double tau_r,
                                               std::size_t points);

/// R = 2π ∫ G(ω) F(ω) dω over the zone, by adaptive quadrature.
RateResult decay_rate_overlap(const CorrelationModel& model, Transmissivity theta,
                              const QuadratureOptions& options = {});

/// ν = 2(1−θ)/[(1+θ)τ_r] = 1/[π F(0)].
double effective_measurement_rate(Transmissivity theta, double tau_r);

/// Fixed-angle rate in Zeno form, 2(Δφ/τ_r)²/ν. Needs θ < 1.
double qze_rate_form(double delta_phi, double tau_r, Transmissivity theta);

// Continuous dephasing -------------------------------------------------------

/// R = 2 ∫₀^∞ k(t) e^{−Γ₀t/2} dt = 2k0/(Γ_R + Γ₀/2), with diagnostics
/// slow_decay (R/Γ_R) and markov_reduction (R/(Γ_R + Γ₀)).
RateResult continuous_rate(const ContinuousNoiseModel& noise, double gamma0,
                           double threshold = kDefaultThreshold);

/// Lorentzian reservoir spectrum (k0/π)·Γ_R/(Γ_R² + ω²).
double continuous_reservoir_spectrum(const ContinuousNoiseModel& noise, double omega) noexcept;

/// Lorentzian broadening (1/π)(Γ₀/2)/((Γ₀/2)² + ω²). Needs Γ₀ > 0.
double continuous_measurement_broadening(double gamma0, double omega);

/// 2π ∫ G F dω over [−half_width·Γ_R, half_width·Γ_R].
double continuous_rate_overlap(const ContinuousNoiseModel& noise, double gamma0,
                               double half_width = 200.0, const QuadratureOptions& options = {});

}  // namespace zeno
