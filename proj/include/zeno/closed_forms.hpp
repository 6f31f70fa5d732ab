#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zeno/noise_models.hpp"
#include "zeno/polar_core.hpp"

namespace zeno {

/// P_h sampled over round trips, optionally with a Monte Carlo standard error.
struct DecayPoint {
  std::uint64_t n = 0;
  double p_h = 1.0;
  std::optional<double> std_error;
};

struct DecayMeta {
  std::string model;
  double theta = 1.0;
  std::optional<double> tau_r;
  std::optional<std::uint64_t> seed;
};

struct DecayCurve {
  std::vector<DecayPoint> points;
  DecayMeta meta;

  /// Checks that n is strictly increasing and p_h ∈ [0, 1 + 1e-9].
  bool well_formed() const noexcept;
};

// Fixed rotation angle ------------------------------------------------------

/// Free Rabi-like oscillation, cos²(nΔφ).
double p_h_rabi(std::uint64_t n, double delta_phi) noexcept;

/// Ideal projection every round trip, cos^{2n}(Δφ).
double p_h_projective(std::uint64_t n, double delta_phi) noexcept;

/// Exact fixed-angle result for partial absorption via the two eigenvalues
/// λ₁,₂ = [(1+θ)cos Δφ ± D]/2 of the round-trip operator. Complex arithmetic
/// covers D² < 0; |D| < 1e-9 switches to the double-root limit.
double p_h_fixed_angle(std::uint64_t n, double delta_phi, Transmissivity theta);

// Master-equation solutions -----------------------------------------------

struct MasterSolutionParams {
  double r = 0.0;       ///< decay rate R
  double gamma0 = 0.0;  ///< mean absorption rate Γ₀

  /// Throws DomainError for negative or non-finite rates.
  static MasterSolutionParams make(double r, double gamma0);
};

/// Upper component of exp([[−w, w], [w, −w − g]])·(1, 0)ᵀ. Shared by the
/// continuous solution (w = Rt, g = Γ₀t) and the discrete one (w = W_n).
double two_state_survival(double w, double g) noexcept;

/// e^{−(R+Γ₀/2)t}(cosh St + Γ₀/(2S) sinh St), S = √(R² + Γ₀²/4).
double p_h_master(double t, const MasterSolutionParams& params);

// Exactly solvable chains -------------------------------------------------

/// ½ + ½⟨cos 2Δφ⟩ⁿ for independent symmetric jumps.
double p_h_iid(std::uint64_t n, double mean_cos2);

/// Exact free evolution of the persistence chain:
/// ½ + [g(r) − g(−r)]/(4r), g(r) = (q cos2Δφ + r)(p cos2Δφ + r)ⁿ,
/// r = √(q² − p² sin²2Δφ).
double p_h_persistence_exact(std::uint64_t n, double delta_phi, double p);

/// Effective-step approximation ½ + ½[cos(2Δφ p/q)]^{qn/p}; requires 0 < p < 1.
double p_h_persistence_approx(std::uint64_t n, double delta_phi, double p);

// Discrete master solution ------------------------------------------------

struct WExponent {
  double exact = 0.0;      ///< double sum nB² + 2 Σ_{m<n} Σ_{m'≤m} K_{m'} θ^{m'}
  double asymptote = 0.0;  ///< nB²(1+γθ)/(1−γθ) − 2B²γθ/(1−γθ)²; NaN at γθ = 1
  bool asymptote_valid = false;
};

/// W_n for the geometric correlation model; the validity flag combines the
/// large-n and B² ≪ (1−γθ)² conditions at ratio threshold `threshold`.
WExponent w_exponent(const CorrelationModel& model, Transmissivity theta, std::uint64_t n,
                     double threshold = 0.1);

/// Discrete master solution with W_n exact and Γ₀t = −2n ln θ. At θ = 0 the
/// vertical population is pinned to zero and e^{−W_n} is returned.
double p_h_master_discrete(std::uint64_t n, const CorrelationModel& model, Transmissivity theta);

}  // namespace zeno
