#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "zeno/rng.hpp"

namespace zeno {

// Jump models: generators of the rotation-angle chain Δφ_1, Δφ_2, ...

/// Every round trip rotates by the same angle.
struct FixedJumps {
  double delta_phi = 0.0;
};

/// Independent ±Δφ with probability 1/2 each.
struct IidTwoPoint {
  double delta_phi = 0.0;
};

/// Random walk with persistence: first jump ±Δφ equiprobable, then each jump
/// repeats the previous one with probability p and flips with q = 1 − p.
struct Persistence {
  double delta_phi = 0.0;
  double p = 0.5;
};

/// General finite Markov chain of angles.
/// transition[i][j] = probability of values[i] given the previous jump was
/// values[j], so every column sums to one.
struct FiniteMarkov {
  std::vector<double> values;
  std::vector<double> p0;
  std::vector<std::vector<double>> transition;
};

using JumpModel = std::variant<FixedJumps, IidTwoPoint, Persistence, FiniteMarkov>;

/// Throws DomainError when parameters violate the model invariants
/// (probabilities outside [0,1], p0 or columns not summing to one within 1e-12, ...).
void validate(const JumpModel& model);

/// Short human-readable description, used in output metadata.
std::string describe(const JumpModel& model);

/// Persistence expressed as a two-state chain over (+Δφ, −Δφ).
FiniteMarkov to_finite_markov(const Persistence& model);

/// Stateful draw of one chain. Construct once per trajectory.
class JumpSampler {
 public:
  /// Validates the model; throws DomainError.
  explicit JumpSampler(const JumpModel& model);

  /// Restarts the chain (the next draw is jump 1).
  void reset() noexcept { state_ = -1; }

  double next(Xoshiro256& rng);

 private:
  std::size_t draw_index(std::span<const double> cumulative, Xoshiro256& rng) const;

  JumpModel model_;
  std::vector<double> initial_cdf_;
  std::vector<std::vector<double>> column_cdf_;
  int sign_ = 1;
  long state_ = -1;
};

/// n jumps for (model, seed, stream); identical arguments give identical output.
std::vector<double> sample_chain(const JumpModel& model, std::size_t n, std::uint64_t seed,
                                 std::uint64_t stream = 0);

/// Geometric correlation model K_n = B² γ^{|n|} with round-trip time τ_r.
struct CorrelationModel {
  double b = 0.0;
  double gamma = 0.0;
  double tau_r = 1.0;

  /// Throws DomainError unless b ≥ 0, γ ∈ [−1, 1] and τ_r > 0.
  static CorrelationModel make(double b, double gamma, double tau_r);
};

/// K_lag = B² γ^{|lag|}, with 0⁰ = 1.
double correlation(const CorrelationModel& model, long lag) noexcept;

/// B = Δφ, γ = 2p − 1.
CorrelationModel persistence_correlation_model(double delta_phi, double p, double tau_r);

/// Γ_R⁻¹ = τ_r / (1 − γ). Throws DivergenceError at γ = 1.
double correlation_time(const CorrelationModel& model);

struct CorrelationEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Ensemble-and-time average of Δφ_n Δφ_{n+lag}. The standard error treats
/// per-chain averages as the independent samples. Throws DomainError on an
/// empty ensemble or when lag is not shorter than every chain.
CorrelationEstimate empirical_correlation(std::span<const std::vector<double>> chains,
                                          std::size_t lag);

}  // namespace zeno
