#pragma once

#include <array>
#include <span>
#include <vector>

namespace zeno {

/// Real field envelope of the photon: horizontal and vertical components.
struct Amplitudes {
  double h = 1.0;
  double v = 0.0;

  double norm2() const noexcept { return h * h + v * v; }
  friend bool operator==(const Amplitudes&, const Amplitudes&) = default;
};

/// Amplitude transmission of the absorber per pass, θ ∈ [0, 1].
/// θ = 0 is an ideal projective measurement, θ = 1 no measurement at all.
class Transmissivity {
 public:
  /// Throws DomainError outside [0, 1] or for NaN.
  explicit Transmissivity(double theta);

  double value() const noexcept { return theta_; }
  /// Measurement effectiveness 1 − θ.
  double effectiveness() const noexcept { return 1.0 - theta_; }

 private:
  double theta_;
};

/// (P_h, P_v, u) with u = 2 ε_v ε_h the coherence (first Stokes parameter).
struct PolarizationTensor {
  double p_h = 0.0;
  double p_v = 0.0;
  double u = 0.0;
};

/// One round trip: rotation by Δφ followed by absorption of the vertical
/// component, as a 2×2 real matrix acting on (ε_h, ε_v).
struct RoundTripOperator {
  std::array<std::array<double, 2>, 2> m{};

  Amplitudes apply(const Amplitudes& a) const noexcept {
    return {m[0][0] * a.h + m[0][1] * a.v, m[1][0] * a.h + m[1][1] * a.v};
  }
  double determinant() const noexcept { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

  /// Matrix product this·rhs (rhs acts first).
  RoundTripOperator operator*(const RoundTripOperator& rhs) const noexcept;
};

/// [[cos Δφ, −sin Δφ], [θ sin Δφ, θ cos Δφ]]. Throws DomainError for non-finite Δφ.
RoundTripOperator round_trip_operator(double delta_phi, Transmissivity theta);

/// Advances `state` by one round trip without building the matrix.
inline Amplitudes step(const Amplitudes& state, double cos_phi, double sin_phi,
                       double theta) noexcept {
  return {cos_phi * state.h - sin_phi * state.v,
          theta * (sin_phi * state.h + cos_phi * state.v)};
}

/// Trajectory of amplitudes: element 0 is `initial`, element n is the ordered
/// product of the first n round-trip operators applied to it.
std::vector<Amplitudes> propagate(const Amplitudes& initial, std::span<const double> jumps,
                                  Transmissivity theta);

PolarizationTensor stokes_tensor(const Amplitudes& state) noexcept;

}  // namespace zeno
