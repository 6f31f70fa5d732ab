#include "zeno/polar_core.hpp"

#include <cmath>

#include <fmt/core.h>

#include "zeno/errors.hpp"

namespace zeno {

Transmissivity::Transmissivity(double theta) : theta_(theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw DomainError(fmt::format("transmissivity must lie in [0, 1], got {}", theta));
  }
}

RoundTripOperator RoundTripOperator::operator*(const RoundTripOperator& rhs) const noexcept {
  RoundTripOperator out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out.m[i][j] = m[i][0] * rhs.m[0][j] + m[i][1] * rhs.m[1][j];
    }
  }
  return out;
}

RoundTripOperator round_trip_operator(double delta_phi, Transmissivity theta) {
  if (!std::isfinite(delta_phi)) throw DomainError("rotation angle must be finite");
  const double c = std::cos(delta_phi);
  const double s = std::sin(delta_phi);
  const double t = theta.value();
  return RoundTripOperator{{{{c, -s}, {t * s, t * c}}}};
}

std::vector<Amplitudes> propagate(const Amplitudes& initial, std::span<const double> jumps,
                                  Transmissivity theta) {
  if (!std::isfinite(initial.h) || !std::isfinite(initial.v)) {
    throw DomainError("initial amplitudes must be finite");
  }
  std::vector<Amplitudes> out;
  out.reserve(jumps.size() + 1);
  out.push_back(initial);
  Amplitudes state = initial;
  for (const double dphi : jumps) {
    if (!std::isfinite(dphi)) throw DomainError("rotation angle must be finite");
    state = step(state, std::cos(dphi), std::sin(dphi), theta.value());
    out.push_back(state);
  }
  return out;
}

PolarizationTensor stokes_tensor(const Amplitudes& state) noexcept {
  return {state.h * state.h, state.v * state.v, 2.0 * state.v * state.h};
}

}  // namespace zeno
