#include "zeno/spectra_rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/core.h>

#include "zeno/errors.hpp"

namespace zeno {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_ratio(double num, double den) {
  if (den <= 0.0) return num == 0.0 ? 0.0 : kInf;
  return num / den;
}

void require_tau(double tau_r) {
  if (!(tau_r > 0.0) || !std::isfinite(tau_r)) {
    throw DomainError("round-trip time tau_r must be positive");
  }
}

void require_in_zone(double omega, double tau_r) {
  const double edge = kPi / tau_r;
  if (!(std::abs(omega) <= edge * (1.0 + 1e-12))) {
    throw DomainError(fmt::format("omega = {} outside the zone [-pi/tau_r, pi/tau_r]", omega));
  }
}

SpectralFunction sample_zone(double tau_r, std::size_t points,
                             const std::function<double(double)>& f) {
  if (points < 2) throw DomainError("spectral grid needs at least two points");
  SpectralFunction out;
  out.omega.resize(points);
  out.value.resize(points);
  const double edge = kPi / tau_r;
  const double step = 2.0 * edge / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    // Pin the endpoints exactly to ±π/τ_r.
    const double w = i + 1 == points ? edge : -edge + step * static_cast<double>(i);
    out.omega[i] = w;
    out.value[i] = f(w);
  }
  return out;
}

}  // namespace

bool RateResult::all_satisfied() const noexcept {
  return std::all_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.satisfied; });
}

ContinuousNoiseModel ContinuousNoiseModel::make(double k0, double gamma_r) {
  if (!(k0 >= 0.0) || !std::isfinite(k0)) throw DomainError("k0 must be finite and >= 0");
  if (!(gamma_r > 0.0) || !std::isfinite(gamma_r)) throw DomainError("Gamma_R must be positive");
  return {k0, gamma_r};
}

std::vector<Diagnostic> validity_check(const CorrelationModel& model, Transmissivity theta,
                                       std::uint64_t n, double threshold) {
  const double b2 = model.b * model.b;
  const double g = model.gamma;
  const double x = g * theta.value();

  const double n_scale = safe_ratio(std::abs(g) * theta.value(), 1.0 - x * x);
  const double large_n = n == 0 ? (n_scale == 0.0 ? 0.0 : kInf)
                                : n_scale / static_cast<double>(n);
  const double small_jumps = safe_ratio(b2, (1.0 - g) * (1.0 - x));
  const double w_offset = safe_ratio(b2, (1.0 - x) * (1.0 - x));
  // R/Γ_R = B²(1+γθ)/((1−γθ)(1−γ)); τ_r cancels.
  const double slow_decay = safe_ratio(b2 * (1.0 + x), (1.0 - x) * (1.0 - g));

  std::vector<Diagnostic> out;
  for (auto [name, ratio] :
       {std::pair{"large_n", large_n}, std::pair{"small_jumps", small_jumps},
        std::pair{"w_offset", w_offset}, std::pair{"slow_decay", slow_decay}}) {
    out.push_back({name, ratio, ratio <= threshold});
  }
  return out;
}

RateResult decay_rate_geometric(const CorrelationModel& model, Transmissivity theta,
                                std::uint64_t horizon, double threshold) {
  require_tau(model.tau_r);
  const double x = model.gamma * theta.value();
  if (x >= 1.0) throw DivergenceError("decay rate diverges at gamma*theta = 1");
  RateResult out;
  out.r = (1.0 + x) / (1.0 - x) * model.b * model.b / model.tau_r;
  out.diagnostics = validity_check(model, theta, horizon, threshold);
  return out;
}

RateResult decay_rate_series(const std::function<double(long)>& correlations,
                             Transmissivity theta, double tau_r, std::uint64_t truncation) {
  require_tau(tau_r);
  const double t = theta.value();
  const double k0 = correlations(0);
  const long last = static_cast<long>(truncation);
  double tail_term = 0.0;
  double sum = 0.0;
  double power = 1.0;
  for (long n = 1; n <= last; ++n) {
    power *= t;
    tail_term = correlations(n) * power;
    sum += tail_term;
  }
  if (std::abs(tail_term) > 1e-14 * std::abs(k0)) {
    throw ConvergenceError(fmt::format(
        "correlation series not converged at N = {}: |K_N theta^N| = {}", truncation,
        std::abs(tail_term)));
  }
  RateResult out;
  out.r = (k0 + 2.0 * sum) / tau_r;
  return out;
}

double reservoir_spectrum(const CorrelationModel& model, double omega) {
  require_tau(model.tau_r);
  require_in_zone(omega, model.tau_r);
  const double g = model.gamma;
  if (std::abs(g) >= 1.0) throw DomainError("reservoir spectrum is singular at |gamma| = 1");
  const double scale = model.b * model.b / (2.0 * kPi * model.tau_r);
  return scale * (1.0 - g * g) / (1.0 + g * g - 2.0 * g * std::cos(omega * model.tau_r));
}

double measurement_broadening(Transmissivity theta, double tau_r, double omega) {
  require_tau(tau_r);
  require_in_zone(omega, tau_r);
  const double t = theta.value();
  if (t >= 1.0) throw DomainError("measurement broadening is a delta function at theta = 1");
  return tau_r / (2.0 * kPi) * (1.0 - t * t) / (1.0 + t * t - 2.0 * t * std::cos(omega * tau_r));
}

SpectralFunction sample_reservoir_spectrum(const CorrelationModel& model, std::size_t points) {
  require_tau(model.tau_r);
  return sample_zone(model.tau_r, points,
                     [&](double w) { return reservoir_spectrum(model, w); });
}

SpectralFunction sample_measurement_broadening(Transmissivity theta, double tau_r,
                                               std::size_t points) {
  require_tau(tau_r);
  return sample_zone(tau_r, points,
                     [&](double w) { return measurement_broadening(theta, tau_r, w); });
}

RateResult decay_rate_overlap(const CorrelationModel& model, Transmissivity theta,
                              const QuadratureOptions& options) {
  require_tau(model.tau_r);
  if (theta.value() >= 1.0) throw DomainError("overlap rate needs theta < 1");
  if (model.gamma * theta.value() >= 1.0) {
    throw DivergenceError("decay rate diverges at gamma*theta = 1");
  }
  const double tau = model.tau_r;
  const double edge = kPi / tau;

  // Both factors are even in ω; integrate the half zone and double.
  // Peak widths: G ~ (1−|γ|)/τ_r at 0 (γ>0) or at the edge (γ<0); F ~ (1−θ)/τ_r at 0.
  const double g_width = std::max(1.0 - std::abs(model.gamma), 1e-6) / tau;
  const double f_width = std::max(1.0 - theta.value(), 1e-6) / tau;
  std::vector<double> pts = graded_breakpoints(0.0, edge, 0.0, 0.5 * std::min(g_width, f_width));
  if (model.gamma < 0.0) {
    const auto edge_pts = graded_breakpoints(0.0, edge, edge, 0.5 * g_width);
    pts.insert(pts.end(), edge_pts.begin(), edge_pts.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  }

  const auto integrand = [&](double w) {
    return 2.0 * kPi * reservoir_spectrum(model, w) * measurement_broadening(theta, tau, w);
  };
  const QuadratureResult q = integrate(integrand, pts, options);

  RateResult out;
  out.r = 2.0 * q.value;
  out.diagnostics = validity_check(model, theta, 1000);
  return out;
}

double effective_measurement_rate(Transmissivity theta, double tau_r) {
  require_tau(tau_r);
  const double t = theta.value();
  return 2.0 * (1.0 - t) / ((1.0 + t) * tau_r);
}

double qze_rate_form(double delta_phi, double tau_r, Transmissivity theta) {
  require_tau(tau_r);
  if (theta.value() >= 1.0) throw DomainError("Zeno rate form needs theta < 1");
  const double mu = delta_phi / tau_r;
  return 2.0 * mu * mu / effective_measurement_rate(theta, tau_r);
}

RateResult continuous_rate(const ContinuousNoiseModel& noise, double gamma0, double threshold) {
  if (!(gamma0 >= 0.0) || !std::isfinite(gamma0)) {
    throw DomainError("absorption rate Gamma0 must be finite and >= 0");
  }
  RateResult out;
  out.r = 2.0 * noise.k0 / (noise.gamma_r + 0.5 * gamma0);
  const double slow = out.r / noise.gamma_r;
  const double markov = out.r / (noise.gamma_r + gamma0);
  out.diagnostics = {{"slow_decay", slow, slow <= threshold},
                     {"markov_reduction", markov, markov <= threshold}};
  return out;
}

double continuous_reservoir_spectrum(const ContinuousNoiseModel& noise, double omega) noexcept {
  return noise.k0 / kPi * noise.gamma_r / (noise.gamma_r * noise.gamma_r + omega * omega);
}

double continuous_measurement_broadening(double gamma0, double omega) {
  if (!(gamma0 > 0.0)) throw DomainError("Lorentzian broadening needs Gamma0 > 0");
  const double h = 0.5 * gamma0;
  return h / (kPi * (h * h + omega * omega));
}

double continuous_rate_overlap(const ContinuousNoiseModel& noise, double gamma0,
                               double half_width, const QuadratureOptions& options) {
  if (!(gamma0 > 0.0)) throw DomainError("overlap quadrature needs Gamma0 > 0");
  const double limit = half_width * noise.gamma_r;
  const double width = 0.5 * std::min(noise.gamma_r, 0.5 * gamma0);
  const auto pts = graded_breakpoints(0.0, limit, 0.0, width);
  const auto integrand = [&](double w) {
    return 2.0 * kPi * continuous_reservoir_spectrum(noise, w) *
           continuous_measurement_broadening(gamma0, w);
  };
  return 2.0 * integrate(integrand, pts, options).value;
}

}  // namespace zeno
