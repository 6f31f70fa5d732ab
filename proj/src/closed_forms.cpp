#include "zeno/closed_forms.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include <fmt/core.h>

#include "zeno/errors.hpp"

namespace zeno {
namespace {

using cplx = std::complex<double>;

// Below n²|z| = 16 the even-power expansion is used instead of the eigenvalue
// difference quotient, which loses ~eps/|root gap| near a double root.
constexpr double kSeriesLimit = 16.0;

cplx ipow(cplx base, std::uint64_t n) noexcept {
  cplx result{1.0, 0.0};
  while (n > 0) {
    if (n & 1U) result *= base;
    base *= base;
    n >>= 1U;
  }
  return result;
}

double ipow(double base, std::uint64_t n) noexcept {
  double result = 1.0;
  while (n > 0) {
    if (n & 1U) result *= base;
    base *= base;
    n >>= 1U;
  }
  return result;
}

// The analytic continuation is real; what survives in the imaginary part is
// rounding amplified by 1/|denominator|.
double real_part_checked(cplx value, double scale, double denominator, const char* where) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double tol = 1e-10 + 64.0 * eps * scale / denominator;
  if (std::abs(value.imag()) > tol) {
    throw std::logic_error(fmt::format("{}: imaginary residue {} exceeds {}", where,
                                       value.imag(), tol));
  }
  return value.real();
}

// Σ_k C(n,2k+1) z^k and Σ_k C(n,2k) z^k. With λ± = m(1 ± √z):
// (λ+ⁿ − λ-ⁿ)/(2m√z) = m^{n−1}·odd and (λ+ⁿ + λ-ⁿ)/2 = mⁿ·even.
struct BinomialSplit {
  double odd = 0.0;
  double even = 0.0;
};

BinomialSplit binomial_split(std::uint64_t n, double z) noexcept {
  const double nn = static_cast<double>(n);
  BinomialSplit s;
  double even_term = 1.0;
  double odd_term = nn;
  for (double j = 0.0; j <= nn; j += 2.0) {
    s.even += even_term;
    s.odd += odd_term;
    even_term *= (nn - j) * (nn - j - 1.0) / ((j + 1.0) * (j + 2.0)) * z;
    odd_term *= (nn - j - 1.0) * (nn - j - 2.0) / ((j + 2.0) * (j + 3.0)) * z;
    if (even_term == 0.0 && odd_term == 0.0) break;
    if (std::abs(even_term) < 1e-18 * std::abs(s.even) &&
        std::abs(odd_term) < 1e-18 * std::abs(s.odd)) {
      break;
    }
  }
  return s;
}

bool use_series(std::uint64_t n, double mid, double z) noexcept {
  const double nn = static_cast<double>(n);
  return mid != 0.0 && nn * nn * std::abs(z) <= kSeriesLimit;
}

void require_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError(fmt::format("p must lie in [0, 1], got {}", p));
}

}  // namespace

bool DecayCurve::well_formed() const noexcept {
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double p = points[i].p_h;
    if (!(p >= 0.0 && p <= 1.0 + 1e-9)) return false;
    if (i > 0 && points[i].n <= points[i - 1].n) return false;
  }
  return true;
}

double p_h_rabi(std::uint64_t n, double delta_phi) noexcept {
  const double c = std::cos(static_cast<double>(n) * delta_phi);
  return c * c;
}

double p_h_projective(std::uint64_t n, double delta_phi) noexcept {
  const double c = std::cos(delta_phi);
  return ipow(c * c, n);
}

double p_h_fixed_angle(std::uint64_t n, double delta_phi, Transmissivity theta) {
  if (!std::isfinite(delta_phi)) throw DomainError("rotation angle must be finite");
  if (n == 0) return 1.0;
  const double t = theta.value();
  const double c = std::cos(delta_phi);
  const double trace = (1.0 + t) * c;
  const double disc = trace * trace - 4.0 * t;
  const double mid = 0.5 * trace;

  double eps_h = 0.0;
  if (mid == 0.0 && disc == 0.0) {
    // Nilpotent: ε_h(n) = c·n·λ^{n−1} − (n−1)·λⁿ with λ = 0.
    eps_h = n == 1 ? c : 0.0;
  } else if (const double z = disc / (4.0 * mid * mid); use_series(n, mid, z)) {
    // ε_h = (c − m)(λ1ⁿ − λ2ⁿ)/D + (λ1ⁿ + λ2ⁿ)/2, m = trace/2.
    const auto s = binomial_split(n, z);
    eps_h = (c - mid) * ipow(mid, n - 1) * s.odd + ipow(mid, n) * s.even;
  } else {
    const cplx d = std::sqrt(cplx{disc, 0.0});
    const cplx l1 = 0.5 * (trace + d);
    const cplx l2 = 0.5 * (trace - d);
    const cplx a = ipow(l1, n) * (c - l2);
    const cplx b = ipow(l2, n) * (l1 - c);
    eps_h = real_part_checked((a + b) / d, std::abs(a) + std::abs(b), std::abs(d),
                              "p_h_fixed_angle");
  }
  return eps_h * eps_h;
}

MasterSolutionParams MasterSolutionParams::make(double r, double gamma0) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("rate R must be finite and >= 0");
  if (!(gamma0 >= 0.0) || !std::isfinite(gamma0)) {
    throw DomainError("absorption rate Gamma0 must be finite and >= 0");
  }
  return {r, gamma0};
}

double two_state_survival(double w, double g) noexcept {
  const double a = -w - 0.5 * g;
  const double s = std::sqrt(w * w + 0.25 * g * g);
  if (s < 1e-6) {
    const double sinhc = 1.0 + s * s / 6.0;
    return std::exp(a) * (std::cosh(s) + 0.5 * g * sinhc);
  }
  // Split cosh/sinh so that neither exponential overflows for large g.
  const double ratio = 0.5 * g / s;
  return 0.5 * std::exp(a + s) * (1.0 + ratio) + 0.5 * std::exp(a - s) * (1.0 - ratio);
}

double p_h_master(double t, const MasterSolutionParams& params) {
  if (!(t >= 0.0)) throw DomainError("time must be non-negative");
  return two_state_survival(params.r * t, params.gamma0 * t);
}

double p_h_iid(std::uint64_t n, double mean_cos2) {
  if (!(mean_cos2 >= -1.0 && mean_cos2 <= 1.0)) {
    throw DomainError("<cos 2 delta_phi> must lie in [-1, 1]");
  }
  return 0.5 + 0.5 * ipow(mean_cos2, n);
}

double p_h_persistence_exact(std::uint64_t n, double delta_phi, double p) {
  require_probability(p);
  if (!std::isfinite(delta_phi)) throw DomainError("rotation angle must be finite");
  if (n == 0) return 1.0;
  const double q = 1.0 - p;
  const double c2 = std::cos(2.0 * delta_phi);
  const double s2 = std::sin(2.0 * delta_phi);
  const double r2 = q * q - p * p * s2 * s2;
  const double base = p * c2;

  if (base == 0.0 && r2 == 0.0) {
    // [g(r) − g(−r)]/(2r) → g'(0).
    return 0.5 + 0.5 * (n == 1 ? q * c2 : 0.0);
  }
  if (const double z = r2 / (base * base); use_series(n, base, z)) {
    const auto s = binomial_split(n, z);
    return 0.5 + 0.5 * (q * c2 * ipow(base, n - 1) * s.odd + ipow(base, n) * s.even);
  }
  const cplx r = std::sqrt(cplx{r2, 0.0});
  const auto g = [&](cplx root) { return (q * c2 + root) * ipow(p * c2 + root, n); };
  const cplx gp = g(r);
  const cplx gm = g(-r);
  const double diff = real_part_checked((gp - gm) / (4.0 * r), std::abs(gp) + std::abs(gm),
                                        4.0 * std::abs(r), "p_h_persistence_exact");
  return 0.5 + diff;
}

double p_h_persistence_approx(std::uint64_t n, double delta_phi, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("effective-step approximation needs 0 < p < 1");
  }
  const double q = 1.0 - p;
  const double base = std::cos(2.0 * delta_phi * p / q);
  if (base < 0.0) {
    throw DomainError("effective-step approximation undefined: cos(2 delta_phi p/q) < 0");
  }
  if (n == 0) return 1.0;
  return 0.5 + 0.5 * std::pow(base, q * static_cast<double>(n) / p);
}

WExponent w_exponent(const CorrelationModel& model, Transmissivity theta, std::uint64_t n,
                     double threshold) {
  const double b2 = model.b * model.b;
  const double x = model.gamma * theta.value();

  WExponent out;
  double power = 1.0;
  double partial = 0.0;
  double nested = 0.0;
  for (std::uint64_t m = 1; m < n; ++m) {
    power *= x;
    partial += b2 * power;
    nested += partial;
  }
  out.exact = static_cast<double>(n) * b2 + 2.0 * nested;

  if (x < 1.0) {
    const double one_minus = 1.0 - x;
    out.asymptote =
        static_cast<double>(n) * b2 * (1.0 + x) / one_minus -
        2.0 * b2 * x / (one_minus * one_minus);
    const double large_n = n == 0 ? std::numeric_limits<double>::infinity()
                                  : std::abs(model.gamma) * theta.value() / (1.0 - x * x) /
                                        static_cast<double>(n);
    const double small_b = b2 / (one_minus * one_minus);
    out.asymptote_valid = large_n <= threshold && small_b <= threshold;
  } else {
    out.asymptote = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

double p_h_master_discrete(std::uint64_t n, const CorrelationModel& model, Transmissivity theta) {
  if (n == 0) return 1.0;
  const double w = w_exponent(model, theta, n).exact;
  if (theta.value() == 0.0) return std::exp(-w);
  const double g = -2.0 * static_cast<double>(n) * std::log(theta.value());
  return two_state_survival(w, g);
}

}  // namespace zeno
