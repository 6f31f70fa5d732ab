// Independent reference computations used only by the tests. None of these
// call into the library path they are used to check.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

inline double deg(double d) { return d * kPi / 180.0; }

/// Free-evolution P_h(n) of the persistence chain by enumerating all 2^n sign
/// paths with their probabilities.
inline double persistence_enumeration(int n, double dphi, double p) {
  if (n == 0) return 1.0;
  const double q = 1.0 - p;
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double prob = 0.5;
    double phi = 0.0;
    int prev = 0;
    for (int k = 0; k < n; ++k) {
      const int s = (mask >> k) & 1U ? 1 : -1;
      if (k > 0) prob *= (s == prev) ? p : q;
      phi += s * dphi;
      prev = s;
    }
    total += prob * std::cos(phi) * std::cos(phi);
  }
  return total;
}

/// ε_h(n)² for a fixed angle by n explicit 2×2 matrix products.
inline double fixed_angle_product(int n, double dphi, double theta) {
  double h = 1.0, v = 0.0;
  for (int k = 0; k < n; ++k) {
    const double nh = std::cos(dphi) * h - std::sin(dphi) * v;
    const double nv = theta * (std::sin(dphi) * h + std::cos(dphi) * v);
    h = nh;
    v = nv;
  }
  return h * h;
}

/// Literal double sum nB² + 2 Σ_{m=1}^{n−1} Σ_{m'=1}^{m} B² γ^{m'} θ^{m'}.
inline double w_double_sum(double b, double gamma, double theta, int n) {
  double s = n * b * b;
  for (int m = 1; m <= n - 1; ++m) {
    for (int mp = 1; mp <= m; ++mp) s += 2.0 * b * b * std::pow(gamma, mp) * std::pow(theta, mp);
  }
  return s;
}

/// Composite Simpson rule with `panels` (even) subintervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

/// Trapezoid rule over tabulated samples.
inline double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
  return s;
}

}  // namespace oracle
