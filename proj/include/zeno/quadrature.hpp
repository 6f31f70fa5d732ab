#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace zeno {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  std::size_t max_panels = 200000;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t panels = 0;
};

/// Adaptive composite Gauss–Legendre (15 nodes per panel). Starts from the
/// panels delimited by `breakpoints` (sorted, at least two) and repeatedly
/// bisects the panel with the largest |coarse − refined| estimate until the
/// summed estimate meets max(abs_tol, rel_tol·|value|).
/// Throws ConvergenceError if `max_panels` is exceeded.
QuadratureResult integrate(const std::function<double(double)>& f,
                           std::span<const double> breakpoints,
                           const QuadratureOptions& options = {});

/// Breakpoints on [a, b] graded geometrically towards `peak` with finest
/// spacing about `width`. The peak itself is included when it lies inside.
std::vector<double> graded_breakpoints(double a, double b, double peak, double width);

}  // namespace zeno
