#include "zeno/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>

#include <fmt/core.h>

#include "zeno/errors.hpp"

namespace zeno {
namespace {

constexpr int kOrder = 15;

struct Rule {
  std::array<double, kOrder> nodes{};
  std::array<double, kOrder> weights{};
};

// Newton iteration on P_n from the Chebyshev initial guess.
Rule make_rule() {
  Rule rule;
  for (int i = 0; i < kOrder; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (kOrder + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= kOrder; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = kOrder * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

const Rule& rule() {
  static const Rule r = make_rule();
  return r;
}

double gauss(const std::function<double(double)>& f, double a, double b) {
  const Rule& r = rule();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < kOrder; ++i) sum += r.weights[i] * f(mid + half * r.nodes[i]);
  return sum * half;
}

struct Panel {
  double a;
  double b;
  double left;   // GL on [a, mid]
  double right;  // GL on [mid, b]
  double error;  // |GL on [a, b] − (left + right)|

  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel make_panel(const std::function<double(double)>& f, double a, double b, double coarse) {
  const double mid = 0.5 * (a + b);
  const double left = gauss(f, a, mid);
  const double right = gauss(f, mid, b);
  return {a, b, left, right, std::abs(coarse - (left + right))};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f,
                           std::span<const double> breakpoints, const QuadratureOptions& options) {
  if (breakpoints.size() < 2) throw DomainError("quadrature needs at least two breakpoints");
  std::priority_queue<Panel> queue;
  double value = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double a = breakpoints[i];
    const double b = breakpoints[i + 1];
    if (!(b > a)) continue;
    Panel p = make_panel(f, a, b, gauss(f, a, b));
    value += p.left + p.right;
    error += p.error;
    queue.push(p);
  }
  if (queue.empty()) throw DomainError("quadrature interval is empty");

  while (error > std::max(options.abs_tol, options.rel_tol * std::abs(value))) {
    if (queue.size() >= options.max_panels) {
      throw ConvergenceError(fmt::format(
          "quadrature did not converge: error estimate {} after {} panels", error, queue.size()));
    }
    const Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel lo = make_panel(f, worst.a, mid, worst.left);
    const Panel hi = make_panel(f, mid, worst.b, worst.right);
    value += (lo.left + lo.right + hi.left + hi.right) - (worst.left + worst.right);
    error += lo.error + hi.error - worst.error;
    queue.push(lo);
    queue.push(hi);
  }

  // Re-sum to shed the drift of the running updates.
  QuadratureResult out;
  out.panels = queue.size();
  while (!queue.empty()) {
    out.value += queue.top().left + queue.top().right;
    out.error_estimate += queue.top().error;
    queue.pop();
  }
  return out;
}

std::vector<double> graded_breakpoints(double a, double b, double peak, double width) {
  std::vector<double> pts{a, b};
  if (peak >= a && peak <= b) pts.push_back(peak);
  if (width > 0.0) {
    for (double d = width; d < (b - a); d *= 4.0) {
      if (peak - d > a) pts.push_back(peak - d);
      if (peak + d < b) pts.push_back(peak + d);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace zeno
