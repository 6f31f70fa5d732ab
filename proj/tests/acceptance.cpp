// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "oracles.hpp"
#include "zeno/chain_exact.hpp"
#include "zeno/cli.hpp"
#include "zeno/closed_forms.hpp"
#include "zeno/montecarlo.hpp"
#include "zeno/quadrature.hpp"
#include "zeno/spectra_rates.hpp"

using namespace zeno;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double budget_s;
  std::function<Outcome()> check;
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

constexpr double kB = 0.1;
constexpr double kTau = 0.07;

CorrelationModel model(double gamma) { return CorrelationModel::make(kB, gamma, kTau); }

Outcome rate_endpoints() {
  double worst = 0.0;
  const auto r = [](double gamma, double theta) {
    return decay_rate_geometric(model(gamma), Transmissivity(theta)).r;
  };
  for (const double t : {0.0, 0.3, 0.5, 0.9, 1.0}) {
    worst = std::max(worst, rel(r(0.0, t), 0.1428571428571428));
  }
  worst = std::max(worst, rel(r(0.7, 1.0), 0.8095238095238095));
  worst = std::max(worst, rel(r(-0.9, 1.0), 0.0075187969924812));
  for (const double g : {-0.9, -0.5, 0.0, 0.5, 0.7, 0.99}) {
    worst = std::max(worst, rel(r(g, 0.0), 0.1428571428571428));
  }
  return {worst <= 1e-9, fmt::format("max relative error {:.2e}", worst)};
}

Outcome monotonicity() {
  bool ok = true;
  double flat = 0.0;
  for (const double gamma : {0.7, 0.0, -0.9}) {
    double prev = decay_rate_geometric(model(gamma), Transmissivity(1.0)).r;
    for (int k = 1; k <= 100; ++k) {
      const double r = decay_rate_geometric(model(gamma), Transmissivity(1.0 - k / 100.0)).r;
      if (gamma > 0) ok = ok && r < prev;
      if (gamma < 0) ok = ok && r > prev;
      if (gamma == 0) flat = std::max(flat, std::abs(r - prev));
      prev = r;
    }
  }
  ok = ok && flat <= 1e-12;
  return {ok, fmt::format("strict ordering {}, gamma=0 spread {:.1e}", ok ? "holds" : "broken",
                         flat)};
}

Outcome overlap_identity() {
  double worst = 0.0;
  for (const double g : {-0.95, -0.7, 0.0, 0.7, 0.95}) {
    for (const double t : {0.0, 0.5, 0.9, 0.99}) {
      const double closed = decay_rate_geometric(model(g), Transmissivity(t)).r;
      worst = std::max(worst, rel(decay_rate_overlap(model(g), Transmissivity(t)).r, closed));
    }
  }
  return {worst <= 1e-8, fmt::format("max relative difference {:.2e}", worst)};
}

Outcome f_normalization() {
  double worst = 0.0;
  const double zone = M_PI / kTau;
  for (const double t : {0.0, 0.3, 0.9, 0.99}) {
    const Transmissivity th(t);
    const auto f = [&](double w) { return measurement_broadening(th, kTau, w); };
    const auto pts = graded_breakpoints(-zone, zone, 0.0, (1.0 - t) / kTau);
    worst = std::max(worst, std::abs(integrate(f, pts).value - 1.0));
    worst = std::max(worst, std::abs(oracle::simpson(f, -zone, zone, 20000) - 1.0));
  }
  return {worst <= 1e-8, fmt::format("max |integral - 1| {:.2e} (adaptive and Simpson)", worst)};
}

// Neighbouring n share trajectories, so misses come in runs and a single
// ensemble is a noisy judge of the 99% rate. Pool five fixed seeds per p.
Outcome oracle_triangle() {
  const double d = oracle::deg(4.0);
  const std::uint64_t n_max = 500;
  const std::uint64_t seeds[] = {1, 2, 3, 4, 5};
  double worst_chain = 0.0;
  double worst_pooled = 1.0;
  double worst_single = 1.0;
  double z2_sum = 0.0;
  std::uint64_t z2_count = 0;
  for (const double p : {0.3, 0.5, 0.8}) {
    const auto chain = p_h_chain_curve(n_max, persistence_chain_spec(d, p));
    std::vector<double> exact(n_max + 1);
    for (std::uint64_t n = 0; n <= n_max; ++n) {
      exact[n] = p_h_persistence_exact(n, d, p);
      worst_chain = std::max(worst_chain, std::abs(exact[n] - chain[n]));
    }
    int pooled = 0;
    for (const auto seed : seeds) {
      EnsembleSpec spec;
      spec.model = Persistence{d, p};
      spec.theta = Transmissivity(1.0);
      spec.n_max = n_max;
      spec.trajectories = 100000;
      spec.seed = seed;
      const auto mc = estimate_decay(spec);
      int hits = 0;
      for (const auto& pt : mc.points) {
        const double se = pt.std_error.value_or(0.0);
        // The n = 0 and n = 1 spreads vanish; allow rounding there.
        hits += std::abs(pt.p_h - exact[pt.n]) <= 3.0 * se + 1e-12;
        if (se > 0.0) {
          z2_sum += std::pow((pt.p_h - exact[pt.n]) / se, 2);
          ++z2_count;
        }
      }
      pooled += hits;
      worst_single = std::min(worst_single, hits / static_cast<double>(n_max + 1));
    }
    worst_pooled = std::min(worst_pooled, pooled / static_cast<double>(5 * (n_max + 1)));
  }
  return {worst_chain <= 1e-10 && worst_pooled >= 0.99,
          fmt::format("closed form vs recursion {:.1e}; MC within 3se at {:.2f}% of n pooled over "
                      "5 seeds (worst p), worst single seed {:.1f}%, mean z^2 {:.2f}",
                      worst_chain, 100.0 * worst_pooled, 100.0 * worst_single,
                      z2_sum / static_cast<double>(z2_count))};
}

Outcome limit_reductions() {
  double worst = 0.0;
  const double d = oracle::deg(4.0);
  for (const double angle : {d, 0.3, 1.1}) {
    for (std::uint64_t n = 0; n <= 200; ++n) {
      worst = std::max(worst, std::abs(p_h_persistence_exact(n, angle, 0.5) -
                                       (0.5 + 0.5 * std::pow(std::cos(2 * angle), n))));
      worst = std::max(worst, std::abs(p_h_persistence_exact(n, angle, 1.0) -
                                       std::pow(std::cos(n * angle), 2)));
      worst = std::max(worst, std::abs(p_h_fixed_angle(n, angle, Transmissivity(1.0)) -
                                       std::pow(std::cos(n * angle), 2)));
      worst = std::max(worst, std::abs(p_h_fixed_angle(n, angle, Transmissivity(0.0)) -
                                       std::pow(std::cos(angle), 2.0 * n)));
    }
  }
  return {worst <= 1e-12, fmt::format("max deviation {:.1e}", worst)};
}

Outcome zeno_windows() {
  const double d = oracle::deg(4.0);
  const std::uint64_t horizon = 10000;
  std::uint64_t first = 0, last = 0;
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    if (p_h_projective(n, d) > p_h_persistence_exact(n, d, 0.8)) {
      if (first == 0) first = n;
      last = n;
    }
  }
  // Beyond the horizon the projective curve is ~0 while the free one is ~1/2.
  const bool finite = last > 0 && last < horizon / 2;
  bool reverse = true;
  for (std::uint64_t n = 2; n <= 200; ++n) {
    reverse = reverse && p_h_projective(n, d) < p_h_persistence_exact(n, d, 0.3);
  }
  return {first > 0 && finite && reverse,
          fmt::format("p=0.8 window n={}..{}; p=0.3 reverse inequality on 2..200 {}", first, last,
                      reverse ? "holds" : "fails")};
}

Outcome master_consistency() {
  const double gamma = 0.7, theta = 0.9;
  const auto m = model(gamma);
  const Transmissivity th(theta);
  const double r = decay_rate_geometric(m, th).r;
  const double g0 = -2.0 * std::log(theta) / kTau;
  const auto params = MasterSolutionParams::make(r, g0);

  double worst = 0.0;
  std::uint64_t worst_n = 0, counted = 0;
  for (std::uint64_t n = 1; n <= 1000; ++n) {
    bool valid = true;
    for (const auto& dgn : validity_check(m, th, n)) {
      if (dgn.name == "large_n" || dgn.name == "small_jumps") valid = valid && dgn.satisfied;
    }
    if (!valid) continue;
    ++counted;
    const double discrete = p_h_master_discrete(n, m, th);
    const double continuous = p_h_master(static_cast<double>(n) * kTau, params);
    const double d = rel(continuous, discrete);
    if (d > worst) {
      worst = d;
      worst_n = n;
    }
  }

  double free_dev = 0.0;
  for (const double r0 : {0.01, 0.142857, 0.809524, 3.0}) {
    for (double t = 0.0; t <= 20.0; t += 0.05) {
      free_dev = std::max(free_dev, std::abs(p_h_master(t, MasterSolutionParams::make(r0, 0.0)) -
                                             0.5 * (1.0 + std::exp(-2.0 * r0 * t))));
    }
  }
  return {counted > 0 && worst <= 0.01 && free_dev <= 1e-12,
          fmt::format("discrete vs continuous max rel {:.2e} at n={} over {} valid n; "
                      "Gamma0=0 deviation {:.1e}",
                      worst, worst_n, counted, free_dev)};
}

Outcome continuous_identity() {
  double worst = 0.0;
  const struct {
    double k0, gr, g0;
  } cases[] = {{1, 1, 0.1}, {1, 1, 10}, {0.5, 2, 1}};
  for (const auto& c : cases) {
    const auto noise = ContinuousNoiseModel::make(c.k0, c.gr);
    const double closed = continuous_rate(noise, c.g0).r;
    worst = std::max(worst, rel(continuous_rate_overlap(noise, c.g0), closed));
  }
  return {worst <= 1e-4, fmt::format("max relative difference {:.2e}", worst)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string csv_body(const std::string& text) {
  std::istringstream is(text);
  std::string line, out;
  while (std::getline(is, line)) {
    if (!line.starts_with("#")) out += line + "\n";
  }
  return out;
}

Outcome determinism() {
  const auto dir = fs::temp_directory_path() / ("zeno_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const auto shell = [&](const std::string& args, const fs::path& out) {
    const std::string cmd =
        fmt::format("{} montecarlo {} --out {}", ZENO_CLI_PATH, args, out.string());
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) && WEXITSTATUS(status) == 0;
  };
  const std::string flags = "--model persistence --delta-phi 4deg --p 0.8 --theta 0.9 --seed 77";
  bool ok = shell(flags + " --workers 1", dir / "a.csv");
  ok = shell(flags + " --workers 1", dir / "b.csv") && ok;
  ok = shell(flags + " --workers 8", dir / "c.csv") && ok;
  const std::string a = slurp(dir / "a.csv");
  const bool repeat = !a.empty() && csv_body(a) == csv_body(slurp(dir / "b.csv"));
  const bool workers = csv_body(a) == csv_body(slurp(dir / "c.csv"));

  std::ostringstream in_process, err;
  const int code = cli::run({"montecarlo", "--model", "persistence", "--delta-phi", "4deg", "--p",
                             "0.8", "--theta", "0.9", "--seed", "77", "--workers", "3"},
                            in_process, err);
  const bool same_in_process = code == 0 && csv_body(in_process.str()) == csv_body(a);
  fs::remove_all(dir);
  return {ok && repeat && workers && same_in_process,
          fmt::format("repeat run identical: {}; 1 vs 8 workers identical: {}; in-process 3 "
                      "workers identical: {}",
                      repeat, workers, same_in_process)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "rate endpoints", 1.0, rate_endpoints},
      {2, "QZE/AZE monotonicity", 1.0, monotonicity},
      {3, "overlap identity", 10.0, overlap_identity},
      {4, "F normalization", 5.0, f_normalization},
      {5, "oracle triangle at theta=1", 60.0, oracle_triangle},
      {6, "limit reductions", 1.0, limit_reductions},
      {7, "QZE/AZE windows", 1.0, zeno_windows},
      {8, "master-solution consistency", 5.0, master_consistency},
      {9, "continuous-theory identity", 5.0, continuous_identity},
      {10, "determinism", 60.0, determinism},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = elapsed <= c.budget_s;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::cout << fmt::format("[{}] {:>2}. {}: {} ({:.2f} s of {:.0f} s{})\n",
                             pass ? "PASS" : "FAIL", c.id, c.title, o.detail, elapsed, c.budget_s,
                             in_time ? "" : ", over budget");
  }
  std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
