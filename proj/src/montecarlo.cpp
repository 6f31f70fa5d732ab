#include "zeno/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "zeno/errors.hpp"
#include "zeno/rng.hpp"

namespace zeno {
namespace {

constexpr std::uint64_t kMaxChunks = 64;

// Per-n running mean and sum of squared deviations over `count` samples.
struct Moments {
  std::vector<double> mean;
  std::vector<double> m2;
  std::uint64_t count = 0;

  explicit Moments(std::size_t size) : mean(size, 0.0), m2(size, 0.0) {}

  void begin_sample() { ++count; }

  void add(std::size_t n, double x) {
    const double delta = x - mean[n];
    mean[n] += delta / static_cast<double>(count);
    m2[n] += delta * (x - mean[n]);
  }

  // Chan et al. pairwise combination.
  void merge(const Moments& other) {
    if (other.count == 0) return;
    if (count == 0) {
      *this = other;
      return;
    }
    const double na = static_cast<double>(count);
    const double nb = static_cast<double>(other.count);
    const double total = na + nb;
    for (std::size_t n = 0; n < mean.size(); ++n) {
      const double delta = other.mean[n] - mean[n];
      mean[n] += delta * nb / total;
      m2[n] += other.m2[n] + delta * delta * na * nb / total;
    }
    count += other.count;
  }

  DecayCurve to_curve(const DecayMeta& meta) const {
    DecayCurve curve;
    curve.meta = meta;
    curve.points.reserve(mean.size());
    const double n = static_cast<double>(count);
    for (std::size_t i = 0; i < mean.size(); ++i) {
      const double var = count > 1 ? m2[i] / (n - 1.0) : 0.0;
      curve.points.push_back({i, mean[i], std::sqrt(var / n)});
    }
    return curve;
  }
};

struct ChunkResult {
  Moments decay;
  Moments survival;
  explicit ChunkResult(std::size_t size) : decay(size), survival(size) {}
};

void run_chunk(const EnsembleSpec& spec, std::uint64_t first, std::uint64_t last,
               ChunkResult& out) {
  JumpSampler sampler(spec.model);
  const double theta = spec.theta.value();
  for (std::uint64_t traj = first; traj < last; ++traj) {
    sampler.reset();
    Xoshiro256 rng(spec.seed, traj);
    out.decay.begin_sample();
    out.survival.begin_sample();

    Amplitudes state{1.0, 0.0};
    out.decay.add(0, 1.0);
    out.survival.add(0, 1.0);

    // Most models revisit ±Δφ; reuse the trig values when they repeat.
    double last_phi = 0.0;
    double c = 1.0;
    double s = 0.0;
    for (std::uint64_t n = 1; n <= spec.n_max; ++n) {
      const double dphi = sampler.next(rng);
      if (dphi == -last_phi) {
        s = -s;
      } else if (dphi != last_phi) {
        c = std::cos(dphi);
        s = std::sin(dphi);
      }
      last_phi = dphi;
      state = step(state, c, s, theta);
      const double ph = state.h * state.h;
      out.decay.add(n, ph);
      out.survival.add(n, ph + state.v * state.v);
    }
  }
}

}  // namespace

void EnsembleSpec::validate() const {
  zeno::validate(model);
  if (trajectories < 1) throw DomainError("ensemble needs at least one trajectory");
}

EnsembleResult run_ensemble(const EnsembleSpec& spec) {
  spec.validate();
  const std::size_t size = spec.n_max + 1;
  const std::uint64_t chunks = std::min(spec.trajectories, kMaxChunks);

  std::vector<ChunkResult> results;
  results.reserve(chunks);
  for (std::uint64_t c = 0; c < chunks; ++c) results.emplace_back(size);

  const auto bounds = [&](std::uint64_t c) {
    return spec.trajectories * c / chunks;
  };

  unsigned workers = spec.workers == 0 ? std::max(1U, std::thread::hardware_concurrency())
                                       : spec.workers;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));

  std::atomic<std::uint64_t> next_chunk{0};
  const auto work = [&] {
    for (std::uint64_t c = next_chunk++; c < chunks; c = next_chunk++) {
      run_chunk(spec, bounds(c), bounds(c + 1), results[c]);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  ChunkResult total(size);
  for (const auto& r : results) {
    total.decay.merge(r.decay);
    total.survival.merge(r.survival);
  }

  DecayMeta meta{describe(spec.model), spec.theta.value(), std::nullopt, spec.seed};
  return {total.decay.to_curve(meta), total.survival.to_curve(meta)};
}

DecayCurve estimate_decay(const EnsembleSpec& spec) { return run_ensemble(spec).decay; }

DecayCurve estimate_survival(const EnsembleSpec& spec) { return run_ensemble(spec).survival; }

}  // namespace zeno
