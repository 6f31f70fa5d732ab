#pragma once

#include <cstdint>

#include "zeno/closed_forms.hpp"
#include "zeno/noise_models.hpp"
#include "zeno/polar_core.hpp"

namespace zeno {

struct EnsembleSpec {
  JumpModel model = FixedJumps{};
  Transmissivity theta{1.0};
  std::uint64_t n_max = 0;
  std::uint64_t trajectories = 1;
  std::uint64_t seed = 0;
  /// Worker threads; 0 picks std::thread::hardware_concurrency(). Results do
  /// not depend on this value.
  unsigned workers = 0;

  /// Validates the model and counts; throws DomainError.
  void validate() const;
};

struct EnsembleResult {
  DecayCurve decay;     ///< mean ε_h² and its standard error
  DecayCurve survival;  ///< mean ε_h² + ε_v² and its standard error
};

/// Runs every trajectory once and fills both curves. Trajectory i draws its
/// angles from Xoshiro256(seed, i). Trajectories are split into a fixed
/// number of contiguous chunks; each chunk is accumulated sequentially and the
/// chunks are merged in index order, so output is bit-identical for any
/// worker count.
EnsembleResult run_ensemble(const EnsembleSpec& spec);

DecayCurve estimate_decay(const EnsembleSpec& spec);
DecayCurve estimate_survival(const EnsembleSpec& spec);

}  // namespace zeno
