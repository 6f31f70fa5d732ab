#pragma once

#include <cstdint>
#include <vector>

#include "zeno/noise_models.hpp"

namespace zeno {

/// Finite Markov chain of rotation angles for the exact free-evolution solver.
/// Same layout as FiniteMarkov: transition[i][j] = P(values[i] | values[j]).
using ChainSpec = FiniteMarkov;

/// Free-evolution P_h(n) = ½ + ½ Re[u (PΦ)ⁿ p₀], with Φ = diag(e^{2iδφ_j}) and
/// u the all-ones row, by n complex matrix–vector products. No renormalization.
/// Throws DomainError on invalid or mismatched dimensions.
double p_h_chain(std::uint64_t n, const ChainSpec& spec);

/// P_h(0..n_max) in one pass of the same recursion.
std::vector<double> p_h_chain_curve(std::uint64_t n_max, const ChainSpec& spec);

/// Two-state persistence chain: values (+Δφ, −Δφ), p₀ = (½, ½), P = [[p, q], [q, p]].
ChainSpec persistence_chain_spec(double delta_phi, double p);

}  // namespace zeno
