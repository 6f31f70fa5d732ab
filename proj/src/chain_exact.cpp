#include "zeno/chain_exact.hpp"

#include <cmath>
#include <complex>

#include "zeno/errors.hpp"

namespace zeno {

std::vector<double> p_h_chain_curve(std::uint64_t n_max, const ChainSpec& spec) {
  validate(JumpModel{spec});
  const std::size_t k = spec.values.size();

  std::vector<std::complex<double>> phase(k);
  for (std::size_t j = 0; j < k; ++j) phase[j] = std::polar(1.0, 2.0 * spec.values[j]);

  std::vector<std::complex<double>> f(spec.p0.begin(), spec.p0.end());
  std::vector<std::complex<double>> next(k);
  std::vector<double> out;
  out.reserve(n_max + 1);

  const auto record = [&] {
    std::complex<double> total{};
    for (const auto& x : f) total += x;
    out.push_back(0.5 + 0.5 * total.real());
  };
  record();
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    for (std::size_t i = 0; i < k; ++i) {
      std::complex<double> acc{};
      for (std::size_t j = 0; j < k; ++j) acc += spec.transition[i][j] * phase[j] * f[j];
      next[i] = acc;
    }
    f.swap(next);
    record();
  }
  return out;
}

double p_h_chain(std::uint64_t n, const ChainSpec& spec) {
  return p_h_chain_curve(n, spec).back();
}

ChainSpec persistence_chain_spec(double delta_phi, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("persistence probability must lie in [0, 1]");
  return to_finite_markov(Persistence{delta_phi, p});
}

}  // namespace zeno
