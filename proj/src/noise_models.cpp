#include "zeno/noise_models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/core.h>
#include <fmt/ranges.h>

#include "zeno/errors.hpp"

namespace zeno {
namespace {

constexpr double kStochasticTol = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_angle(double a) {
  if (!std::isfinite(a)) throw DomainError("rotation angle must be finite");
}

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError(fmt::format("{} must lie in [0, 1], got {}", what, p));
  }
}

std::vector<double> cumulative(std::span<const double> probs) {
  std::vector<double> cdf(probs.size());
  std::partial_sum(probs.begin(), probs.end(), cdf.begin());
  // Guard the last bin against rounding so that u < 1 always lands somewhere.
  if (!cdf.empty()) cdf.back() = 1.0;
  return cdf;
}

}  // namespace

void validate(const JumpModel& model) {
  std::visit(Overloaded{
                 [](const FixedJumps& m) { require_angle(m.delta_phi); },
                 [](const IidTwoPoint& m) { require_angle(m.delta_phi); },
                 [](const Persistence& m) {
                   require_angle(m.delta_phi);
                   require_probability(m.p, "persistence probability p");
                 },
                 [](const FiniteMarkov& m) {
                   const std::size_t k = m.values.size();
                   if (k == 0) throw DomainError("finite Markov chain needs at least one value");
                   if (m.p0.size() != k || m.transition.size() != k) {
                     throw DomainError("finite Markov chain dimension mismatch");
                   }
                   for (const double v : m.values) require_angle(v);
                   for (const double p : m.p0) require_probability(p, "initial probability");
                   if (std::abs(std::accumulate(m.p0.begin(), m.p0.end(), 0.0) - 1.0) >
                       kStochasticTol) {
                     throw DomainError("initial distribution must sum to 1");
                   }
                   for (const auto& row : m.transition) {
                     if (row.size() != k) throw DomainError("transition matrix must be square");
                     for (const double p : row) require_probability(p, "transition probability");
                   }
                   for (std::size_t j = 0; j < k; ++j) {
                     double col = 0.0;
                     for (std::size_t i = 0; i < k; ++i) col += m.transition[i][j];
                     if (std::abs(col - 1.0) > kStochasticTol) {
                       throw DomainError(
                           fmt::format("transition column {} sums to {}, not 1", j, col));
                     }
                   }
                 },
             },
             model);
}

std::string describe(const JumpModel& model) {
  return std::visit(
      Overloaded{
          [](const FixedJumps& m) { return fmt::format("fixed(delta_phi={:.17g})", m.delta_phi); },
          [](const IidTwoPoint& m) {
            return fmt::format("iid_two_point(delta_phi={:.17g})", m.delta_phi);
          },
          [](const Persistence& m) {
            return fmt::format("persistence(delta_phi={:.17g};p={:.17g})", m.delta_phi, m.p);
          },
          [](const FiniteMarkov& m) {
            return fmt::format("finite_markov(values=[{:.17g}];p0=[{:.17g}])",
                               fmt::join(m.values, " "), fmt::join(m.p0, " "));
          },
      },
      model);
}

FiniteMarkov to_finite_markov(const Persistence& model) {
  const double q = 1.0 - model.p;
  return FiniteMarkov{{model.delta_phi, -model.delta_phi},
                      {0.5, 0.5},
                      {{model.p, q}, {q, model.p}}};
}

JumpSampler::JumpSampler(const JumpModel& model) : model_(model) {
  validate(model_);
  if (const auto* chain = std::get_if<FiniteMarkov>(&model_)) {
    initial_cdf_ = cumulative(chain->p0);
    const std::size_t k = chain->values.size();
    column_cdf_.resize(k);
    std::vector<double> column(k);
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t i = 0; i < k; ++i) column[i] = chain->transition[i][j];
      column_cdf_[j] = cumulative(column);
    }
  }
}

std::size_t JumpSampler::draw_index(std::span<const double> cdf, Xoshiro256& rng) const {
  const double u = rng.uniform();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  const auto last = static_cast<std::ptrdiff_t>(cdf.size()) - 1;
  return static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - cdf.begin(), last));
}

double JumpSampler::next(Xoshiro256& rng) {
  return std::visit(
      Overloaded{
          [](const FixedJumps& m) { return m.delta_phi; },
          [&](const IidTwoPoint& m) { return rng.uniform() < 0.5 ? m.delta_phi : -m.delta_phi; },
          [&](const Persistence& m) {
            if (state_ < 0) {
              sign_ = rng.uniform() < 0.5 ? 1 : -1;
              state_ = 0;
            } else if (!(rng.uniform() < m.p)) {
              sign_ = -sign_;
            }
            return sign_ * m.delta_phi;
          },
          [&](const FiniteMarkov& m) {
            const std::size_t idx =
                state_ < 0 ? draw_index(initial_cdf_, rng)
                           : draw_index(column_cdf_[static_cast<std::size_t>(state_)], rng);
            state_ = static_cast<long>(idx);
            return m.values[idx];
          },
      },
      model_);
}

std::vector<double> sample_chain(const JumpModel& model, std::size_t n, std::uint64_t seed,
                                 std::uint64_t stream) {
  JumpSampler sampler(model);
  Xoshiro256 rng(seed, stream);
  std::vector<double> out(n);
  for (auto& x : out) x = sampler.next(rng);
  return out;
}

CorrelationModel CorrelationModel::make(double b, double gamma, double tau_r) {
  if (!(b >= 0.0) || !std::isfinite(b)) throw DomainError("B must be finite and non-negative");
  if (!(gamma >= -1.0 && gamma <= 1.0)) {
    throw DomainError(fmt::format("correlation degree gamma must lie in [-1, 1], got {}", gamma));
  }
  if (!(tau_r > 0.0) || !std::isfinite(tau_r)) {
    throw DomainError("round-trip time tau_r must be positive");
  }
  return {b, gamma, tau_r};
}

double correlation(const CorrelationModel& model, long lag) noexcept {
  const long k = lag < 0 ? -lag : lag;
  if (k == 0) return model.b * model.b;
  return model.b * model.b * std::pow(model.gamma, static_cast<double>(k));
}

CorrelationModel persistence_correlation_model(double delta_phi, double p, double tau_r) {
  require_probability(p, "persistence probability p");
  return CorrelationModel::make(std::abs(delta_phi), 2.0 * p - 1.0, tau_r);
}

double correlation_time(const CorrelationModel& model) {
  if (model.gamma >= 1.0) throw DivergenceError("correlation time diverges at gamma = 1");
  return model.tau_r / (1.0 - model.gamma);
}

CorrelationEstimate empirical_correlation(std::span<const std::vector<double>> chains,
                                          std::size_t lag) {
  if (chains.empty()) throw DomainError("empirical correlation needs a non-empty ensemble");
  // Welford over per-chain time averages.
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t count = 0;
  for (const auto& chain : chains) {
    if (lag >= chain.size()) throw DomainError("lag must be shorter than every chain");
    const std::size_t terms = chain.size() - lag;
    double sum = 0.0;
    for (std::size_t n = 0; n < terms; ++n) sum += chain[n] * chain[n + lag];
    const double x = sum / static_cast<double>(terms);
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }
  const double var = count > 1 ? m2 / static_cast<double>(count - 1) : 0.0;
  return {mean, std::sqrt(var / static_cast<double>(count))};
}

}  // namespace zeno
