#include <cmath>
#include <functional>

#include <doctest.h>

#include "oracles.hpp"
#include "zeno/chain_exact.hpp"
#include "zeno/closed_forms.hpp"
#include "zeno/errors.hpp"

using namespace zeno;
using oracle::deg;

namespace {

// Sum over every path of states with its probability.
double enumerate_chain(int n, const ChainSpec& spec) {
  double total = 0.0;
  const std::size_t k = spec.values.size();
  std::function<void(int, std::size_t, double, double)> walk = [&](int step, std::size_t state,
                                                                   double prob, double phi) {
    if (step == n) {
      total += prob * std::cos(phi) * std::cos(phi);
      return;
    }
    for (std::size_t next = 0; next < k; ++next) {
      const double p = spec.transition[next][state];
      if (p > 0.0) walk(step + 1, next, prob * p, phi + spec.values[next]);
    }
  };
  if (n == 0) return 1.0;
  for (std::size_t s = 0; s < k; ++s) {
    if (spec.p0[s] > 0.0) walk(1, s, spec.p0[s], spec.values[s]);
  }
  return total;
}

}  // namespace

TEST_CASE("persistence chain spec layout") {
  auto s = persistence_chain_spec(0.1, 1.0);
  CHECK(s.transition == std::vector<std::vector<double>>{{1.0, 0.0}, {0.0, 1.0}});
  s = persistence_chain_spec(0.1, 0.8);
  CHECK(s.transition[0][0] == 0.8);
  CHECK(s.transition[1][0] == doctest::Approx(0.2));
  CHECK(s.transition[0][1] == doctest::Approx(0.2));
  s = persistence_chain_spec(0.1, 0.0);
  CHECK(s.transition == std::vector<std::vector<double>>{{0.0, 1.0}, {1.0, 0.0}});
  CHECK(s.values == std::vector<double>{0.1, -0.1});
}

TEST_CASE("recursion against the persistence closed form") {
  const double d = deg(4.0);
  CHECK(p_h_chain(0, persistence_chain_spec(d, 0.8)) == 1.0);
  CHECK(p_h_chain(10, persistence_chain_spec(d, 0.5)) == doctest::Approx(0.95341).epsilon(1e-5));
  for (const double p : {0.0, 0.3, 0.5, 0.8, 1.0}) {
    const auto curve = p_h_chain_curve(500, persistence_chain_spec(d, p));
    REQUIRE(curve.size() == 501);
    for (std::uint64_t n = 0; n <= 500; ++n) {
      CHECK(std::abs(curve[n] - p_h_persistence_exact(n, d, p)) <= 1e-10);
      CHECK(std::abs(curve[n] - 0.5) <= 0.5 + 1e-12);
    }
    CHECK(curve[37] == p_h_chain(37, persistence_chain_spec(d, p)));
  }
}

TEST_CASE("sign symmetry and one-state chain") {
  for (const double p : {0.2, 0.7}) {
    for (const std::uint64_t n : {1, 9, 120}) {
      CHECK(p_h_chain(n, persistence_chain_spec(0.3, p)) ==
            doctest::Approx(p_h_chain(n, persistence_chain_spec(-0.3, p))).epsilon(1e-14));
    }
  }
  const ChainSpec single{{0.2}, {1.0}, {{1.0}}};
  for (std::uint64_t n = 0; n <= 100; ++n) {
    CHECK(p_h_chain(n, single) == doctest::Approx(p_h_rabi(n, 0.2)).epsilon(1e-12));
  }
}

TEST_CASE("three-state chain against path enumeration") {
  const ChainSpec spec{{0.05, -0.12, 0.3},
                       {0.2, 0.5, 0.3},
                       {{0.6, 0.1, 0.3}, {0.3, 0.8, 0.2}, {0.1, 0.1, 0.5}}};
  const auto curve = p_h_chain_curve(9, spec);
  for (int n = 0; n <= 9; ++n) {
    CHECK(curve[n] == doctest::Approx(enumerate_chain(n, spec)).epsilon(1e-13));
  }
}

TEST_CASE("invalid chains") {
  CHECK_THROWS_AS(p_h_chain(3, ChainSpec{{0.1, 0.2}, {1.0}, {{1.0}}}), DomainError);
  CHECK_THROWS_AS(p_h_chain(3, ChainSpec{{0.1}, {1.0}, {{0.9}}}), DomainError);
  CHECK_THROWS_AS(persistence_chain_spec(0.1, -0.1), DomainError);
}
