#include <doctest.h>

#include "support.hpp"
#include "tiermarket/oracle.hpp"
#include "tiermarket/pricing.hpp"

using namespace tiermarket;
using testing::Draws;

namespace {

const InfoScenario kMon1A{ScenarioKind::Monopoly1, Esc::A};
const InfoScenario kSameA{ScenarioKind::SameEsc, Esc::A};

MarketParams full_coverage_example() {
  MarketParams p;
  p.alpha = 0.6;
  p.L = 100;
  return p;
}

}  // namespace

TEST_CASE("grid best response, monopoly corner") {
  const MarketParams p;  // q = 0.6, v = 10, alpha = 0.5, L = 50, Lambda = 100
  const auto r = oracle::best_response(kMon1A, p, Sa::One, 0.0);
  CHECK(std::abs(r.price - 5.55) <= 1e-3);
  CHECK(r.revenue == doctest::Approx(555).epsilon(1e-5));
}

TEST_CASE("grid best response recovers a same-ESC price") {
  const auto r = oracle::best_response(kSameA, full_coverage_example(), Sa::One, 0.032);
  CHECK(std::abs(r.price - 0.256) <= 1e-3);
}

TEST_CASE("zero valuation") {
  MarketParams p;
  p.v = 0;
  const auto r = oracle::best_response(kMon1A, p, Sa::One, 0.0);
  CHECK(r.price == 0.0);
  CHECK(r.revenue == 0.0);
  const auto fp = oracle::fixed_point(kSameA, p, {}, 5, 1e-9);
  CHECK(fp.converged);
  CHECK(fp.iterations == 1);
  CHECK(fp.prices.p1 == 0.0);
  CHECK(fp.prices.p2 == 0.0);
}

TEST_CASE("certify_equilibrium") {
  const MarketParams p = full_coverage_example();
  const double eps = 1e-3 * p.qA * p.v;
  const auto c = oracle::certify_equilibrium(kSameA, p, {0.256, 0.032}, eps);
  CHECK(c.is_eps);
  CHECK(c.gain1 <= eps);
  CHECK(c.gain2 <= eps);

  const auto zero = oracle::certify_equilibrium(kSameA, p, {0, 0}, eps);
  CHECK_FALSE(zero.is_eps);
  CHECK(zero.gain1 > eps);

  const MarketParams base;
  const auto mono = pricing::monopoly_sa1(base, Esc::A);
  const auto m = oracle::certify_equilibrium(kMon1A, base, mono.prices, 1e-3 * base.qA * base.v);
  CHECK(m.is_eps);
  CHECK(m.gain2 == 0.0);

  CHECK_THROWS(oracle::certify_equilibrium(kSameA, p, {}, 0.0));
  CHECK_THROWS(oracle::best_response(kSameA, p, Sa::One, 0.0, {0, -1, 1, 1e-3}));
}

TEST_CASE("best-response iteration") {
  const auto fp = oracle::fixed_point(kSameA, full_coverage_example(), {}, 100, 1e-7);
  CHECK(fp.converged);
  CHECK(std::abs(fp.prices.p1 - 0.256) <= 1e-3);
  CHECK(std::abs(fp.prices.p2 - 0.032) <= 1e-3);

  // SA 2 on ESC B cannot price positively here.
  MarketParams p;
  p.alpha = 0.6;
  p.L = 100;
  const auto pinned = oracle::fixed_point({ScenarioKind::Diff1A2B, Esc::None}, p, {}, 100, 1e-7);
  CHECK(pinned.prices.p1 > 0);
  CHECK(pinned.prices.p2 <= 1e-3);

  CHECK_THROWS(oracle::fixed_point(kSameA, p, {}, 0, 1e-7));
}

TEST_CASE("refining the grid moves the best response by less than a coarse bracket") {
  Draws d(41);
  for (int k = 0; k < 40; ++k) {
    const MarketParams p = d.market();
    const auto& s = testing::active_scenarios()[static_cast<std::size_t>(d.integer(0, 7))];
    const double opp = d.uniform(0, p.qA * p.v);
    for (Sa sa : {Sa::One, Sa::Two}) {
      if (!s.active(sa)) continue;
      const oracle::Grid coarse{0, -1, 1000, 1e-3};
      const oracle::Grid fine{0, -1, 2000, 1e-3};
      const auto a = oracle::best_response(s, p, sa, opp, coarse);
      const auto b = oracle::best_response(s, p, sa, opp, fine);
      const double bracket = p.qA * p.v / coarse.steps * coarse.refine;
      CHECK(std::abs(a.price - b.price) <= bracket);
    }
  }
}

TEST_CASE("grid maximum is within eps of the first-order optimum") {
  Draws d(42);
  for (int k = 0; k < 40; ++k) {
    const MarketParams p = d.market();
    const auto& s = testing::active_scenarios()[static_cast<std::size_t>(d.integer(0, 7))];
    const auto r = pricing::solve(s, p);
    if (!r.closed_form) continue;
    const double eps = 1e-3 * p.qA * p.v;
    for (Sa sa : {Sa::One, Sa::Two}) {
      if (!s.active(sa)) continue;
      const auto br = oracle::best_response(s, p, sa, r.prices[other(sa)]);
      const double at_formula = r.prices[sa] * r.alloc[sa];
      CHECK(std::abs(br.revenue - at_formula) <= eps);
    }
  }
}
