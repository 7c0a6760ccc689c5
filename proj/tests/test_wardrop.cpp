#include <doctest.h>

#include "support.hpp"
#include "tiermarket/wardrop.hpp"

using namespace tiermarket;
using testing::Draws;

namespace {

const InfoScenario kSameA{ScenarioKind::SameEsc, Esc::A};

// Random price pair around the reservation values, sometimes above them.
PricePair random_prices(Draws& d, const MarketParams& p) {
  const double top = 1.2 * p.qA * p.v;
  switch (d.integer(0, 4)) {
    case 0: {
      const double x = d.uniform(0, top);
      return {x, x};
    }
    case 1: return {0.0, d.uniform(0, top)};
    case 2: return {d.uniform(0, top), 0.0};
    default: return {d.uniform(0, top), d.uniform(0, top)};
  }
}

}  // namespace

TEST_CASE("prices above the reservation value leave everyone out") {
  const MarketParams p;
  const Allocation x = wardrop::solve(kSameA, p, {7, 7});
  CHECK(x.lam1 == 0.0);
  CHECK(x.lam2 == 0.0);
  CHECK(x.surplus == 0.0);
}

TEST_CASE("full-coverage user equilibrium") {
  MarketParams p;
  p.alpha = 0.6;
  p.L = 100;
  const Allocation x = wardrop::solve(kSameA, p, {0.256, 0.032});
  CHECK(x.lam1 == doctest::Approx(88.8889).epsilon(1e-6));
  CHECK(x.lam2 == doctest::Approx(11.1111).epsilon(1e-6));
  CHECK(x.surplus == doctest::Approx(5.19467).epsilon(1e-6));
  CHECK(x.served() == doctest::Approx(100));
}

TEST_CASE("interior user equilibrium") {
  MarketParams p;
  p.alpha = 0.5;
  p.L = 30;
  p.v = 1;
  const auto sol = wardrop::solve_detailed(kSameA, p, {0.20526, 0.22105});
  CHECK(sol.alloc.lam1 == doctest::Approx(41.05).epsilon(1e-3));
  CHECK(sol.alloc.lam2 == doctest::Approx(55.26).epsilon(1e-3));
  CHECK(sol.alloc.surplus == 0.0);
  CHECK(sol.alloc.served() < p.Lambda);
  CHECK(sol.chosen == wardrop::Case{wardrop::Support::Both, wardrop::Coverage::Interior});
}

TEST_CASE("NoMarket is rejected") { CHECK_THROWS_AS(wardrop::solve({}, MarketParams{}, {}), wardrop::SolverError); }

TEST_CASE("verify flags constructed violations") {
  MarketParams p;
  p.alpha = 0.6;
  p.L = 100;
  const PricePair prices{0.256, 0.032};
  const Allocation x = wardrop::solve(kSameA, p, prices);
  const auto ok = wardrop::verify(kSameA, p, prices, x);
  CHECK(ok.pass);
  CHECK(ok.max_payoff_residual() <= 1e-9);
  CHECK(ok.max_mass_residual() <= 1e-9);

  Allocation bumped = x;
  bumped.lam1 += 1;
  const auto r1 = wardrop::verify(kSameA, p, prices, bumped);
  CHECK_FALSE(r1.pass);
  CHECK(r1.equal_surplus > 0);

  const auto r2 = wardrop::verify(kSameA, p, prices, {p.Lambda, p.Lambda, 0});
  CHECK_FALSE(r2.pass);
  CHECK(r2.over_coverage == doctest::Approx(p.Lambda));

  const auto r3 = wardrop::verify({ScenarioKind::Monopoly1, Esc::A}, p, {1, 0}, {1, 5, 0});
  CHECK_FALSE(r3.pass);
  CHECK(r3.inactive_mass == doctest::Approx(5));
}

TEST_CASE("solutions satisfy the equilibrium conditions") {
  Draws d(21);
  for (int k = 0; k < 1000; ++k) {
    const MarketParams p = d.market(1.0);
    const auto& s = testing::active_scenarios()[static_cast<std::size_t>(d.integer(0, 7))];
    const PricePair prices = random_prices(d, p);
    const Allocation x = wardrop::solve(s, p, prices);
    const auto r = wardrop::verify(s, p, prices, x);
    INFO(to_string(s), " prices ", prices.p1, ", ", prices.p2);
    CHECK(r.pass);
    // served users earn the common surplus
    for (Sa sa : {Sa::One, Sa::Two}) {
      if (s.active(sa) && x[sa] > 0) {
        CHECK(user_payoff(s, p, prices, x, sa) == doctest::Approx(x.surplus).scale(p.qA * p.v + 1).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("equal prices never leave SA 1 idle while SA 2 serves") {
  Draws d(22);
  for (int k = 0; k < 1000; ++k) {
    const MarketParams p = d.market(1.0);
    const double price = d.uniform(0, p.qA * p.v);
    for (const InfoScenario s : {InfoScenario{ScenarioKind::SameEsc, Esc::A}, InfoScenario{ScenarioKind::SameEsc, Esc::B},
                                 InfoScenario{ScenarioKind::Diff1A2B, Esc::None}}) {
      const Allocation x = wardrop::solve(s, p, {price, price});
      if (x.lam2 > 0) CHECK(x.lam1 > 0);
    }
  }
}

TEST_CASE("mass is monotone in prices") {
  Draws d(23);
  for (int k = 0; k < 1000; ++k) {
    const MarketParams p = d.market(1.0);
    const auto& s = testing::active_scenarios()[static_cast<std::size_t>(d.integer(4, 7))];
    const PricePair prices = random_prices(d, p);
    const Allocation x = wardrop::solve(s, p, prices);
    const double mass_tol = 1e-7 * p.Lambda;
    for (Sa sa : {Sa::One, Sa::Two}) {
      PricePair up = prices;
      up[sa] += d.uniform(1e-3, 1.0);
      const Allocation y = wardrop::solve(s, p, up);
      CHECK(y[sa] <= x[sa] + mass_tol);
      CHECK(y[other(sa)] >= x[other(sa)] - mass_tol);
    }
  }
}

TEST_CASE("away from case boundaries exactly one case is consistent") {
  Draws d(24);
  int checked = 0;
  for (int k = 0; k < 1000; ++k) {
    const MarketParams p = d.market(1.0);
    const auto& s = testing::active_scenarios()[static_cast<std::size_t>(d.integer(0, 7))];
    const PricePair prices{d.uniform(0, 1.2 * p.qA * p.v), d.uniform(0, 1.2 * p.qA * p.v)};
    const AffinePayoffs m = affine_payoffs(s, p);
    const auto tol = wardrop::Tolerance::for_params(p);

    int consistent = 0;
    bool near_boundary = false;
    for (const auto c : wardrop::kCaseOrder) {
      const auto cand = wardrop::case_candidate(m, p.Lambda, prices, c);
      if (!cand) continue;
      for (std::size_t i = 0; i < cand->n_mass; ++i) near_boundary |= std::abs(cand->mass_margins[i]) < 1e3 * tol.mass;
      for (std::size_t i = 0; i < cand->n_payoff; ++i)
        near_boundary |= std::abs(cand->payoff_margins[i]) < 1e3 * tol.payoff;
      if (cand->consistent(tol)) ++consistent;
    }
    if (near_boundary) continue;
    ++checked;
    CHECK(consistent == 1);
    CHECK_FALSE(wardrop::solve_detailed(s, p, prices).ambiguous);
  }
  CHECK(checked > 900);
}
