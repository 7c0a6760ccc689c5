#include "tiermarket/response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "tiermarket/wardrop.hpp"

namespace tiermarket::response {

namespace {

PricePair with_price(Sa sa, double own, double opponent) {
  PricePair p;
  p[sa] = own;
  p[other(sa)] = opponent;
  return p;
}

// Shrinks [lo, hi] to the set where intercept + slope * x >= 0. Pieces are
// cut at exact boundaries so that kinks are hit exactly rather than at the
// edge of the solver's tolerance band.
void restrict(double intercept, double slope, double& lo, double& hi) {
  if (slope > 0) {
    lo = std::max(lo, -intercept / slope);
  } else if (slope < 0) {
    hi = std::min(hi, -intercept / slope);
  } else if (intercept < 0) {
    hi = -std::numeric_limits<double>::infinity();
  }
}

}  // namespace

double revenue(const InfoScenario& scenario, const MarketParams& params, const PricePair& prices, Sa sa) {
  if (!scenario.active(sa)) return 0.0;
  return prices[sa] * wardrop::solve(scenario, params, prices)[sa];
}

Response best_response(const InfoScenario& scenario, const MarketParams& params, Sa sa,
                       double opponent_price) {
  if (!scenario.active(sa)) return {};
  const AffinePayoffs model = affine_payoffs(scenario, params);
  const double cap = std::max(0.0, model.intercept[index(sa)]);

  std::vector<double> trial{0.0, cap};
  for (wardrop::Case c : wardrop::kCaseOrder) {
    const auto at0 = wardrop::case_candidate(model, params.Lambda, with_price(sa, 0.0, opponent_price), c);
    const auto at1 = wardrop::case_candidate(model, params.Lambda, with_price(sa, 1.0, opponent_price), c);
    if (!at0 || !at1) continue;

    double lo = 0.0;
    double hi = cap;
    for (std::size_t i = 0; i < at0->n_mass; ++i) {
      restrict(at0->mass_margins[i], at1->mass_margins[i] - at0->mass_margins[i], lo, hi);
    }
    for (std::size_t i = 0; i < at0->n_payoff; ++i) {
      restrict(at0->payoff_margins[i], at1->payoff_margins[i] - at0->payoff_margins[i], lo, hi);
    }
    if (!(lo <= hi)) continue;

    // own mass on this piece: m0 + m1 * x
    const double m0 = at0->alloc[sa];
    const double m1 = at1->alloc[sa] - m0;
    trial.push_back(lo);
    trial.push_back(hi);
    if (m1 < 0) trial.push_back(std::clamp(-m0 / (2 * m1), lo, hi));
  }

  std::sort(trial.begin(), trial.end());
  Response best{0.0, revenue(scenario, params, with_price(sa, 0.0, opponent_price), sa)};
  for (double x : trial) {
    const double r = revenue(scenario, params, with_price(sa, x, opponent_price), sa);
    if (r > best.revenue) best = {x, r};
  }
  return best;
}

// The user equilibrium accepts payoffs within 1e-9 (qA v + 1) of zero, so a
// deviation can pick up that much per served user without a real gain.
double gain_tolerance(const MarketParams& params) {
  return 1e-8 * (params.qA * params.v + 1.0) * std::max(1.0, params.Lambda);
}

double max_gain(const InfoScenario& scenario, const MarketParams& params, const PricePair& prices) {
  double gain = 0.0;
  for (Sa sa : {Sa::One, Sa::Two}) {
    if (!scenario.active(sa)) continue;
    const Response br = best_response(scenario, params, sa, prices[other(sa)]);
    gain = std::max(gain, br.revenue - revenue(scenario, params, prices, sa));
  }
  return gain;
}

EquilibriumSearch find_equilibrium(const InfoScenario& scenario, const MarketParams& params) {
  EquilibriumSearch out;
  const double tol = gain_tolerance(params);
  auto br = [&](Sa sa, double opp) { return best_response(scenario, params, sa, opp).price; };

  if (!scenario.active(Sa::Two) || !scenario.active(Sa::One)) {
    const Sa sa = scenario.active(Sa::One) ? Sa::One : Sa::Two;
    out.prices[sa] = br(sa, 0.0);
    out.iterations = 1;
    out.converged = true;
    return out;
  }

  const AffinePayoffs model = affine_payoffs(scenario, params);
  double lo = 0.0;
  double hi = std::max(0.0, model.intercept[1]);
  const double width = std::max(hi, 1.0) * 1e-15;
  int it = 0;
  for (; it < 200 && hi - lo > width; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (br(Sa::Two, br(Sa::One, mid)) >= mid) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  PricePair p;
  p.p1 = br(Sa::One, lo);
  p.p2 = br(Sa::Two, p.p1);
  out.iterations = it;
  if (max_gain(scenario, params, p) <= tol) {
    out.prices = p;
    out.converged = true;
    return out;
  }

  // Alternating best responses from the bisection limit.
  for (int k = 0; k < 500; ++k) {
    PricePair next;
    next.p1 = br(Sa::One, p.p2);
    next.p2 = br(Sa::Two, next.p1);
    ++out.iterations;
    const double step = std::max(std::abs(next.p1 - p.p1), std::abs(next.p2 - p.p2));
    p = next;
    if (step <= 1e-14 * (1.0 + params.qA * params.v) && max_gain(scenario, params, p) <= tol) {
      out.converged = true;
      break;
    }
  }
  out.prices = p;
  return out;
}

}  // namespace tiermarket::response
