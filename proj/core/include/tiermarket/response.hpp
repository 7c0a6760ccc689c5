#pragma once

// Exact second-stage best responses. For a fixed opponent price the user
// equilibrium is piecewise affine in the own price, one piece per
// complementarity case, so revenue is piecewise quadratic and its maximum is
// found in closed form on every piece.

#include "tiermarket/model.hpp"

namespace tiermarket::response {

struct Response {
  double price = 0.0;
  double revenue = 0.0;
};

// Revenue of `sa` at the given prices (0 for an SA out of the market).
double revenue(const InfoScenario& scenario, const MarketParams& params, const PricePair& prices, Sa sa);

// Exact maximizer of the own revenue over [0, reservation price]. Ties go to
// the lower price.
Response best_response(const InfoScenario& scenario, const MarketParams& params, Sa sa,
                       double opponent_price);

// Largest unilateral revenue gain available to either SA.
double max_gain(const InfoScenario& scenario, const MarketParams& params, const PricePair& prices);

// Revenue tolerance used to accept a price pair as an exact equilibrium.
double gain_tolerance(const MarketParams& params);

struct EquilibriumSearch {
  PricePair prices;
  int iterations = 0;
  bool converged = false;
};

// Finds a pure price equilibrium by bisecting on the composed best-response
// map p2 -> BR2(BR1(p2)), which is monotone because prices are strategic
// complements. Falls back to alternating best responses if the bisection
// limit is not an equilibrium.
EquilibriumSearch find_equilibrium(const InfoScenario& scenario, const MarketParams& params);

}  // namespace tiermarket::response
