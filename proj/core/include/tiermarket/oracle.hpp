#pragma once

// Brute-force reference for second-stage prices. Uses nothing but the user
// equilibrium solver: revenue is sampled on a price grid and the best cell is
// polished by golden-section search.

#include "tiermarket/model.hpp"

namespace tiermarket::oracle {

struct Grid {
  double lo = 0.0;
  double hi = -1.0;  // negative: use qA * v
  int steps = 2000;
  double refine = 1e-3;  // final golden bracket as a fraction of one cell
};

struct Response {
  double price = 0.0;
  double revenue = 0.0;
};

Response best_response(const InfoScenario& scenario, const MarketParams& params, Sa sa,
                       double opponent_price, const Grid& grid = {});

struct Certificate {
  bool is_eps = false;
  double gain1 = 0.0;
  double gain2 = 0.0;
};

Certificate certify_equilibrium(const InfoScenario& scenario, const MarketParams& params,
                                const PricePair& prices, double eps, const Grid& grid = {});

struct FixedPoint {
  PricePair prices;
  int iterations = 0;
  bool converged = false;  // false: `prices` is the last iterate
};

// Alternating best responses from (0, 0) until both prices move by less
// than `tol`.
FixedPoint fixed_point(const InfoScenario& scenario, const MarketParams& params, const Grid& grid,
                       int max_iters, double tol);

}  // namespace tiermarket::oracle
