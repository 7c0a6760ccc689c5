#include "tiermarket/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tiermarket/wardrop.hpp"

namespace tiermarket::oracle {

namespace {

double revenue_at(const InfoScenario& s, const MarketParams& p, Sa sa, double own, double opp) {
  if (!s.active(sa)) return 0.0;
  PricePair prices;
  prices[sa] = own;
  prices[other(sa)] = opp;
  return own * wardrop::solve(s, p, prices)[sa];
}

}  // namespace

Response best_response(const InfoScenario& s, const MarketParams& p, Sa sa, double opp, const Grid& grid) {
  if (grid.steps < 2) throw std::invalid_argument("grid needs at least 2 steps");
  if (!s.active(sa)) return {};
  const double lo = grid.lo;
  const double hi = grid.hi < 0 ? p.qA * p.v : grid.hi;
  if (!(hi > lo)) return {lo, revenue_at(s, p, sa, lo, opp)};

  const double cell = (hi - lo) / grid.steps;
  Response best{lo, revenue_at(s, p, sa, lo, opp)};
  int best_i = 0;
  for (int i = 1; i <= grid.steps; ++i) {
    const double x = lo + cell * i;
    const double r = revenue_at(s, p, sa, x, opp);
    if (r > best.revenue) {
      best = {x, r};
      best_i = i;
    }
  }

  // Golden-section on the two cells around the grid winner.
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo + cell * std::max(0, best_i - 1);
  double b = lo + cell * std::min(grid.steps, best_i + 1);
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = revenue_at(s, p, sa, c, opp);
  double fd = revenue_at(s, p, sa, d, opp);
  while (b - a > cell * grid.refine) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = revenue_at(s, p, sa, c, opp);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = revenue_at(s, p, sa, d, opp);
    }
  }
  const double x = 0.5 * (a + b);
  const double r = revenue_at(s, p, sa, x, opp);
  if (r > best.revenue) best = {x, r};
  return best;
}

Certificate certify_equilibrium(const InfoScenario& s, const MarketParams& p, const PricePair& prices, double eps,
                                const Grid& grid) {
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  Certificate out;
  double* gains[2] = {&out.gain1, &out.gain2};
  for (Sa sa : {Sa::One, Sa::Two}) {
    if (!s.active(sa)) continue;
    const double current = revenue_at(s, p, sa, prices[sa], prices[other(sa)]);
    *gains[index(sa)] = best_response(s, p, sa, prices[other(sa)], grid).revenue - current;
  }
  out.is_eps = out.gain1 <= eps && out.gain2 <= eps;
  return out;
}

FixedPoint fixed_point(const InfoScenario& s, const MarketParams& p, const Grid& grid, int max_iters, double tol) {
  if (max_iters < 1) throw std::invalid_argument("max_iters must be at least 1");
  FixedPoint out;
  for (int it = 1; it <= max_iters; ++it) {
    const PricePair before = out.prices;
    if (s.active(Sa::One)) out.prices.p1 = best_response(s, p, Sa::One, out.prices.p2, grid).price;
    if (s.active(Sa::Two)) out.prices.p2 = best_response(s, p, Sa::Two, out.prices.p1, grid).price;
    out.iterations = it;
    const double move = std::max(std::abs(out.prices.p1 - before.p1), std::abs(out.prices.p2 - before.p2));
    if (move < tol) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace tiermarket::oracle
