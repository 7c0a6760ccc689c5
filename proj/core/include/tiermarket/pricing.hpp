#pragma once

// Second-stage price equilibria. Each scenario has closed-form candidates
// selected by the regime conditions on eta = (W-L)/L, alpha and v. Every
// candidate is checked against exact best responses before it is returned;
// when no closed form survives the check the equilibrium is computed
// numerically and flagged `closed_form = false`.

#include <optional>
#include <stdexcept>

#include "tiermarket/model.hpp"

namespace tiermarket::pricing {

struct Stage2Result {
  PricePair prices;
  Allocation alloc;  // the user equilibrium at `prices`
  Regime regime = Regime::NoMarket;
  bool closed_form = true;
  // false when no pure equilibrium was found (best responses cycle); prices
  // are then the last best-response iterate
  bool certified = true;
};

Stage2Result monopoly_sa1(const MarketParams& params, Esc esc);
Stage2Result monopoly_sa2(const MarketParams& params, Esc esc);

// Valuation above which the same-ESC full-coverage equilibrium leaves users a
// non-negative surplus. Throws std::domain_error at alpha == 1.
double beta_alpha(const MarketParams& params, Esc esc);

Stage2Result same_esc(const MarketParams& params, Esc esc);
Stage2Result diff_1a2b(const MarketParams& params);
Stage2Result diff_1b2a(const MarketParams& params);

// Smallest alpha such that SA 2 (on ESC B, SA 1 on ESC A) keeps a positive
// price for every alpha at or above it, i.e. the largest alpha where the
// positivity bound on eta is attained; 0 when eta clears the bound
// everywhere.
std::optional<double> alpha_c(const MarketParams& params);

// Dispatches to the operation matching the scenario.
Stage2Result solve(const InfoScenario& scenario, const MarketParams& params);

// Raw closed forms, unchecked.
namespace closed_form {

struct Candidate {
  PricePair prices;
  Allocation alloc;  // masses implied by the formula; surplus left at 0
};

Candidate monopoly_sa1(const MarketParams& params, double q);
Candidate monopoly_sa2(const MarketParams& params, double q);
Candidate same_priced_out(const MarketParams& params, double q);      // SA 2 at zero price and demand
Candidate same_full(const MarketParams& params, double q);            // lam1 + lam2 = Lambda
Candidate same_interior(const MarketParams& params, double q);        // zero user surplus
Candidate diff_1a2b_full(const MarketParams& params);
Candidate diff_1a2b_interior(const MarketParams& params);
Candidate diff_1b2a_full(const MarketParams& params);
Candidate diff_1b2a_interior(const MarketParams& params);

// Condition under which SA 1 (on ESC B) is claimed to keep a positive price
// when the market is fully covered.
bool diff_1b2a_p1_positive_condition(const MarketParams& params);

}  // namespace closed_form

}  // namespace tiermarket::pricing
