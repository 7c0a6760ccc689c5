#include "tiermarket/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "tiermarket/response.hpp"
#include "tiermarket/wardrop.hpp"

namespace tiermarket::pricing {

namespace closed_form {

namespace {

double own_congestion_sa1(const MarketParams& p) {
  const double a = p.alpha;
  return a * a / p.unlicensed() + (1 - a) * (1 - a) / p.L;
}

Candidate monopoly(const MarketParams& p, double q, double c, Sa sa) {
  Candidate out;
  if (!(p.v > 0)) return out;
  double price;
  double lam;
  if ((p.v / 2) / c <= p.Lambda) {
    price = q * p.v / 2;
    lam = (p.v / 2) / c;
  } else {
    price = q * (p.v - c * p.Lambda);
    lam = p.Lambda;
  }
  out.prices[sa] = price;
  (sa == Sa::One ? out.alloc.lam1 : out.alloc.lam2) = lam;
  return out;
}

// Masses at zero user surplus with both SAs serving: solves the 2x2 system.
Allocation interior_masses(const AffinePayoffs& m, const PricePair& prices) {
  const auto& b = m.congestion;
  const double r1 = m.intercept[0] - prices.p1;
  const double r2 = m.intercept[1] - prices.p2;
  const double det = b[0][0] * b[1][1] - b[0][1] * b[1][0];
  Allocation x;
  x.lam1 = (b[1][1] * r1 - b[0][1] * r2) / det;
  x.lam2 = (b[0][0] * r2 - b[1][0] * r1) / det;
  return x;
}

Allocation interior_masses(const InfoScenario& s, const MarketParams& p, const PricePair& prices) {
  return interior_masses(affine_payoffs(s, p), prices);
}

}  // namespace

Candidate monopoly_sa1(const MarketParams& p, double q) {
  return monopoly(p, q, own_congestion_sa1(p), Sa::One);
}

Candidate monopoly_sa2(const MarketParams& p, double q) {
  return monopoly(p, q, 1.0 / p.unlicensed(), Sa::Two);
}

Candidate same_priced_out(const MarketParams& p, double q) {
  Candidate out;
  const double U = p.unlicensed();
  const double a = p.alpha;
  // SA 1 takes every user who would otherwise go to SA 2 at price zero.
  out.alloc.lam1 = a > 0 ? std::min(p.v * U / a, p.Lambda) : p.Lambda;
  out.prices.p1 = std::max(0.0, q * out.alloc.lam1 * (a / U - own_congestion_sa1(p)));
  return out;
}

Candidate same_full(const MarketParams& p, double q) {
  Candidate out;
  const double U = p.unlicensed();
  const double L = p.L;
  const double a = p.alpha;
  const double om = 1 - a;
  out.prices.p1 = q * p.Lambda * om * (om / (3 * L) + (2 - a) / (3 * U));
  out.prices.p2 = q * p.Lambda * om * ((2 - 2 * a) / (3 * L) - (2 * a - 1) / (3 * U));
  const double slope = q * om * om * (1 / L + 1 / U);
  out.alloc.lam1 = out.prices.p1 / slope;
  out.alloc.lam2 = out.prices.p2 / slope;
  return out;
}

Candidate same_interior(const MarketParams& p, double q) {
  Candidate out;
  const double U = p.unlicensed();
  const double L = p.L;
  const double a = p.alpha;
  const double om = 1 - a;
  const double den = 4 * om * om / L + 3 * a * a / U;
  out.prices.p1 = q * p.v * om * (om * (2 - a) / L + a * a / U) / den;
  out.prices.p2 = q * p.v * om * (2 * om / L - a / U) / den;
  AffinePayoffs m;
  m.intercept = {q * p.v, q * p.v};
  m.congestion = {{{q * own_congestion_sa1(p), q * a / U}, {q * a / U, q / U}}};
  out.alloc = interior_masses(m, out.prices);
  return out;
}

Candidate diff_1a2b_full(const MarketParams& p) {
  Candidate out;
  const double U = p.unlicensed();
  const double L = p.L;
  const double a = p.alpha;
  const double om = 1 - a;
  const double qA = p.qA;
  const double qB = p.qB;
  const double Lam = p.Lambda;
  out.prices.p1 = (qA - qB) * p.v / 3 + (qA * a * a - 3 * qB * a + 2 * qB) * Lam / (3 * U) +
                  qA * om * om * Lam / (3 * L);
  out.prices.p2 = (qB - qA) * p.v / 3 + (2 * qA * a * a - 3 * qB * a + qB) * Lam / (3 * U) +
                  2 * qA * om * om * Lam / (3 * L);
  const double den = qA * a * a / U + qA * om * om / L + qB * (1 - 2 * a) / U;
  out.alloc.lam1 = out.prices.p1 / den;
  out.alloc.lam2 = out.prices.p2 / den;
  return out;
}

Candidate diff_1a2b_interior(const MarketParams& p) {
  Candidate out;
  const double U = p.unlicensed();
  const double L = p.L;
  const double a = p.alpha;
  const double om = 1 - a;
  const double qA = p.qA;
  const double qB = p.qB;
  const double den = 4 * qA * (a * a / U + om * om / L) - qB * a * a / U;
  out.prices.p1 = p.v *
                  ((2 * qA * qA * a * a - qA * qB * a * a * a - qA * qB * a * a) / U +
                   (2 * qA * qA - qB * qA * a) * om * om / L) /
                  den;
  out.prices.p2 =
      p.v * ((2 * qA * qB * a * a - qB * qA * a - qB * qB * a * a) / U + 2 * qA * qB * om * om / L) / den;
  out.alloc = interior_masses({ScenarioKind::Diff1A2B, Esc::None}, p, out.prices);
  return out;
}

Candidate diff_1b2a_full(const MarketParams& p) {
  Candidate out;
  const double U = p.unlicensed();
  const double L = p.L;
  const double a = p.alpha;
  const double om = 1 - a;
  const double qA = p.qA;
  const double qB = p.qB;
  const double Lam = p.Lambda;
  out.prices.p1 = (qB - qA) * p.v / 3 + (2 * qA - 3 * qB * a + qB * a * a) * Lam / (3 * U) +
                  qB * om * om * Lam / (3 * L);
  out.prices.p2 = (qA - qB) * p.v / 3 + (2 * qB * a * a - 3 * qB * a + qA) * Lam / (3 * U) +
                  2 * qB * om * om * Lam / (3 * L);
  const double den = qB * a * a / U + qB * om * om / L + (qA - 2 * qB * a) / U;
  out.alloc.lam1 = out.prices.p1 / den;
  out.alloc.lam2 = out.prices.p2 / den;
  return out;
}

Candidate diff_1b2a_interior(const MarketParams& p) {
  Candidate out;
  const double U = p.unlicensed();
  const double L = p.L;
  const double a = p.alpha;
  const double om = 1 - a;
  const double qA = p.qA;
  const double qB = p.qB;
  const double den = 4 * qA * (a * a / U + om * om / L) - qB * a * a / U;
  out.prices.p1 = p.v *
                  ((2 * qB * qA * a * a - qB * qA * a * a * a - qB * qB * a * a) / U +
                   om * om * (2 - a) * qA * qB / L) /
                  den;
  out.prices.p2 =
      p.v * ((2 * qA * qA * a * a - qA * qB * a * a - qA * qB * a) / U + 2 * qA * qA * om * om / L) / den;
  out.alloc = interior_masses({ScenarioKind::Diff1B2A, Esc::None}, p, out.prices);
  return out;
}

bool diff_1b2a_p1_positive_condition(const MarketParams& p) {
  const double U = p.unlicensed();
  const double a = p.alpha;
  const double qA = p.qA;
  const double qB = p.qB;
  return (qA - qB) * p.v <= (2 * qA - 3 * qB * a + qB * a * a) * p.Lambda / (3 * U) +
                                qB * (1 - a) * (1 - a) * p.Lambda / (3 * p.L);
}

}  // namespace closed_form

namespace {

using closed_form::Candidate;

// Relative agreement required between masses from a formula and from the
// user equilibrium solver.
constexpr double kMassMatch = 1e-7;

struct Option {
  Candidate candidate;
  Regime regime;
};

// Accepts a closed form iff its masses are the user equilibrium at its prices
// and neither SA can gain by deviating.
std::optional<Stage2Result> accept(const InfoScenario& s, const MarketParams& p, const Option& opt) {
  const wardrop::Tolerance tol = wardrop::Tolerance::for_params(p);
  PricePair prices = opt.candidate.prices;
  for (Sa sa : {Sa::One, Sa::Two}) {
    double& x = prices[sa];
    if (!std::isfinite(x) || x < -tol.payoff) return std::nullopt;
    x = std::max(0.0, x);
  }
  const Allocation alloc = wardrop::solve(s, p, prices);
  const double mass_tol = kMassMatch * std::max(1.0, p.Lambda);
  for (Sa sa : {Sa::One, Sa::Two}) {
    const double expected = opt.candidate.alloc[sa];
    if (!std::isfinite(expected) || std::abs(expected - alloc[sa]) > mass_tol) return std::nullopt;
  }
  if (response::max_gain(s, p, prices) > response::gain_tolerance(p)) return std::nullopt;
  return Stage2Result{prices, alloc, opt.regime, true, true};
}

Regime classify(const InfoScenario& s, const MarketParams& p, const PricePair& prices, const Allocation& x) {
  const wardrop::Tolerance tol = wardrop::Tolerance::for_params(p);
  const bool full = x.served() >= p.Lambda - kMassMatch * std::max(1.0, p.Lambda);
  const bool positive_surplus = x.surplus > tol.payoff;
  const bool sa1_out = prices.p1 <= tol.payoff || x.lam1 <= tol.mass;
  const bool sa2_out = prices.p2 <= tol.payoff || x.lam2 <= tol.mass;
  switch (s.kind) {
    case ScenarioKind::SameEsc:
      if (sa2_out) return Regime::SameEsc_P2Zero;
      if (full) return positive_surplus ? Regime::SameEsc_Full : Regime::SameEsc_Boundary;
      return Regime::SameEsc_Interior;
    case ScenarioKind::Diff1A2B:
      if (sa2_out) return Regime::Diff1A2B_P2Zero;
      if (full) return positive_surplus ? Regime::Diff1A2B_Full : Regime::Diff1A2B_Boundary;
      return Regime::Diff1A2B_Interior;
    case ScenarioKind::Diff1B2A:
      if (sa1_out) return Regime::Diff1B2A_P1Zero;
      if (sa2_out) return Regime::Diff1B2A_P2Zero;
      if (full) return positive_surplus ? Regime::Diff1B2A_Full : Regime::Diff1B2A_Boundary;
      return Regime::Diff1B2A_Interior;
    case ScenarioKind::Monopoly1: return Regime::Mon1;
    case ScenarioKind::Monopoly2: return Regime::Mon2;
    case ScenarioKind::NoMarket: return Regime::NoMarket;
  }
  return Regime::NoMarket;
}

Stage2Result settle(const InfoScenario& s, const MarketParams& p, const PricePair& prices) {
  const Allocation alloc = wardrop::solve(s, p, prices);
  const bool certified = response::max_gain(s, p, prices) <= response::gain_tolerance(p);
  return {prices, alloc, classify(s, p, prices, alloc), false, certified};
}

// One SA's price held at zero, the other at its best response to that.
std::optional<Stage2Result> pinned(const InfoScenario& s, const MarketParams& p, Sa zero) {
  PricePair prices;
  prices[other(zero)] = response::best_response(s, p, other(zero), prices[zero]).price;
  if (response::max_gain(s, p, prices) > response::gain_tolerance(p)) return std::nullopt;
  return settle(s, p, prices);
}

// Tries the closed forms in order, then equilibria with one price pinned at
// zero, then a general numerical search.
Stage2Result first_accepted(const InfoScenario& s, const MarketParams& p, const std::vector<Option>& options,
                            std::initializer_list<Sa> zero_prices = {}) {
  for (const Option& opt : options) {
    if (auto r = accept(s, p, opt)) return *r;
  }
  for (Sa sa : zero_prices) {
    if (auto r = pinned(s, p, sa)) return *r;
  }
  return settle(s, p, response::find_equilibrium(s, p).prices);
}

}  // namespace

Stage2Result monopoly_sa1(const MarketParams& p, Esc esc) {
  const InfoScenario s{ScenarioKind::Monopoly1, esc};
  return first_accepted(s, p, {{closed_form::monopoly_sa1(p, quality(esc, p)), Regime::Mon1}});
}

Stage2Result monopoly_sa2(const MarketParams& p, Esc esc) {
  const InfoScenario s{ScenarioKind::Monopoly2, esc};
  return first_accepted(s, p, {{closed_form::monopoly_sa2(p, quality(esc, p)), Regime::Mon2}});
}

double beta_alpha(const MarketParams& p, Esc esc) {
  if (p.alpha >= 1.0) throw std::domain_error("beta(alpha) is undefined at alpha = 1");
  const double q = quality(esc, p);
  const Candidate full = closed_form::same_full(p, q);
  return (p.alpha * full.alloc.lam1 + full.alloc.lam2) / p.unlicensed() + full.prices.p2 / q;
}

Stage2Result same_esc(const MarketParams& p, Esc esc) {
  const InfoScenario s{ScenarioKind::SameEsc, esc};
  const double q = quality(esc, p);
  const DerivedRatios r = derive_ratios(p);

  const Option priced_out{closed_form::same_priced_out(p, q), Regime::SameEsc_P2Zero};
  const Option full{closed_form::same_full(p, q), Regime::SameEsc_Full};
  const Option interior{closed_form::same_interior(p, q), Regime::SameEsc_Interior};

  std::vector<Option> order;
  if (r.eta <= r.priced_out_threshold) {
    order = {priced_out, full, interior};
  } else if (p.v >= beta_alpha(p, esc)) {
    order = {full, interior, priced_out};
  } else if (r.eta <= r.middle_threshold) {
    order = {priced_out, interior, full};
  } else {
    order = {interior, full, priced_out};
  }
  return first_accepted(s, p, order, {Sa::Two});
}

Stage2Result diff_1a2b(const MarketParams& p) {
  const InfoScenario s{ScenarioKind::Diff1A2B, Esc::None};
  const Candidate full = closed_form::diff_1a2b_full(p);
  const Candidate interior = closed_form::diff_1a2b_interior(p);
  const double U = p.unlicensed();
  const DerivedRatios r = derive_ratios(p);

  const bool full_ok = full.prices.p2 >= 0 &&
                       p.qB * p.v >= full.prices.p2 + p.qB * (p.alpha * full.alloc.lam1 + full.alloc.lam2) / U;
  const bool interior_ok = r.eta >= r.sa2_on_b_threshold && interior.prices.p2 >= 0 &&
                           interior.alloc.served() <= p.Lambda;

  std::vector<Option> order;
  if (full_ok) order.push_back({full, Regime::Diff1A2B_Full});
  if (interior_ok) order.push_back({interior, Regime::Diff1A2B_Interior});
  if (!full_ok) order.push_back({full, Regime::Diff1A2B_Full});
  if (!interior_ok) order.push_back({interior, Regime::Diff1A2B_Interior});
  return first_accepted(s, p, order, {Sa::Two});
}

Stage2Result diff_1b2a(const MarketParams& p) {
  const InfoScenario s{ScenarioKind::Diff1B2A, Esc::None};
  const Candidate full = closed_form::diff_1b2a_full(p);
  const Candidate interior = closed_form::diff_1b2a_interior(p);
  const double U = p.unlicensed();
  const DerivedRatios r = derive_ratios(p);

  const bool full_ok = closed_form::diff_1b2a_p1_positive_condition(p) &&
                       p.qA * p.v >= full.prices.p2 + p.qB * p.alpha * full.alloc.lam1 / U +
                                         p.qA * full.alloc.lam2 / U &&
                       full.prices.p1 >= 0 && full.prices.p2 >= 0;
  const bool interior_ok = r.eta >= r.sa2_on_a_threshold && interior.alloc.served() <= p.Lambda &&
                           interior.prices.p1 >= 0 && interior.prices.p2 >= 0;

  std::vector<Option> order;
  if (full_ok) order.push_back({full, Regime::Diff1B2A_Full});
  if (interior_ok) order.push_back({interior, Regime::Diff1B2A_Interior});
  if (!full_ok) order.push_back({full, Regime::Diff1B2A_Full});
  if (!interior_ok) order.push_back({interior, Regime::Diff1B2A_Interior});
  return first_accepted(s, p, order, {Sa::One, Sa::Two});
}

std::optional<double> alpha_c(const MarketParams& p) {
  const double eta = p.unlicensed() / p.L;
  const double r = p.qB / p.qA;
  auto rhs = [&](double a) { return a * (r * a + 1 - 2 * a) / (2 * (1 - a) * (1 - a)); };
  // rhs rises on (0, peak), falls after it and turns negative at zero_from.
  const double peak = 1.0 / (3.0 - 2.0 * r);
  const double zero_from = 1.0 / (2.0 - r);
  if (eta > rhs(peak) * (1 + 1e-12)) return 0.0;
  if (eta >= rhs(peak)) return peak;
  double lo = peak;
  double hi = zero_from;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    (rhs(mid) >= eta ? lo : hi) = mid;
  }
  return lo;
}

Stage2Result solve(const InfoScenario& s, const MarketParams& p) {
  switch (s.kind) {
    case ScenarioKind::NoMarket: return {};
    case ScenarioKind::Monopoly1: return monopoly_sa1(p, s.esc);
    case ScenarioKind::Monopoly2: return monopoly_sa2(p, s.esc);
    case ScenarioKind::SameEsc: return same_esc(p, s.esc);
    case ScenarioKind::Diff1A2B: return diff_1a2b(p);
    case ScenarioKind::Diff1B2A: return diff_1b2a(p);
  }
  return {};
}

}  // namespace tiermarket::pricing
