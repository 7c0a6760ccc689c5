#include "tiermarket/wardrop.hpp"

#include <algorithm>
#include <cmath>

namespace tiermarket::wardrop {

namespace {

constexpr double kSingular = 1e-13;

struct Builder {
  CaseCandidate c;
  void mass(double m) { c.mass_margins[c.n_mass++] = m; }
  void payoff(double m) { c.payoff_margins[c.n_payoff++] = m; }
};

bool in_support(Support s, Sa sa) {
  switch (s) {
    case Support::None: return false;
    case Support::OnlyOne: return sa == Sa::One;
    case Support::OnlyTwo: return sa == Sa::Two;
    case Support::Both: return true;
  }
  return false;
}

}  // namespace

Tolerance Tolerance::for_params(const MarketParams& p) {
  return {1e-9 * (p.qA * p.v + 1.0), 1e-9 * std::max(1.0, p.Lambda)};
}

std::string to_string(Case c) {
  std::string s;
  switch (c.support) {
    case Support::None: s = "none"; break;
    case Support::OnlyOne: s = "sa1"; break;
    case Support::OnlyTwo: s = "sa2"; break;
    case Support::Both: s = "both"; break;
  }
  return s + (c.coverage == Coverage::Full ? "/full" : "/interior");
}

bool CaseCandidate::consistent(const Tolerance& tol) const {
  for (std::size_t i = 0; i < n_mass; ++i) {
    if (!(mass_margins[i] >= -tol.mass)) return false;
  }
  for (std::size_t i = 0; i < n_payoff; ++i) {
    if (!(payoff_margins[i] >= -tol.payoff)) return false;
  }
  return true;
}

std::optional<CaseCandidate> case_candidate(const AffinePayoffs& m, double Lambda,
                                            const PricePair& prices, Case c) {
  for (Sa sa : {Sa::One, Sa::Two}) {
    if (in_support(c.support, sa) && !m.active[index(sa)]) return std::nullopt;
  }
  const auto& b = m.congestion;
  const auto& a = m.intercept;
  const double r1 = a[0] - prices.p1;
  const double r2 = a[1] - prices.p2;

  Builder out;
  Allocation& x = out.c.alloc;
  const bool full = c.coverage == Coverage::Full;
  if (full && c.support == Support::None) return std::nullopt;

  switch (c.support) {
    case Support::Both:
      if (full) {
        const double D = b[0][0] + b[1][1] - 2 * b[0][1];
        if (!(D > kSingular * (b[0][0] + b[1][1]))) return std::nullopt;
        x.lam1 = (r1 - r2 + (b[1][1] - b[0][1]) * Lambda) / D;
        x.lam2 = Lambda - x.lam1;
      } else {
        const double det = b[0][0] * b[1][1] - b[0][1] * b[1][0];
        if (!(det > kSingular * b[0][0] * b[1][1])) return std::nullopt;
        x.lam1 = (b[1][1] * r1 - b[0][1] * r2) / det;
        x.lam2 = (b[0][0] * r2 - b[1][0] * r1) / det;
      }
      break;
    case Support::OnlyOne:
      if (full) {
        x.lam1 = Lambda;
      } else {
        if (!(b[0][0] > 0)) return std::nullopt;
        x.lam1 = r1 / b[0][0];
      }
      break;
    case Support::OnlyTwo:
      if (full) {
        x.lam2 = Lambda;
      } else {
        if (!(b[1][1] > 0)) return std::nullopt;
        x.lam2 = r2 / b[1][1];
      }
      break;
    case Support::None:
      break;
  }

  if (full) {
    const Sa lead = c.support == Support::OnlyTwo ? Sa::Two : Sa::One;
    x.surplus = m.payoff(lead, prices[lead], x.lam1, x.lam2);
    out.payoff(x.surplus);
  } else {
    x.surplus = 0.0;
    out.mass(Lambda - x.lam1 - x.lam2);
  }
  for (Sa sa : {Sa::One, Sa::Two}) {
    if (in_support(c.support, sa)) {
      out.mass(x[sa]);
    } else if (m.active[index(sa)]) {
      out.payoff(x.surplus - m.payoff(sa, prices[sa], x.lam1, x.lam2));
    }
  }
  return out.c;
}

Solution solve_detailed(const InfoScenario& scenario, const MarketParams& params,
                        const PricePair& prices) {
  if (scenario.kind == ScenarioKind::NoMarket) {
    throw SolverError("no user equilibrium to solve in NoMarket");
  }
  const AffinePayoffs model = affine_payoffs(scenario, params);
  const Tolerance tol = Tolerance::for_params(params);

  std::optional<Solution> found;
  for (Case c : kCaseOrder) {
    const auto cand = case_candidate(model, params.Lambda, prices, c);
    if (!cand || !cand->consistent(tol)) continue;
    Allocation x = cand->alloc;
    // rounding noise (Lambda - lam1, a - b*Lambda - p) would otherwise leave
    // masses and surpluses of order 1e-14 where the exact value is zero
    if (x.lam1 < 1e-3 * tol.mass) x.lam1 = 0.0;
    if (x.lam2 < 1e-3 * tol.mass) x.lam2 = 0.0;
    if (x.surplus < 1e-3 * tol.payoff) x.surplus = 0.0;
    if (!found) {
      found = Solution{x, c, false};
      continue;
    }
    const Allocation& y = found->alloc;
    if (std::abs(x.lam1 - y.lam1) > tol.mass || std::abs(x.lam2 - y.lam2) > tol.mass) {
      found->ambiguous = true;
      break;
    }
  }
  if (!found) {
    throw SolverError("no consistent user-equilibrium case for " + to_string(scenario));
  }
  return *found;
}

Allocation solve(const InfoScenario& scenario, const MarketParams& params, const PricePair& prices) {
  return solve_detailed(scenario, params, prices).alloc;
}

double Report::max_payoff_residual() const {
  return std::max({equal_surplus, idle_dominance, negative_surplus, unserved_surplus});
}

double Report::max_mass_residual() const {
  return std::max({over_coverage, negative_mass, inactive_mass});
}

Report verify(const InfoScenario& scenario, const MarketParams& params, const PricePair& prices,
              const Allocation& alloc) {
  Report r;
  r.tolerance = Tolerance::for_params(params);
  const double mt = r.tolerance.mass;
  const double s = alloc.surplus;

  for (Sa sa : {Sa::One, Sa::Two}) {
    const double lam = alloc[sa];
    r.negative_mass = std::max(r.negative_mass, -lam);
    if (!scenario.active(sa)) {
      r.inactive_mass = std::max(r.inactive_mass, std::abs(lam));
      continue;
    }
    const double u = user_payoff(scenario, params, prices, alloc, sa);
    if (lam > mt) {
      r.equal_surplus = std::max(r.equal_surplus, std::abs(u - s));
    } else {
      r.idle_dominance = std::max(r.idle_dominance, u - s);
    }
  }
  r.negative_surplus = std::max(0.0, -s);
  r.over_coverage = std::max(0.0, alloc.served() - params.Lambda);
  if (alloc.served() < params.Lambda - mt) r.unserved_surplus = std::max(0.0, s);

  r.pass = r.max_payoff_residual() <= r.tolerance.payoff && r.max_mass_residual() <= mt;
  return r;
}

}  // namespace tiermarket::wardrop
