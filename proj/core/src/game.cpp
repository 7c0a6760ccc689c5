#include "tiermarket/game.hpp"

#include <optional>

#include "tiermarket/pricing.hpp"

namespace tiermarket::game {

namespace {

std::size_t slot(Esc esc) {
  switch (esc) {
    case Esc::A: return 0;
    case Esc::B: return 1;
    case Esc::None: return 2;
  }
  return 2;
}

Limit label(const Profile& pr) {
  const auto [j1, j2] = pr;
  if (j1 == Esc::None && j2 == Esc::None) return Limit::NoMarket;
  if (j2 == Esc::None) return Limit::Monopoly1;
  if (j1 == Esc::None) return Limit::Monopoly2;
  if (j1 == Esc::A && j2 == Esc::A) return Limit::SameEscA;
  if (j1 != j2) return Limit::DiffSplit;
  return Limit::Other;
}

}  // namespace

EquilibriumOutcome stage2_outcome(const MarketParams& p, Esc j1, Esc j2) {
  EquilibriumOutcome out;
  out.scenario = InfoScenario::from_choices(j1, j2);
  if (out.scenario.kind == ScenarioKind::NoMarket) return out;

  const pricing::Stage2Result r = pricing::solve(out.scenario, p);
  out.prices = r.prices;
  out.alloc = r.alloc;
  out.regime = r.regime;
  out.closed_form = r.closed_form;
  out.certified = r.certified;
  if (j1 != Esc::None) out.profit1 = profit(r.prices.p1, r.alloc.lam1, fee(j1, p));
  if (j2 != Esc::None) out.profit2 = profit(r.prices.p2, r.alloc.lam2, fee(j2, p));
  out.user_surplus = r.alloc.surplus * r.alloc.served();
  out.welfare = out.user_surplus + out.profit1 + out.profit2;
  return out;
}

const EquilibriumOutcome& PayoffMatrix::at(Esc j1, Esc j2) const { return entries[slot(j1)][slot(j2)]; }

PayoffMatrix payoff_matrix(const MarketParams& p) {
  PayoffMatrix m;
  for (Esc j1 : kChoices) {
    for (Esc j2 : kChoices) m.entries[slot(j1)][slot(j2)] = stage2_outcome(p, j1, j2);
  }
  return m;
}

std::vector<Profile> nash_profiles(const PayoffMatrix& m) {
  std::vector<Profile> out;
  for (Esc j1 : kChoices) {
    for (Esc j2 : kChoices) {
      const EquilibriumOutcome& here = m.at(j1, j2);
      bool stable = true;
      for (Esc k : kChoices) {
        if (m.at(k, j2).profit1 > here.profit1 + kNashTolerance) stable = false;
        if (m.at(j1, k).profit2 > here.profit2 + kNashTolerance) stable = false;
      }
      if (stable) out.emplace_back(j1, j2);
    }
  }
  return out;
}

std::vector<Profile> nash_profiles(const MarketParams& p) { return nash_profiles(payoff_matrix(p)); }

std::string_view to_string(Limit l) {
  switch (l) {
    case Limit::SameEscA: return "SameEscA";
    case Limit::DiffSplit: return "DiffSplit";
    case Limit::Monopoly1: return "Monopoly1";
    case Limit::Monopoly2: return "Monopoly2";
    case Limit::NoMarket: return "NoMarket";
    case Limit::Other: return "Other";
  }
  return "Other";
}

Limit limit_classify(const std::vector<Profile>& profiles) {
  std::optional<Limit> shared;
  for (const Profile& pr : profiles) {
    const Limit l = label(pr);
    if (shared && *shared != l) return Limit::Other;
    shared = l;
  }
  return shared.value_or(Limit::Other);
}

Limit limit_classify(const MarketParams& p) { return limit_classify(nash_profiles(p)); }

}  // namespace tiermarket::game
