#include "tiermarket/model.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace tiermarket {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_finite(double value, const char* key) {
  if (!std::isfinite(value)) throw InvalidParams(key, std::string(key) + " must be finite");
}

}  // namespace

void validate(const MarketParams& p) {
  require_finite(p.W, "W");
  require_finite(p.L, "L");
  require_finite(p.alpha, "alpha");
  require_finite(p.v, "v");
  require_finite(p.Lambda, "Lambda");
  require_finite(p.qA, "qA");
  require_finite(p.qB, "qB");
  require_finite(p.feeA, "feeA");
  require_finite(p.feeB, "feeB");
  if (!(p.W > 0)) throw InvalidParams("W", "W must be positive");
  if (!(p.L > 0 && p.L < p.W)) throw InvalidParams("L", "0 < L < W required");
  if (!(p.alpha >= 0 && p.alpha <= 1)) throw InvalidParams("alpha", "alpha must lie in [0, 1]");
  if (!(p.v >= 0)) throw InvalidParams("v", "v must be non-negative");
  if (!(p.Lambda > 0)) throw InvalidParams("Lambda", "Lambda must be positive");
  if (!(p.qA > 0 && p.qA <= 1)) throw InvalidParams("qA", "qA must lie in (0, 1]");
  if (!(p.qB > 0 && p.qB <= 1)) throw InvalidParams("qB", "qB must lie in (0, 1]");
  if (!(p.qA > p.qB)) throw InvalidParams("qB", "qA must exceed qB");
  if (!(p.feeA >= 0)) throw InvalidParams("feeA", "feeA must be non-negative");
  if (!(p.feeB >= 0)) throw InvalidParams("feeB", "feeB must be non-negative");
}

DerivedRatios derive_ratios(const MarketParams& p) {
  DerivedRatios r{};
  const double a = p.alpha;
  r.eta = p.unlicensed() / p.L;
  if (a >= 1.0) {
    r.priced_out_threshold = kInf;
    r.middle_threshold = kInf;
    r.sa2_on_b_threshold = kInf;
    r.sa2_on_a_threshold = kInf;
    return r;
  }
  const double om = 1.0 - a;
  r.priced_out_threshold = (2 * a - 1) / (2 * om);
  r.middle_threshold = a / (2 * om);
  r.sa2_on_b_threshold = (p.qB * a * a / p.qA + a - 2 * a * a) / (2 * om * om);
  r.sa2_on_a_threshold = (p.qB * a * a + p.qB * a - 2 * p.qA * a * a) / (2 * p.qA * om * om);
  return r;
}

std::string_view to_string(Esc esc) {
  switch (esc) {
    case Esc::A: return "A";
    case Esc::B: return "B";
    case Esc::None: return "none";
  }
  return "?";
}

Esc parse_esc(std::string_view text) {
  std::string lower;
  for (char c : text) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "a") return Esc::A;
  if (lower == "b") return Esc::B;
  if (lower == "none" || lower == "phi" || lower == "-") return Esc::None;
  throw std::invalid_argument("unknown ESC choice '" + std::string(text) + "'");
}

double quality(Esc esc, const MarketParams& p) {
  switch (esc) {
    case Esc::A: return p.qA;
    case Esc::B: return p.qB;
    case Esc::None: return 0.0;
  }
  return 0.0;
}

double fee(Esc esc, const MarketParams& p) {
  switch (esc) {
    case Esc::A: return p.feeA;
    case Esc::B: return p.feeB;
    case Esc::None: return 0.0;
  }
  return 0.0;
}

InfoScenario InfoScenario::from_choices(Esc j1, Esc j2) {
  if (j1 == Esc::None && j2 == Esc::None) return {ScenarioKind::NoMarket, Esc::None};
  if (j2 == Esc::None) return {ScenarioKind::Monopoly1, j1};
  if (j1 == Esc::None) return {ScenarioKind::Monopoly2, j2};
  if (j1 == j2) return {ScenarioKind::SameEsc, j1};
  if (j1 == Esc::A) return {ScenarioKind::Diff1A2B, Esc::None};
  return {ScenarioKind::Diff1B2A, Esc::None};
}

bool InfoScenario::active(Sa sa) const {
  switch (kind) {
    case ScenarioKind::NoMarket: return false;
    case ScenarioKind::Monopoly1: return sa == Sa::One;
    case ScenarioKind::Monopoly2: return sa == Sa::Two;
    default: return true;
  }
}

std::string to_string(const InfoScenario& s) {
  switch (s.kind) {
    case ScenarioKind::NoMarket: return "NoMarket";
    case ScenarioKind::Monopoly1: return "Monopoly1(" + std::string(to_string(s.esc)) + ")";
    case ScenarioKind::Monopoly2: return "Monopoly2(" + std::string(to_string(s.esc)) + ")";
    case ScenarioKind::SameEsc: return "SameEsc(" + std::string(to_string(s.esc)) + ")";
    case ScenarioKind::Diff1A2B: return "Diff1A2B";
    case ScenarioKind::Diff1B2A: return "Diff1B2A";
  }
  return "?";
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::NoMarket: return "NoMarket";
    case Regime::Mon1: return "Mon1";
    case Regime::Mon2: return "Mon2";
    case Regime::SameEsc_P2Zero: return "SameEsc_P2Zero";
    case Regime::SameEsc_Full: return "SameEsc_Full";
    case Regime::SameEsc_Interior: return "SameEsc_Interior";
    case Regime::SameEsc_Boundary: return "SameEsc_Boundary";
    case Regime::Diff1A2B_Full: return "Diff1A2B_Full";
    case Regime::Diff1A2B_Interior: return "Diff1A2B_Interior";
    case Regime::Diff1A2B_P2Zero: return "Diff1A2B_P2Zero";
    case Regime::Diff1A2B_Boundary: return "Diff1A2B_Boundary";
    case Regime::Diff1B2A_Full: return "Diff1B2A_Full";
    case Regime::Diff1B2A_Interior: return "Diff1B2A_Interior";
    case Regime::Diff1B2A_P1Zero: return "Diff1B2A_P1Zero";
    case Regime::Diff1B2A_P2Zero: return "Diff1B2A_P2Zero";
    case Regime::Diff1B2A_Boundary: return "Diff1B2A_Boundary";
  }
  return "?";
}

double user_payoff(const InfoScenario& s, const MarketParams& p, const PricePair& prices,
                   const Allocation& alloc, Sa sa) {
  if (!s.active(sa)) {
    throw std::invalid_argument("SA " + std::to_string(index(sa) + 1) + " is not in the market in " +
                                to_string(s));
  }
  const double U = p.unlicensed();
  const double L = p.L;
  const double a = p.alpha;
  const double l1 = alloc.lam1;
  const double l2 = alloc.lam2;
  const double qA = p.qA;
  const double qB = p.qB;

  switch (s.kind) {
    case ScenarioKind::Monopoly1: {
      const double q = quality(s.esc, p);
      return q * p.v - q * a * a * l1 / U - q * (1 - a) * (1 - a) * l1 / L - prices.p1;
    }
    case ScenarioKind::Monopoly2: {
      const double q = quality(s.esc, p);
      return q * p.v - q * l2 / U - prices.p2;
    }
    case ScenarioKind::SameEsc: {
      const double q = quality(s.esc, p);
      if (sa == Sa::One) {
        return q * p.v - q * a * a * l1 / U - q * (1 - a) * (1 - a) * l1 / L - q * a * l2 / U - prices.p1;
      }
      return q * p.v - q * a * l1 / U - q * l2 / U - prices.p2;
    }
    case ScenarioKind::Diff1A2B:
      if (sa == Sa::One) {
        return qA * p.v - (qA - qB) * a * a * l1 / U - qB * a * (a * l1 + l2) / U -
               qA * (1 - a) * (1 - a) * l1 / L - prices.p1;
      }
      return qB * p.v - qB * (a * l1 + l2) / U - prices.p2;
    case ScenarioKind::Diff1B2A:
      if (sa == Sa::One) {
        return qB * p.v - qB * a * (a * l1 + l2) / U - qB * (1 - a) * (1 - a) * l1 / L - prices.p1;
      }
      return qA * p.v - qB * a * l1 / U - qA * l2 / U - prices.p2;
    case ScenarioKind::NoMarket:
      break;
  }
  throw std::invalid_argument("no users are served in NoMarket");
}

double profit(double price, double lam, double fee_paid) { return price * lam - fee_paid; }

AffinePayoffs affine_payoffs(const InfoScenario& s, const MarketParams& p) {
  AffinePayoffs m;
  const double U = p.unlicensed();
  const double a = p.alpha;
  const double licensed_share = (1 - a) * (1 - a) / p.L;
  const double c1 = a * a / U + licensed_share;  // SA 1's own congestion per unit quality

  switch (s.kind) {
    case ScenarioKind::NoMarket:
      break;
    case ScenarioKind::Monopoly1: {
      const double q = quality(s.esc, p);
      m.active = {true, false};
      m.intercept = {q * p.v, 0.0};
      m.congestion = {{{q * c1, 0.0}, {0.0, 0.0}}};
      break;
    }
    case ScenarioKind::Monopoly2: {
      const double q = quality(s.esc, p);
      m.active = {false, true};
      m.intercept = {0.0, q * p.v};
      m.congestion = {{{0.0, 0.0}, {0.0, q / U}}};
      break;
    }
    case ScenarioKind::SameEsc: {
      const double q = quality(s.esc, p);
      m.active = {true, true};
      m.intercept = {q * p.v, q * p.v};
      m.congestion = {{{q * c1, q * a / U}, {q * a / U, q / U}}};
      break;
    }
    case ScenarioKind::Diff1A2B:
      m.active = {true, true};
      m.intercept = {p.qA * p.v, p.qB * p.v};
      m.congestion = {{{p.qA * c1, p.qB * a / U}, {p.qB * a / U, p.qB / U}}};
      break;
    case ScenarioKind::Diff1B2A:
      m.active = {true, true};
      m.intercept = {p.qB * p.v, p.qA * p.v};
      m.congestion = {{{p.qB * c1, p.qB * a / U}, {p.qB * a / U, p.qA / U}}};
      break;
  }
  return m;
}

}  // namespace tiermarket
