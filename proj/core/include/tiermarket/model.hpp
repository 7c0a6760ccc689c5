#pragma once

// Domain types and the expected-payoff / profit formulas of the two-tier
// spectrum market: SA 1 holds a priority license on L MHz and offloads a
// fraction alpha of its users onto the W-L MHz general-access band, SA 2 only
// uses the general-access band. Each SA buys availability information from
// ESC A (quality qA) or ESC B (quality qB < qA), or stays out.

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tiermarket {

struct MarketParams {
  double W = 150.0;      // total bandwidth (MHz)
  double L = 50.0;       // licensed bandwidth (MHz), 0 < L < W
  double alpha = 0.5;    // probability SA 1 serves a user on the unlicensed band
  double v = 10.0;       // per-user service valuation
  double Lambda = 100.0; // total user mass
  double qA = 0.6;       // availability probability reported by ESC A
  double qB = 0.4;       // availability probability reported by ESC B
  double feeA = 1.0;     // price ESC A charges an SA
  double feeB = 0.5;     // price ESC B charges an SA

  double unlicensed() const { return W - L; }
};

// Thrown when a parameter set violates the model's domain. `key` names the
// offending field (config key spelling).
class InvalidParams : public std::invalid_argument {
 public:
  InvalidParams(std::string key, const std::string& what)
      : std::invalid_argument(what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

void validate(const MarketParams& params);

struct DerivedRatios {
  double eta;                   // (W-L)/L
  double priced_out_threshold;  // (2a-1)/(2(1-a)); eta at or below it leaves SA 2 priced out
  double middle_threshold;      // a/(2(1-a))
  double sa2_on_b_threshold;    // SA 2 (on ESC B) prices positively iff eta >= this
  double sa2_on_a_threshold;    // SA 2 (on ESC A, SA 1 on B) prices positively iff eta >= this
};

// The three alpha-thresholds are +inf at alpha == 1.
DerivedRatios derive_ratios(const MarketParams& params);

enum class Esc { A, B, None };

std::string_view to_string(Esc esc);
Esc parse_esc(std::string_view text);  // "A", "B", "none" (case-insensitive)

double quality(Esc esc, const MarketParams& params);  // 0 for None
double fee(Esc esc, const MarketParams& params);      // 0 for None

enum class Sa { One = 0, Two = 1 };

constexpr std::size_t index(Sa sa) { return static_cast<std::size_t>(sa); }
constexpr Sa other(Sa sa) { return sa == Sa::One ? Sa::Two : Sa::One; }

enum class ScenarioKind { NoMarket, Monopoly1, Monopoly2, SameEsc, Diff1A2B, Diff1B2A };

struct InfoScenario {
  ScenarioKind kind = ScenarioKind::NoMarket;
  Esc esc = Esc::None;  // the contracted ESC for Monopoly*/SameEsc, None otherwise

  static InfoScenario from_choices(Esc j1, Esc j2);

  bool active(Sa sa) const;
  friend bool operator==(const InfoScenario&, const InfoScenario&) = default;
};

std::string to_string(const InfoScenario& scenario);

struct PricePair {
  double p1 = 0.0;
  double p2 = 0.0;

  double operator[](Sa sa) const { return sa == Sa::One ? p1 : p2; }
  double& operator[](Sa sa) { return sa == Sa::One ? p1 : p2; }
};

struct Allocation {
  double lam1 = 0.0;
  double lam2 = 0.0;
  double surplus = 0.0;  // common per-user payoff of served users

  double operator[](Sa sa) const { return sa == Sa::One ? lam1 : lam2; }
  double served() const { return lam1 + lam2; }
};

enum class Regime {
  NoMarket,
  Mon1,
  Mon2,
  SameEsc_P2Zero,
  SameEsc_Full,
  SameEsc_Interior,
  SameEsc_Boundary,
  Diff1A2B_Full,
  Diff1A2B_Interior,
  Diff1A2B_P2Zero,
  Diff1A2B_Boundary,
  Diff1B2A_Full,
  Diff1B2A_Interior,
  Diff1B2A_P1Zero,
  Diff1B2A_P2Zero,
  Diff1B2A_Boundary,
};

std::string_view to_string(Regime regime);

struct EquilibriumOutcome {
  InfoScenario scenario;
  PricePair prices;
  Allocation alloc;
  Regime regime = Regime::NoMarket;
  bool closed_form = true;
  bool certified = true;  // prices are an equilibrium of the pricing stage
  double profit1 = 0.0;
  double profit2 = 0.0;
  double user_surplus = 0.0;
  double welfare = 0.0;
};

// Expected payoff of a user served by `sa` at the given masses and prices.
// Throws std::invalid_argument when `sa` is not in the market.
double user_payoff(const InfoScenario& scenario, const MarketParams& params,
                   const PricePair& prices, const Allocation& alloc, Sa sa);

// Net SA profit: revenue minus the ESC fee.
double profit(double price, double lam, double fee);

// Every scenario's user payoff has the form
//   intercept[i] - congestion[i][0]*lam1 - congestion[i][1]*lam2 - p_i,
// with a symmetric congestion matrix. Rows of inactive SAs are zero.
struct AffinePayoffs {
  std::array<double, 2> intercept{};
  std::array<std::array<double, 2>, 2> congestion{};
  std::array<bool, 2> active{};

  double payoff(Sa sa, double price, double lam1, double lam2) const {
    const auto i = index(sa);
    return intercept[i] - congestion[i][0] * lam1 - congestion[i][1] * lam2 - price;
  }
};

AffinePayoffs affine_payoffs(const InfoScenario& scenario, const MarketParams& params);

}  // namespace tiermarket
