#pragma once

// Third-stage user equilibrium. Users are a non-atomic mass; served users of
// both SAs earn a common expected payoff, idle SAs offer no more than that,
// and the common payoff is zero whenever some users stay unserved.
//
// The equilibrium is found by enumerating the finite set of complementarity
// cases (which SAs serve users x whether the market is fully covered),
// solving each case's 1x1 or 2x2 linear system and keeping the first case
// whose solution is consistent. Full-coverage cases are tried first.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

#include "tiermarket/model.hpp"

namespace tiermarket::wardrop {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerance {
  double payoff;  // 1e-9 * (qA*v + 1)
  double mass;    // 1e-9 * max(1, Lambda)

  static Tolerance for_params(const MarketParams& params);
};

enum class Support { None, OnlyOne, OnlyTwo, Both };
enum class Coverage { Full, Interior };

struct Case {
  Support support;
  Coverage coverage;
  friend bool operator==(const Case&, const Case&) = default;
};

std::string to_string(Case c);

// Enumeration order; earlier cases win ties.
inline constexpr std::array<Case, 7> kCaseOrder{{
    {Support::Both, Coverage::Full},
    {Support::OnlyOne, Coverage::Full},
    {Support::OnlyTwo, Coverage::Full},
    {Support::Both, Coverage::Interior},
    {Support::OnlyOne, Coverage::Interior},
    {Support::OnlyTwo, Coverage::Interior},
    {Support::None, Coverage::Interior},
}};

// Unchecked solution of one case's linear system, and the inequalities that
// make it an equilibrium. Every field is affine in the prices. A case is
// consistent iff every mass margin is >= -tol.mass and every payoff margin is
// >= -tol.payoff.
struct CaseCandidate {
  Allocation alloc;  // raw: masses may be negative
  static constexpr std::size_t kMaxMargins = 6;
  std::array<double, kMaxMargins> mass_margins{};
  std::size_t n_mass = 0;
  std::array<double, kMaxMargins> payoff_margins{};
  std::size_t n_payoff = 0;

  bool consistent(const Tolerance& tol) const;
};

// nullopt when the case does not apply to the scenario (an inactive SA in the
// support) or its linear system is singular.
std::optional<CaseCandidate> case_candidate(const AffinePayoffs& model, double Lambda,
                                            const PricePair& prices, Case c);

struct Solution {
  Allocation alloc;
  Case chosen{Support::None, Coverage::Interior};
  bool ambiguous = false;  // another case is consistent with a different allocation
};

// Throws SolverError for NoMarket or when no case is consistent.
Solution solve_detailed(const InfoScenario& scenario, const MarketParams& params,
                        const PricePair& prices);

Allocation solve(const InfoScenario& scenario, const MarketParams& params, const PricePair& prices);

struct Report {
  // payoff units
  double equal_surplus = 0;     // served SA whose users' payoff differs from the common surplus
  double idle_dominance = 0;    // idle SA whose users would earn more than the common surplus
  double negative_surplus = 0;  // common surplus below zero
  double unserved_surplus = 0;  // positive surplus while users stay unserved
  // mass units
  double over_coverage = 0;     // served mass above Lambda
  double negative_mass = 0;
  double inactive_mass = 0;     // mass assigned to an SA that is out of the market
  Tolerance tolerance{};
  bool pass = false;

  double max_payoff_residual() const;
  double max_mass_residual() const;
};

Report verify(const InfoScenario& scenario, const MarketParams& params, const PricePair& prices,
              const Allocation& alloc);

}  // namespace tiermarket::wardrop
