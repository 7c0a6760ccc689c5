#pragma once

// First-stage ESC selection: each SA picks ESC A, ESC B or stays out, and
// payoffs are the profits of the second-stage equilibrium that follows.

#include <array>
#include <string_view>
#include <utility>
#include <vector>

#include "tiermarket/model.hpp"

namespace tiermarket::game {

inline constexpr std::array<Esc, 3> kChoices = {Esc::A, Esc::B, Esc::None};

using Profile = std::pair<Esc, Esc>;

EquilibriumOutcome stage2_outcome(const MarketParams& params, Esc j1, Esc j2);

struct PayoffMatrix {
  // entries[j1][j2], indexed in kChoices order
  std::array<std::array<EquilibriumOutcome, 3>, 3> entries;

  const EquilibriumOutcome& at(Esc j1, Esc j2) const;
};

PayoffMatrix payoff_matrix(const MarketParams& params);

inline constexpr double kNashTolerance = 1e-9;

// Pure profiles from which no SA gains more than kNashTolerance by switching
// its own choice. Sorted with A < B < None.
std::vector<Profile> nash_profiles(const PayoffMatrix& matrix);
std::vector<Profile> nash_profiles(const MarketParams& params);

enum class Limit { SameEscA, DiffSplit, Monopoly1, Monopoly2, NoMarket, Other };

std::string_view to_string(Limit label);

// Label shared by every Nash profile, or Other when they disagree or none
// exists.
Limit limit_classify(const std::vector<Profile>& profiles);
Limit limit_classify(const MarketParams& params);

}  // namespace tiermarket::game
