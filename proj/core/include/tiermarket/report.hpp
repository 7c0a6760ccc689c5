#pragma once

// Text and CSV rendering shared by the command line tool and the sweep
// writer. Numbers use six significant digits, '.' as decimal separator.

#include <string>
#include <string_view>
#include <vector>

#include "tiermarket/game.hpp"

namespace tiermarket::report {

std::string number(double x);

inline constexpr std::string_view kCsvHeader =
    "axis,alpha,profile_j1,profile_j2,regime,p1,p2,lam1,lam2,profit1,profit2,surplus,welfare";

// One CSV line without the trailing newline. `axis` may be empty.
std::string csv_row(std::string_view axis, double alpha, const game::Profile& profile,
                    const EquilibriumOutcome& outcome);
// Row for a point without any Nash profile: regime NONE, numerics empty.
std::string csv_empty_row(std::string_view axis, double alpha);

std::string outcome_text(const game::Profile& profile, const EquilibriumOutcome& outcome);
std::string matrix_text(const game::PayoffMatrix& matrix);
std::string nash_text(const std::vector<game::Profile>& profiles, const game::PayoffMatrix& matrix);

}  // namespace tiermarket::report
