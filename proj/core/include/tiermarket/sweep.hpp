#pragma once

// Parameter sweeps over one axis (optionally crossed with a set of alpha
// values). Points are solved concurrently; output order is axis-major and
// independent of scheduling.

#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "tiermarket/game.hpp"

namespace tiermarket::sweep {

enum class Axis { L, alpha, v, Lambda };

std::string_view to_string(Axis axis);
Axis parse_axis(std::string_view text);  // throws std::invalid_argument

struct Spec {
  Axis axis = Axis::L;
  double from = 0.0;
  double to = 0.0;
  int steps = 2;
  std::vector<double> alphas;  // empty: keep the base alpha
  unsigned threads = 0;        // 0: hardware concurrency
};

struct Point {
  double axis_value = 0.0;
  MarketParams params;
  std::vector<game::Profile> profiles;
  std::vector<EquilibriumOutcome> outcomes;  // one per profile
};

// Grid of axis values; a single value when from == to. Throws
// std::invalid_argument for from > to, or from < to with fewer than 2 steps.
std::vector<double> axis_values(const Spec& spec);

// Throws config::ConfigError when a grid point violates the parameter domain.
std::vector<Point> run(const MarketParams& base, const Spec& spec);

// Main CSV: one row per point, describing its first Nash profile.
void write_csv(std::ostream& out, const std::vector<Point>& points);
// Companion CSV with every Nash profile of every point.
void write_profiles(std::ostream& out, const std::vector<Point>& points);

}  // namespace tiermarket::sweep
