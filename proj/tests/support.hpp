#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "tiermarket/model.hpp"

namespace testing {

using namespace tiermarket;

// Hand-rolled generator for parameter draws. Fixed seeds keep every run
// identical.
class Draws {
 public:
  explicit Draws(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  // W = 150, L from eta, remaining ranges as in the certification suite.
  MarketParams market(double alpha_hi = 0.95) {
    MarketParams p;
    p.alpha = uniform(0.0, alpha_hi);
    const double eta = uniform(0.05, 20.0);
    p.L = p.W / (1.0 + eta);
    p.v = uniform(0.5, 20.0);
    p.Lambda = uniform(10.0, 2000.0);
    p.qA = uniform(0.3, 0.9);
    p.qB = uniform(0.1, p.qA - 0.05);
    p.feeA = uniform(0.0, 2.0);
    p.feeB = uniform(0.0, p.feeA);
    return p;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline const std::array<InfoScenario, 8>& active_scenarios() {
  static const std::array<InfoScenario, 8> all = {{
      {ScenarioKind::Monopoly1, Esc::A},
      {ScenarioKind::Monopoly1, Esc::B},
      {ScenarioKind::Monopoly2, Esc::A},
      {ScenarioKind::Monopoly2, Esc::B},
      {ScenarioKind::SameEsc, Esc::A},
      {ScenarioKind::SameEsc, Esc::B},
      {ScenarioKind::Diff1A2B, Esc::None},
      {ScenarioKind::Diff1B2A, Esc::None},
  }};
  return all;
}

inline MarketParams with(double W, double L, double alpha, double v, double Lambda, double qA = 0.6,
                         double qB = 0.4) {
  MarketParams p;
  p.W = W;
  p.L = L;
  p.alpha = alpha;
  p.v = v;
  p.Lambda = Lambda;
  p.qA = qA;
  p.qB = qB;
  return p;
}

inline double rel_err(double got, double want) { return std::abs(got - want) / std::max(1e-300, std::abs(want)); }

}  // namespace testing
