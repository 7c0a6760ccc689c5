#include <benchmark/benchmark.h>

#include "tiermarket/game.hpp"
#include "tiermarket/oracle.hpp"
#include "tiermarket/pricing.hpp"
#include "tiermarket/sweep.hpp"
#include "tiermarket/wardrop.hpp"

using namespace tiermarket;

namespace {

const InfoScenario kSame{ScenarioKind::SameEsc, Esc::A};
const InfoScenario kSplit{ScenarioKind::Diff1B2A, Esc::None};

void BM_WardropSolve(benchmark::State& state) {
  const MarketParams p;
  PricePair prices{0.25, 0.2};
  for (auto _ : state) {
    prices.p1 += 1e-12;
    benchmark::DoNotOptimize(wardrop::solve(kSame, p, prices));
  }
}
BENCHMARK(BM_WardropSolve);

// closed form plus its best-response check
void BM_PricingClosedForm(benchmark::State& state) {
  MarketParams p;
  p.L = 100;
  p.alpha = 0.6;
  for (auto _ : state) benchmark::DoNotOptimize(pricing::same_esc(p, Esc::A));
}
BENCHMARK(BM_PricingClosedForm);

// no closed form applies: numeric equilibrium search
void BM_PricingNumeric(benchmark::State& state) {
  MarketParams p;
  p.L = 100;
  p.alpha = 0.6;
  for (auto _ : state) benchmark::DoNotOptimize(pricing::diff_1a2b(p));
}
BENCHMARK(BM_PricingNumeric);

void BM_PayoffMatrix(benchmark::State& state) {
  const MarketParams p;
  for (auto _ : state) benchmark::DoNotOptimize(game::payoff_matrix(p));
}
BENCHMARK(BM_PayoffMatrix);

void BM_OracleBestResponse(benchmark::State& state) {
  MarketParams p;
  p.alpha = 0.8;
  p.Lambda = 1000;
  oracle::Grid grid;
  grid.steps = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::best_response(kSplit, p, Sa::One, 1.0, grid));
}
BENCHMARK(BM_OracleBestResponse)->Arg(200)->Arg(2000);

void BM_Sweep(benchmark::State& state) {
  sweep::Spec spec;
  spec.axis = sweep::Axis::L;
  spec.from = 10;
  spec.to = 140;
  spec.steps = 14;
  spec.alphas = {0, 0.25, 0.5, 0.75, 1};
  spec.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sweep::run(MarketParams{}, spec));
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
