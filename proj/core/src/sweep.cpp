#include "tiermarket/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

#include "tiermarket/config.hpp"
#include "tiermarket/report.hpp"

namespace tiermarket::sweep {

std::string_view to_string(Axis axis) {
  switch (axis) {
    case Axis::L: return "L";
    case Axis::alpha: return "alpha";
    case Axis::v: return "v";
    case Axis::Lambda: return "Lambda";
  }
  return "?";
}

Axis parse_axis(std::string_view text) {
  for (Axis a : {Axis::L, Axis::alpha, Axis::v, Axis::Lambda}) {
    if (text == to_string(a)) return a;
  }
  throw std::invalid_argument("unknown axis '" + std::string(text) + "' (expected L, alpha, v or Lambda)");
}

std::vector<double> axis_values(const Spec& spec) {
  if (spec.from > spec.to) throw std::invalid_argument("sweep needs from <= to");
  if (spec.from == spec.to) return {spec.from};
  if (spec.steps < 2) throw std::invalid_argument("sweep needs at least 2 steps");
  std::vector<double> out(static_cast<std::size_t>(spec.steps));
  for (int i = 0; i < spec.steps; ++i) {
    out[static_cast<std::size_t>(i)] =
        i == spec.steps - 1 ? spec.to : spec.from + (spec.to - spec.from) * i / (spec.steps - 1);
  }
  return out;
}

std::vector<Point> run(const MarketParams& base, const Spec& spec) {
  if (spec.axis == Axis::alpha && !spec.alphas.empty()) {
    throw std::invalid_argument("an alpha set cannot be combined with an alpha axis");
  }
  const std::vector<double> values = axis_values(spec);
  const std::vector<double> alphas = spec.alphas.empty() ? std::vector<double>{base.alpha} : spec.alphas;

  std::vector<Point> points;
  points.reserve(values.size() * alphas.size());
  for (double x : values) {
    for (double a : alphas) {
      Point pt;
      pt.axis_value = x;
      pt.params = base;
      pt.params.alpha = a;
      config::set(pt.params, to_string(spec.axis), x);
      try {
        validate(pt.params);
      } catch (const InvalidParams& e) {
        throw config::ConfigError(e.key(), "sweep point " + std::string(to_string(spec.axis)) + " = " +
                                               report::number(x) + ": " + e.what());
      }
      points.push_back(std::move(pt));
    }
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        Point& pt = points[i];
        const game::PayoffMatrix m = game::payoff_matrix(pt.params);
        pt.profiles = game::nash_profiles(m);
        for (const auto& pr : pt.profiles) pt.outcomes.push_back(m.at(pr.first, pr.second));
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  unsigned n = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, points.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return points;
}

void write_csv(std::ostream& out, const std::vector<Point>& points) {
  out << report::kCsvHeader << '\n';
  for (const Point& pt : points) {
    const std::string axis = report::number(pt.axis_value);
    if (pt.profiles.empty()) {
      out << report::csv_empty_row(axis, pt.params.alpha) << '\n';
    } else {
      out << report::csv_row(axis, pt.params.alpha, pt.profiles.front(), pt.outcomes.front()) << '\n';
    }
  }
}

void write_profiles(std::ostream& out, const std::vector<Point>& points) {
  out << report::kCsvHeader << '\n';
  for (const Point& pt : points) {
    const std::string axis = report::number(pt.axis_value);
    for (std::size_t k = 0; k < pt.profiles.size(); ++k) {
      out << report::csv_row(axis, pt.params.alpha, pt.profiles[k], pt.outcomes[k]) << '\n';
    }
  }
}

}  // namespace tiermarket::sweep
