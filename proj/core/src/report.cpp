#include "tiermarket/report.hpp"

#include <cstdio>
#include <sstream>

namespace tiermarket::report {

std::string number(double x) {
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string csv_row(std::string_view axis, double alpha, const game::Profile& profile,
                    const EquilibriumOutcome& o) {
  std::string out;
  out.append(axis).append(",").append(number(alpha));
  out.append(",").append(to_string(profile.first)).append(",").append(to_string(profile.second));
  out.append(",").append(to_string(o.regime));
  for (double x : {o.prices.p1, o.prices.p2, o.alloc.lam1, o.alloc.lam2, o.profit1, o.profit2, o.user_surplus,
                   o.welfare}) {
    out.append(",").append(number(x));
  }
  return out;
}

std::string csv_empty_row(std::string_view axis, double alpha) {
  std::string out;
  out.append(axis).append(",").append(number(alpha)).append(",,,NONE,,,,,,,,");
  return out;
}

std::string outcome_text(const game::Profile& profile, const EquilibriumOutcome& o) {
  std::ostringstream s;
  s << "profile   (" << to_string(profile.first) << ", " << to_string(profile.second) << ")  "
    << to_string(o.scenario) << "\n";
  s << "regime    " << to_string(o.regime) << (o.closed_form ? "" : "  [numerical]")
    << (o.certified ? "" : "  [no pure price equilibrium found; last best-response iterate]") << "\n";
  s << "prices    p1 = " << number(o.prices.p1) << "   p2 = " << number(o.prices.p2) << "\n";
  s << "users     lam1 = " << number(o.alloc.lam1) << "   lam2 = " << number(o.alloc.lam2)
    << "   per-user surplus = " << number(o.alloc.surplus) << "\n";
  s << "profits   SA1 = " << number(o.profit1) << "   SA2 = " << number(o.profit2) << "\n";
  s << "surplus   " << number(o.user_surplus) << "\n";
  s << "welfare   " << number(o.welfare) << "\n";
  return s.str();
}

std::string matrix_text(const game::PayoffMatrix& m) {
  std::ostringstream s;
  s << "payoffs (SA1, SA2); rows SA1's ESC, columns SA2's ESC\n";
  s << "        ";
  for (Esc j2 : game::kChoices) {
    char head[40];
    std::snprintf(head, sizeof head, "%-26s", std::string(to_string(j2)).c_str());
    s << head;
  }
  s << "\n";
  for (Esc j1 : game::kChoices) {
    char head[16];
    std::snprintf(head, sizeof head, "%-8s", std::string(to_string(j1)).c_str());
    s << head;
    for (Esc j2 : game::kChoices) {
      const EquilibriumOutcome& o = m.at(j1, j2);
      const std::string cell = "(" + number(o.profit1) + ", " + number(o.profit2) + ")";
      char buf[64];
      std::snprintf(buf, sizeof buf, "%-26s", cell.c_str());
      s << buf;
    }
    s << "\n";
  }
  return s.str();
}

std::string nash_text(const std::vector<game::Profile>& profiles, const game::PayoffMatrix& m) {
  std::ostringstream s;
  if (profiles.empty()) {
    s << "no pure Nash profile\n";
  } else {
    s << profiles.size() << " Nash profile" << (profiles.size() == 1 ? "" : "s") << ", "
      << to_string(game::limit_classify(profiles)) << "\n";
    for (const auto& pr : profiles) {
      const EquilibriumOutcome& o = m.at(pr.first, pr.second);
      s << "  (" << to_string(pr.first) << ", " << to_string(pr.second) << ")  " << to_string(o.regime)
        << "  profits " << number(o.profit1) << " / " << number(o.profit2) << "  welfare " << number(o.welfare)
        << "\n";
    }
  }
  s << "\n" << matrix_text(m);
  return s.str();
}

}  // namespace tiermarket::report
