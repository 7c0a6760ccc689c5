#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tiermarket/config.hpp"
#include "tiermarket/game.hpp"
#include "tiermarket/report.hpp"
#include "tiermarket/sweep.hpp"
#include "tiermarket/wardrop.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kSolverError = 3;

using namespace tiermarket;

game::Profile parse_profile(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("profile must look like A,B");
  return {parse_esc(text.substr(0, comma)), parse_esc(text.substr(comma + 1))};
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    const double x = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad number '" + item + "' in --alphas");
    out.push_back(x);
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << content;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-tier spectrum market: price equilibria, ESC selection game and sweeps"};
  app.require_subcommand(1);

  std::string config_path;
  auto add_config = [&](CLI::App* cmd) { cmd->add_option("--config", config_path, "key = value file")->required(); };

  auto* solve = app.add_subcommand("solve", "second-stage equilibrium for one ESC profile");
  add_config(solve);
  std::string profile_text;
  bool csv = false;
  solve->add_option("--profile", profile_text, "ESC choices of SA 1 and SA 2, e.g. A,B or A,none")->required();
  solve->add_flag("--csv", csv, "print a CSV row instead of text");

  auto* nash = app.add_subcommand("nash", "Nash profiles of the ESC selection game");
  add_config(nash);

  auto* matrix = app.add_subcommand("matrix", "payoff matrix of the ESC selection game");
  add_config(matrix);

  auto* sweep_cmd = app.add_subcommand("sweep", "sweep one parameter and write CSV");
  add_config(sweep_cmd);
  std::string axis_text;
  std::string alphas_text;
  std::string out_path;
  sweep::Spec spec;
  sweep_cmd->add_option("--axis", axis_text, "L, alpha, v or Lambda")->required();
  sweep_cmd->add_option("--from", spec.from)->required();
  sweep_cmd->add_option("--to", spec.to)->required();
  sweep_cmd->add_option("--steps", spec.steps)->required();
  sweep_cmd->add_option("--alphas", alphas_text, "comma separated alpha values");
  sweep_cmd->add_option("--threads", spec.threads, "worker threads (0: all cores)");
  sweep_cmd->add_option("--out", out_path, "CSV path; profiles go to <out>.profiles.csv")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version land here too, with exit code 0
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kConfigError;
  }

  MarketParams params;
  try {
    params = config::load(config_path);
    if (*sweep_cmd) {
      spec.axis = sweep::parse_axis(axis_text);
      if (!alphas_text.empty()) spec.alphas = parse_list(alphas_text);
      sweep::axis_values(spec);
    }
  } catch (const config::ConfigError& e) {
    std::cerr << "config error";
    if (!e.key().empty()) std::cerr << " [" << e.key() << "]";
    std::cerr << ": " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    if (*solve) {
      game::Profile profile;
      try {
        profile = parse_profile(profile_text);
      } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
      }
      const EquilibriumOutcome o = game::stage2_outcome(params, profile.first, profile.second);
      if (csv) {
        std::cout << report::kCsvHeader << "\n" << report::csv_row("", params.alpha, profile, o) << "\n";
      } else {
        std::cout << report::outcome_text(profile, o);
      }
    } else if (*nash) {
      const game::PayoffMatrix m = game::payoff_matrix(params);
      std::cout << report::nash_text(game::nash_profiles(m), m);
    } else if (*matrix) {
      std::cout << report::matrix_text(game::payoff_matrix(params));
    } else if (*sweep_cmd) {
      std::vector<sweep::Point> points;
      try {
        points = sweep::run(params, spec);
      } catch (const config::ConfigError& e) {
        std::cerr << "config error [" << e.key() << "]: " << e.what() << "\n";
        return kConfigError;
      }
      std::ostringstream main_csv;
      std::ostringstream profiles_csv;
      sweep::write_csv(main_csv, points);
      sweep::write_profiles(profiles_csv, points);
      write_file(out_path, main_csv.str());
      write_file(out_path + ".profiles.csv", profiles_csv.str());
      std::cout << "wrote " << points.size() << " rows to " << out_path << "\n";
    }
  } catch (const wardrop::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kSolverError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSolverError;
  }
  return 0;
}
