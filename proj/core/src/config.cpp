#include "tiermarket/config.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <utility>

namespace tiermarket::config {

namespace {

using Field = double MarketParams::*;

constexpr std::array<std::pair<std::string_view, Field>, 9> kFields = {{
    {"W", &MarketParams::W},
    {"L", &MarketParams::L},
    {"alpha", &MarketParams::alpha},
    {"v", &MarketParams::v},
    {"Lambda", &MarketParams::Lambda},
    {"qA", &MarketParams::qA},
    {"qB", &MarketParams::qB},
    {"feeA", &MarketParams::feeA},
    {"feeB", &MarketParams::feeB},
}};

Field field(std::string_view key) {
  for (const auto& [name, f] : kFields) {
    if (name == key) return f;
  }
  throw ConfigError(std::string(key), "unknown key '" + std::string(key) + "'");
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

void set(MarketParams& p, std::string_view key, double value) { p.*field(key) = value; }

double get(const MarketParams& p, std::string_view key) { return p.*field(key); }

MarketParams parse(std::string_view text) {
  MarketParams p;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("", "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view raw = trim(line.substr(eq + 1));
    double value = 0.0;
    const auto [end, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value);
    if (raw.empty() || ec != std::errc() || end != raw.data() + raw.size()) {
      throw ConfigError(std::string(key), "malformed value for " + std::string(key) + ": '" + std::string(raw) + "'");
    }
    set(p, key, value);
  }

  try {
    validate(p);
  } catch (const InvalidParams& e) {
    throw ConfigError(e.key(), e.what());
  }
  return p;
}

MarketParams load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

}  // namespace tiermarket::config
