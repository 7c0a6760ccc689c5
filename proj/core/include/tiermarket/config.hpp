#pragma once

// Flat `key = value` configuration files. Lines starting with '#' (or the
// tail of a line after '#') are comments. Unset keys keep the defaults of
// MarketParams.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "tiermarket/model.hpp"

namespace tiermarket::config {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what) : std::runtime_error(what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }  // empty when no key applies

 private:
  std::string key_;
};

// Assigns one parameter by its config name. Throws ConfigError for an
// unknown key.
void set(MarketParams& params, std::string_view key, double value);
double get(const MarketParams& params, std::string_view key);

MarketParams parse(std::string_view text);
MarketParams load(const std::filesystem::path& path);

}  // namespace tiermarket::config
