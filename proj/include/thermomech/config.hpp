#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <variant>

#include "thermomech/scenarios.hpp"

namespace thermomech {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat TOML-compatible configuration: [table] headers followed by
// key = value lines with numeric, quoted-string, or boolean values.
using ConfigValue = std::variant<double, std::string, bool>;
using ConfigTable = std::map<std::string, ConfigValue>;
using ConfigFile = std::map<std::string, ConfigTable>;

ConfigFile parse_config_text(const std::string& text);
ConfigFile parse_config_file(const std::string& path);

double require_number(const ConfigTable& table, const std::string& key);
double number_or(const ConfigTable& table, const std::string& key,
                 double fallback);
std::string string_or(const ConfigTable& table, const std::string& key,
                      const std::string& fallback);

// Assembles the scenario configuration from its table; unknown scenario
// names and missing tables or keys raise ConfigError.
ScenarioConfig scenario_config_from(const ConfigFile& file,
                                    const std::string& scenario);

}  // namespace thermomech
