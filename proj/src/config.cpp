#include "thermomech/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace thermomech {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

ConfigValue parse_value(const std::string& raw, int line_no) {
  if (raw.size() >= 2 && raw.front() == '"' && raw.back() == '"')
    return raw.substr(1, raw.size() - 2);
  if (raw == "true") return true;
  if (raw == "false") return false;
  try {
    size_t used = 0;
    const double value = std::stod(raw, &used);
    if (used == raw.size()) return value;
  } catch (const std::exception&) {
  }
  throw ConfigError("config line " + std::to_string(line_no) +
                    ": cannot parse value '" + raw + "'");
}

}  // namespace

ConfigFile parse_config_text(const std::string& text) {
  ConfigFile file;
  std::string current;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": malformed table header");
      current = trim(line.substr(1, line.size() - 2));
      if (current.empty())
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": empty table name");
      file[current];
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": empty key");
    file[current][key] = parse_value(value, line_no);
  }
  return file;
}

ConfigFile parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

double require_number(const ConfigTable& table, const std::string& key) {
  const auto it = table.find(key);
  if (it == table.end()) throw ConfigError("missing config key: " + key);
  if (const double* v = std::get_if<double>(&it->second)) return *v;
  throw ConfigError("config key is not a number: " + key);
}

double number_or(const ConfigTable& table, const std::string& key,
                 double fallback) {
  const auto it = table.find(key);
  if (it == table.end()) return fallback;
  if (const double* v = std::get_if<double>(&it->second)) return *v;
  throw ConfigError("config key is not a number: " + key);
}

std::string string_or(const ConfigTable& table, const std::string& key,
                      const std::string& fallback) {
  const auto it = table.find(key);
  if (it == table.end()) return fallback;
  if (const std::string* v = std::get_if<std::string>(&it->second)) return *v;
  throw ConfigError("config key is not a string: " + key);
}

namespace {

IdealGasParams gas_from(const ConfigTable& t) {
  IdealGasParams gas;
  gas.n0r = require_number(t, "n0r");
  gas.alpha = require_number(t, "alpha");
  gas.s0 = number_or(t, "s0_ref", 1.0);
  gas.t0 = number_or(t, "t0_ref", 1.0);
  gas.v0 = number_or(t, "v0_ref", 1.0);
  return gas;
}

BodyParams body_from(const ConfigTable& t, const std::string& nu_key,
                     const std::string& t0_key, const std::string& s0_key) {
  BodyParams body;
  body.nu = require_number(t, nu_key);
  body.t0 = number_or(t, t0_key, 1.0);
  body.s0 = number_or(t, s0_key, 1.0);
  return body;
}

WagonAdiabaticConfig wagon_from(const ConfigTable& t) {
  WagonAdiabaticConfig cfg;
  cfg.m = require_number(t, "m");
  cfg.mu = require_number(t, "mu");
  cfg.body = body_from(t, "nu", "t0_ref", "s0_ref");
  cfg.x0 = require_number(t, "x0");
  cfg.v0 = require_number(t, "v0");
  cfg.T0_init = require_number(t, "T0");
  return cfg;
}

PistonAdiabaticConfig piston_from(const ConfigTable& t) {
  PistonAdiabaticConfig cfg;
  cfg.m = require_number(t, "m");
  cfg.g = require_number(t, "g");
  cfg.A = require_number(t, "A");
  cfg.gas = gas_from(t);
  cfg.x0 = require_number(t, "x0");
  cfg.v0 = require_number(t, "v0");
  cfg.T0_init = require_number(t, "T0");
  return cfg;
}

DissipativePistonConfig dissipative_from(const ConfigTable& t,
                                         const std::string& kappa_key,
                                         const std::string& a0_key,
                                         const std::string& a1_key) {
  DissipativePistonConfig cfg;
  cfg.m = require_number(t, "m");
  cfg.g = require_number(t, "g");
  cfg.A = require_number(t, "A");
  cfg.gas = gas_from(t);
  cfg.body = body_from(t, "nu", "tc0_ref", "sc0_ref");
  cfg.mu = require_number(t, "mu");
  cfg.kappa = require_number(t, kappa_key);
  cfg.area.a0 = number_or(t, a0_key, 1.0);
  cfg.area.a1 = number_or(t, a1_key, 0.0);
  cfg.x0 = require_number(t, "x0");
  cfg.v0 = require_number(t, "v0");
  cfg.Tgas0 = require_number(t, "T0");
  cfg.Tc0 = require_number(t, "Tc0");
  return cfg;
}

}  // namespace

ScenarioConfig scenario_config_from(const ConfigFile& file,
                                    const std::string& scenario) {
  const auto it = file.find(scenario);
  if (it == file.end())
    throw ConfigError("config has no table [" + scenario + "]");
  const ConfigTable& t = it->second;

  if (scenario == "wagon-adiabatic") return wagon_from(t);
  if (scenario == "wagon-bath") {
    WagonBathConfig cfg;
    cfg.base = wagon_from(t);
    cfg.kappa = require_number(t, "kappa");
    cfg.Tb = require_number(t, "Tb");
    return cfg;
  }
  if (scenario == "piston-adiabatic") return piston_from(t);
  if (scenario == "piston-isothermal") {
    const PistonAdiabaticConfig base = piston_from(t);
    PistonIsothermalConfig cfg;
    cfg.m = base.m;
    cfg.g = base.g;
    cfg.A = base.A;
    cfg.gas = base.gas;
    cfg.x0 = base.x0;
    cfg.v0 = base.v0;
    cfg.T0_init = base.T0_init;
    // The constraint temperature is set by the initial state; a redundant
    // T_iso key must agree with it.
    const double t_iso = number_or(t, "T_iso", cfg.T0_init);
    if (t_iso != cfg.T0_init)
      throw ConfigError("piston-isothermal: T_iso must equal T0");
    const std::string potential = string_or(t, "potential", "internal-energy");
    if (potential == "internal-energy")
      cfg.potential_choice = PistonIsothermalConfig::Potential::InternalEnergy;
    else if (potential == "helmholtz")
      cfg.potential_choice = PistonIsothermalConfig::Potential::Helmholtz;
    else
      throw ConfigError("piston-isothermal: unknown potential '" + potential +
                        "'");
    return cfg;
  }
  if (scenario == "piston-dissipative")
    return dissipative_from(t, "kappa", "a0", "a1");
  if (scenario == "piston-dissipative-bath") {
    DissipativePistonBathConfig cfg;
    cfg.base = dissipative_from(t, "kappa_i", "a0_i", "a1_i");
    cfg.kappa_e = require_number(t, "kappa_e");
    cfg.area_e = require_number(t, "area_e");
    cfg.Tb = require_number(t, "Tb");
    return cfg;
  }
  throw ConfigError("unknown scenario: " + scenario);
}

}  // namespace thermomech
