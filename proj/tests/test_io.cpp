#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "thermomech/config.hpp"
#include "thermomech/csv.hpp"

using namespace thermomech;

namespace {

const char* kSampleConfig = R"toml(
# figure parameters
[piston-dissipative]
m = 1.0
g = 9.0
A = 1.0           # piston section
n0r = 1
alpha = 1.5
nu = 0.5
mu = 0.8
kappa = 0.2
x0 = 15.0
v0 = 0.0
T0 = 25.0
Tc0 = 20.0
s0_ref = 0.0
sc0_ref = 0.0

[piston-isothermal]
m = 1.0
g = 9.0
A = 1.0
n0r = 1.0
alpha = 1.5
x0 = 1.0
v0 = 0.0
T0 = 9.0
potential = "helmholtz"
)toml";

}  // namespace

TEST_CASE("config parsing") {
  const ConfigFile file = parse_config_text(kSampleConfig);

  SUBCASE("tables and values") {
    REQUIRE(file.count("piston-dissipative") == 1);
    const ConfigTable& t = file.at("piston-dissipative");
    CHECK(require_number(t, "g") == 9.0);
    CHECK(require_number(t, "n0r") == 1.0);  // bare integers parse as numbers
    CHECK(number_or(t, "absent", 7.0) == 7.0);
    CHECK(string_or(file.at("piston-isothermal"), "potential", "") ==
          "helmholtz");
  }

  SUBCASE("missing keys and wrong types raise") {
    const ConfigTable& t = file.at("piston-dissipative");
    CHECK_THROWS_AS(require_number(t, "absent"), ConfigError);
    CHECK_THROWS_AS(
        require_number(file.at("piston-isothermal"), "potential"),
        ConfigError);
  }

  SUBCASE("malformed lines raise") {
    CHECK_THROWS_AS(parse_config_text("[unterminated\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("novalue\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("x = what\n"), ConfigError);
  }
}

TEST_CASE("scenario configs from file") {
  const ConfigFile file = parse_config_text(kSampleConfig);

  SUBCASE("dissipative piston") {
    const ScenarioConfig cfg =
        scenario_config_from(file, "piston-dissipative");
    const auto& piston = std::get<DissipativePistonConfig>(cfg);
    CHECK(piston.g == 9.0);
    CHECK(piston.body.nu == 0.5);
    CHECK(piston.body.s0 == 0.0);
    CHECK(piston.area.a0 == 1.0);  // documented default
    CHECK(piston.area.a1 == 0.0);
    CHECK(piston.initial_energy() == doctest::Approx(182.5));
  }

  SUBCASE("isothermal piston potential flag") {
    const auto& iso = std::get<PistonIsothermalConfig>(
        scenario_config_from(file, "piston-isothermal"));
    CHECK(iso.potential_choice ==
          PistonIsothermalConfig::Potential::Helmholtz);
  }

  SUBCASE("redundant constraint temperature must agree") {
    ConfigFile bad = file;
    bad["piston-isothermal"]["T_iso"] = 8.0;
    CHECK_THROWS_AS(scenario_config_from(bad, "piston-isothermal"),
                    ConfigError);
    bad["piston-isothermal"]["T_iso"] = 9.0;
    CHECK_NOTHROW(scenario_config_from(bad, "piston-isothermal"));
  }

  SUBCASE("unknown scenario and missing table raise") {
    CHECK_THROWS_AS(scenario_config_from(file, "wagon-adiabatic"),
                    ConfigError);
    CHECK_THROWS_AS(scenario_config_from(file, "no-such-scenario"),
                    ConfigError);
  }
}

TEST_CASE("csv round trip") {
  const auto path =
      (std::filesystem::temp_directory_path() / "thermomech_csv_test.csv")
          .string();

  CsvTable table;
  table.header = {"t", "x", "y"};
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 40; ++i)
    table.rows.push_back({u(rng), u(rng) * 1e-14, u(rng) * 1e12});
  table.rows.push_back({0.0, -0.0, 1.0 / 3.0});

  write_csv(path, table);
  const CsvTable back = read_csv(path);

  REQUIRE(back.header == table.header);
  REQUIRE(back.rows.size() == table.rows.size());
  for (size_t i = 0; i < table.rows.size(); ++i)
    for (size_t j = 0; j < 3; ++j)
      CHECK(back.rows[i][j] == table.rows[i][j]);  // 17 digits round-trip

  std::remove(path.c_str());
}

TEST_CASE("csv rejects malformed input") {
  const auto path =
      (std::filesystem::temp_directory_path() / "thermomech_bad.csv")
          .string();
  {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    std::fputs("a,b\r\n1.0,nope\r\n", f);
    std::fclose(f);
  }
  CHECK_THROWS_AS(read_csv(path), std::runtime_error);
  std::remove(path.c_str());
}
