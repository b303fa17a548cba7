#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "thermomech/socs.hpp"
#include "thermomech/thermo.hpp"

namespace thermomech {

// Linear heat-exchange area model A(x) = a0 + a1 x.
struct AreaModel {
  double a0 = 1.0;
  double a1 = 0.0;

  double operator()(double x) const { return a0 + a1 * x; }
};

struct WagonAdiabaticConfig {
  double m = 1.0;
  double mu = 1.0;
  BodyParams body;
  double x0 = 0.0;
  double v0 = 0.0;
  double T0_init = 1.0;

  void validate() const;
};

struct WagonBathConfig {
  WagonAdiabaticConfig base;
  double kappa = 1.0;
  double Tb = 1.0;

  void validate() const;
};

struct PistonAdiabaticConfig {
  double m = 1.0;
  double g = 1.0;
  double A = 1.0;
  IdealGasParams gas;
  double x0 = 1.0;
  double v0 = 0.0;
  double T0_init = 1.0;

  void validate() const;
  // Adiabat constant from the initial state, k = P(0) V(0)^gamma.
  double adiabat_constant() const;
};

struct PistonIsothermalConfig {
  enum class Potential { InternalEnergy, Helmholtz };

  double m = 1.0;
  double g = 1.0;
  double A = 1.0;
  IdealGasParams gas;
  double x0 = 1.0;
  double v0 = 0.0;
  double T0_init = 1.0;
  Potential potential_choice = Potential::InternalEnergy;

  void validate() const;
  double isothermal_temperature() const { return T0_init; }
};

struct DissipativePistonConfig {
  double m = 1.0;
  double g = 1.0;
  double A = 1.0;
  IdealGasParams gas;
  BodyParams body;
  double mu = 1.0;
  double kappa = 1.0;
  AreaModel area;
  double x0 = 1.0;
  double v0 = 0.0;
  double Tgas0 = 1.0;
  double Tc0 = 1.0;

  void validate() const;
  double initial_energy() const;
};

struct DissipativePistonBathConfig {
  DissipativePistonConfig base;  // base.kappa/base.area are the internal pair
  double kappa_e = 1.0;
  double area_e = 1.0;
  double Tb = 1.0;

  void validate() const;
};

using ScenarioConfig =
    std::variant<WagonAdiabaticConfig, WagonBathConfig, PistonAdiabaticConfig,
                 PistonIsothermalConfig, DissipativePistonConfig,
                 DissipativePistonBathConfig>;

struct Guard {
  std::string name;
  std::function<bool(const Eigen::VectorXd&)> ok;
};

// Explicit first-order reduced system for a scenario.
struct ReducedODE {
  int dim = 0;
  std::function<Eigen::VectorXd(double t, const Eigen::VectorXd&)> rhs;
  std::vector<std::string> state_names;
  std::vector<Guard> guards;
  std::vector<int> velocity_like;  // indices negated by time reversal

  bool guards_ok(const Eigen::VectorXd& s) const {
    for (const auto& g : guards)
      if (!g.ok(s)) return false;
    return true;
  }
};

// Maps a reduced state to the full configuration-space point.
struct Reconstruction {
  std::vector<std::string> full_names;
  std::function<Eigen::VectorXd(const Eigen::VectorXd& reduced)> full_state;
};

struct Scenario {
  std::string name;
  SOCSystem socs;
  ReducedODE ode;
  Reconstruction reconstruction;
  Eigen::VectorXd initial_state;
};

Scenario build_wagon_adiabatic(const WagonAdiabaticConfig& cfg);
Scenario build_wagon_bath(const WagonBathConfig& cfg);
Scenario build_piston_adiabatic(const PistonAdiabaticConfig& cfg);
Scenario build_piston_isothermal(const PistonIsothermalConfig& cfg);
Scenario build_dissipative_piston(const DissipativePistonConfig& cfg);
Scenario build_dissipative_piston_bath(const DissipativePistonBathConfig& cfg);

Scenario build_scenario(const ScenarioConfig& cfg);

const std::vector<std::string>& scenario_names();

}  // namespace thermomech
