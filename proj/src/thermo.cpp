#include "thermomech/thermo.hpp"

#include <cmath>
#include <stdexcept>

namespace thermomech {

void IdealGasParams::validate() const {
  if (n0r <= 0.0 || alpha <= 0.0 || t0 <= 0.0 || v0 <= 0.0)
    throw std::invalid_argument("ideal gas parameters must be positive");
}

void BodyParams::validate() const {
  if (nu <= 0.0 || t0 <= 0.0)
    throw std::invalid_argument("body parameters must be positive");
}

GasState gas_state(const IdealGasParams& p, double temperature,
                   double volume) {
  if (temperature <= 0.0 || volume <= 0.0)
    throw std::domain_error("gas_state requires positive T and V");
  GasState s;
  s.pressure = p.n0r * temperature / volume;
  s.internal_energy = p.alpha * p.n0r * temperature;
  s.entropy = p.s0 + p.n0r * (p.alpha * std::log(temperature / p.t0) +
                              std::log(volume / p.v0));
  return s;
}

double gas_adiabat_constant(const IdealGasParams& p, double pressure,
                            double volume) {
  if (pressure <= 0.0 || volume <= 0.0)
    throw std::domain_error("gas_adiabat_constant requires positive P and V");
  return pressure * std::pow(volume, p.gamma());
}

BodyState body_state(const BodyParams& p, double temperature) {
  if (temperature <= 0.0)
    throw std::domain_error("body_state requires positive T");
  BodyState s;
  s.internal_energy = p.nu * temperature;
  s.entropy = p.s0 + p.nu * std::log(temperature / p.t0);
  return s;
}

double gas_fundamental(const IdealGasParams& p, double moles, double entropy,
                       double volume) {
  if (moles <= 0.0 || volume <= 0.0)
    throw std::domain_error("gas_fundamental requires positive N and V");
  const double r = p.n0r;
  const double u0 = r * p.alpha * p.t0;
  const double arg =
      moles * p.v0 * std::exp((entropy - moles * p.s0) / (moles * r)) / volume;
  return moles * u0 * std::pow(arg, 1.0 / p.alpha);
}

double gas_chemical_potential(const IdealGasParams& p, double moles,
                              double entropy, double volume) {
  const double u = gas_fundamental(p, moles, entropy, volume);
  const double r = p.n0r;
  return u / moles *
         (1.0 + (1.0 / p.alpha) * (1.0 - entropy / (moles * r)));
}

FundamentalEquation gas_fundamental_equation(const IdealGasParams& p) {
  p.validate();
  FundamentalEquation eq;
  eq.extensive_count = 1;
  eq.phi = [p](const Eigen::VectorXd& y, double s) {
    const double volume = y[0];
    const double arg = p.v0 * std::exp((s - p.s0) / p.n0r) / volume;
    return p.alpha * p.n0r * p.t0 * std::pow(arg, 1.0 / p.alpha);
  };
  eq.gradient = [p, phi = eq.phi](const Eigen::VectorXd& y, double s) {
    const double u = phi(y, s);
    Eigen::VectorXd g(2);
    g[0] = -u / (p.alpha * y[0]);   // dPhi/dV = -P
    g[1] = u / (p.alpha * p.n0r);   // dPhi/dS = T
    return g;
  };
  eq.domain = [](const Eigen::VectorXd& y, double) { return y[0] > 0.0; };
  return eq;
}

FundamentalEquation body_fundamental_equation(const BodyParams& p) {
  p.validate();
  FundamentalEquation eq;
  eq.extensive_count = 0;
  eq.phi = [p](const Eigen::VectorXd&, double s) {
    return p.nu * p.t0 * std::exp((s - p.s0) / p.nu);
  };
  eq.gradient = [p, phi = eq.phi](const Eigen::VectorXd& y, double s) {
    Eigen::VectorXd g(1);
    g[0] = phi(y, s) / p.nu;
    return g;
  };
  return eq;
}

ContactChart gas_chart() {
  return ContactChart::canonical(2, {"P", "T", "V", "S", "U"});
}

ContactChart body_chart(const std::vector<std::string>& names) {
  return ContactChart::canonical(1, names);
}

}  // namespace thermomech
