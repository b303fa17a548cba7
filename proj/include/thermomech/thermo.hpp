#pragma once

#include <string>
#include <vector>

#include "thermomech/geometry.hpp"

namespace thermomech {

// Ideal gas with constant heat capacity. n0r is the fused product N0*R;
// every scenario fixes the mole number, so only the product enters the
// state equations. For the molar fundamental-equation form (gas_fundamental,
// gas_chemical_potential) n0r is read as the gas constant R itself and
// s0, v0 as per-mole references; both forms coincide at N = 1.
struct IdealGasParams {
  double n0r = 1.0;
  double alpha = 1.5;
  double s0 = 1.0;
  double t0 = 1.0;
  double v0 = 1.0;

  double gamma() const { return (alpha + 1.0) / alpha; }
  void validate() const;
};

// Constant-heat-capacity body, U = nu * T.
struct BodyParams {
  double nu = 1.0;
  double t0 = 1.0;
  double s0 = 1.0;

  void validate() const;
};

struct GasState {
  double pressure;
  double internal_energy;
  double entropy;
};

struct BodyState {
  double internal_energy;
  double entropy;
};

// P = n0r T / V, U = alpha n0r T, S = s0 + n0r ln(T^alpha V / (t0^alpha v0)).
GasState gas_state(const IdealGasParams& p, double temperature, double volume);

// k = P V^gamma; constant along isoentropic gas paths.
double gas_adiabat_constant(const IdealGasParams& p, double pressure,
                            double volume);

// U = nu T, S = s0 + nu ln(T / t0).
BodyState body_state(const BodyParams& p, double temperature);

// Molar fundamental equation U = Phi(N, S, V) of the ideal gas, with
// u0 = R alpha t0.
double gas_fundamental(const IdealGasParams& p, double moles, double entropy,
                       double volume);

// mu = (U/N)(1 + (1/alpha)(1 - S/(N R))); crosses zero at S = N R (1+alpha).
double gas_chemical_potential(const IdealGasParams& p, double moles,
                              double entropy, double volume);

// Fundamental equations driving the Legendre patches. The gas form is the
// fused-parameter Phi(V, S) consistent with gas_state; the body form has no
// extensive variable besides S.
FundamentalEquation gas_fundamental_equation(const IdealGasParams& p);
FundamentalEquation body_fundamental_equation(const BodyParams& p);

ContactChart gas_chart();
ContactChart body_chart(const std::vector<std::string>& names = {"T", "S",
                                                                 "U"});

}  // namespace thermomech
