#pragma once

#include "thermomech/scenarios.hpp"

namespace thermomech {
namespace oracles {

// Closed-form wagon position x(t) = x0 - (v0 m / mu)(e^{-mu t / m} - 1).
double wagon_position(double m, double mu, double x0, double v0, double t);

double wagon_velocity(double m, double mu, double v0, double t);

// Thermally isolated wagon: T(t) = T_init + (m v0^2 / 2 nu)(1 - e^{-2 mu t / m}).
double wagon_temperature_adiabatic(double m, double mu, double nu, double v0,
                                   double T_init, double t);

// Wagon in a bath: T(t) = Tb + C1 e^{-kappa t / nu} + C2 e^{-2 mu t / m} with
// C2 = mu v0^2 / (nu (kappa/nu - 2 mu/m)) and C1 = T_init - Tb - C2. Throws
// when the two decay rates are (nearly) resonant.
double wagon_temperature_bath(double m, double mu, double nu, double kappa,
                              double Tb, double v0, double T_init, double t);

// Analytic time derivative of wagon_temperature_bath, for residual checks.
double wagon_temperature_bath_rate(double m, double mu, double nu, double kappa,
                                   double Tb, double v0, double T_init,
                                   double t);

// Time to reach x_target along the monotone branch through the initial
// state, by adaptive Simpson quadrature of the energy integrand. Starts at
// rest are handled with a square-root substitution; an interior turning
// point is refused.
double piston_quadrature_time(const PistonAdiabaticConfig& cfg,
                              double x_target);

// H(q, p) = p^2/2m + m g q + (alpha k / A^{gamma-1}) q^{1-gamma}; constant
// along adiabatic piston trajectories.
double piston_hamiltonian(const PistonAdiabaticConfig& cfg, double q, double p);

struct SteadyState {
  double x;
  double temperature;
};

// Rest state of the isolated dissipative piston: force balance
// m g x = n0r T combined with total-energy conservation.
SteadyState dissipative_steady_state(const DissipativePistonConfig& cfg);

}  // namespace oracles
}  // namespace thermomech
