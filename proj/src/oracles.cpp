#include "thermomech/oracles.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace thermomech {
namespace oracles {

double wagon_position(double m, double mu, double x0, double v0, double t) {
  return x0 - (v0 * m / mu) * (std::exp(-mu * t / m) - 1.0);
}

double wagon_velocity(double m, double mu, double v0, double t) {
  return v0 * std::exp(-mu * t / m);
}

double wagon_temperature_adiabatic(double m, double mu, double nu, double v0,
                                   double T_init, double t) {
  return T_init +
         (m * v0 * v0 / (2.0 * nu)) * (1.0 - std::exp(-2.0 * mu * t / m));
}

namespace {

struct BathCoefficients {
  double c1;
  double c2;
};

BathCoefficients bath_coefficients(double m, double mu, double nu,
                                   double kappa, double Tb, double v0,
                                   double T_init) {
  const double gap = kappa / nu - 2.0 * mu / m;
  if (std::abs(gap) <= 1e-9)
    throw std::domain_error(
        "wagon_temperature_bath: resonant decay rates, use the integrator");
  const double c2 = mu * v0 * v0 / (nu * gap);
  return {T_init - Tb - c2, c2};
}

}  // namespace

double wagon_temperature_bath(double m, double mu, double nu, double kappa,
                              double Tb, double v0, double T_init, double t) {
  const auto [c1, c2] = bath_coefficients(m, mu, nu, kappa, Tb, v0, T_init);
  return Tb + c1 * std::exp(-kappa * t / nu) + c2 * std::exp(-2.0 * mu * t / m);
}

double wagon_temperature_bath_rate(double m, double mu, double nu, double kappa,
                                   double Tb, double v0, double T_init,
                                   double t) {
  const auto [c1, c2] = bath_coefficients(m, mu, nu, kappa, Tb, v0, T_init);
  return -(kappa / nu) * c1 * std::exp(-kappa * t / nu) -
         (2.0 * mu / m) * c2 * std::exp(-2.0 * mu * t / m);
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_simpson(const std::function<double(double)>& f, double a,
                         double b, double tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  // The depth cap bounds the work when rounding noise in the integrand
  // stalls the error estimate near a regularized endpoint.
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 22);
}

}  // namespace

double piston_quadrature_time(const PistonAdiabaticConfig& cfg,
                              double x_target) {
  cfg.validate();
  if (x_target <= 0.0)
    throw std::domain_error("piston_quadrature_time: target must be positive");

  const double gamma = cfg.gas.gamma();
  const double k = cfg.adiabat_constant();
  const double spring = k * std::pow(cfg.A, 1.0 - gamma) / cfg.m;

  // Squared velocity along the energy level through the initial state.
  const auto speed_sq = [&](double s) {
    return cfg.v0 * cfg.v0 +
           2.0 * (-cfg.g * (s - cfg.x0) +
                  spring / (1.0 - gamma) *
                      (std::pow(s, 1.0 - gamma) - std::pow(cfg.x0, 1.0 - gamma)));
  };
  const auto acceleration = [&](double s) {
    return -cfg.g + spring * std::pow(s, -gamma);
  };

  if (x_target == cfg.x0) return 0.0;

  int sigma;
  if (cfg.v0 > 0.0)
    sigma = 1;
  else if (cfg.v0 < 0.0)
    sigma = -1;
  else
    sigma = acceleration(cfg.x0) >= 0.0 ? 1 : -1;
  if (sigma * (x_target - cfg.x0) <= 0.0)
    throw std::domain_error(
        "piston_quadrature_time: target is behind the motion direction");

  const double energy_scale =
      std::max(1.0, std::abs(cfg.v0 * cfg.v0 + 2.0 * cfg.g * cfg.x0));
  const auto guarded_speed = [&](double s) {
    const double v2 = speed_sq(s);
    if (v2 <= 1e-16 * energy_scale)
      throw std::domain_error(
          "piston_quadrature_time: turning point inside the interval");
    return std::sqrt(v2);
  };

  const double tol = 1e-10;
  if (std::abs(cfg.v0) > 1e-12) {
    const auto integrand = [&](double s) { return 1.0 / guarded_speed(s); };
    return std::abs(integrate_simpson(integrand, cfg.x0, x_target, tol));
  }

  // Start at rest: substitute s = x0 + sigma u^2 to regularize the inverse
  // square-root singularity at the launch point. Inside a boundary layer
  // where the evaluation of the energy expression is pure cancellation
  // noise, the integrand is replaced by its limit value.
  const double accel0 = sigma * acceleration(cfg.x0);
  if (accel0 <= 0.0)
    throw std::domain_error(
        "piston_quadrature_time: no motion toward the target");
  const double u_cut = std::sqrt(1e-12 * energy_scale / (2.0 * accel0));
  const auto integrand = [&](double u) {
    if (u <= u_cut) return std::sqrt(2.0 / accel0);
    const double s = cfg.x0 + sigma * u * u;
    return 2.0 * u / guarded_speed(s);
  };
  const double span = std::sqrt(std::abs(x_target - cfg.x0));
  return integrate_simpson(integrand, 0.0, span, tol);
}

double piston_hamiltonian(const PistonAdiabaticConfig& cfg, double q,
                          double p) {
  if (q <= 0.0)
    throw std::domain_error("piston_hamiltonian: q must be positive");
  const double gamma = cfg.gas.gamma();
  const double k = cfg.adiabat_constant();
  return p * p / (2.0 * cfg.m) + cfg.m * cfg.g * q +
         cfg.gas.alpha * k * std::pow(cfg.A, 1.0 - gamma) *
             std::pow(q, 1.0 - gamma);
}

SteadyState dissipative_steady_state(const DissipativePistonConfig& cfg) {
  cfg.validate();
  const double e0 = cfg.initial_energy();
  const double n0r = cfg.gas.n0r;
  const double temperature = e0 / (n0r * (1.0 + cfg.gas.alpha) + cfg.body.nu);
  return {n0r * temperature / (cfg.m * cfg.g), temperature};
}

}  // namespace oracles
}  // namespace thermomech
