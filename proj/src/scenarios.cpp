#include "thermomech/scenarios.hpp"

#include <cmath>
#include <stdexcept>

namespace thermomech {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

Guard positive_coordinate(std::string name, int index) {
  return {std::move(name),
          [index](const Eigen::VectorXd& s) { return s[index] > 0.0; }};
}

}  // namespace

void WagonAdiabaticConfig::validate() const {
  body.validate();
  require(m > 0.0 && mu > 0.0, "wagon: m and mu must be positive");
  require(T0_init > 0.0, "wagon: initial temperature must be positive");
}

void WagonBathConfig::validate() const {
  base.validate();
  require(kappa >= 0.0, "wagon bath: kappa must be nonnegative");
  require(Tb > 0.0, "wagon bath: bath temperature must be positive");
}

void PistonAdiabaticConfig::validate() const {
  gas.validate();
  require(m > 0.0 && g > 0.0 && A > 0.0, "piston: m, g, A must be positive");
  require(x0 > 0.0, "piston: initial position must be positive");
  require(T0_init > 0.0, "piston: initial temperature must be positive");
}

double PistonAdiabaticConfig::adiabat_constant() const {
  const double volume0 = A * x0;
  const double pressure0 = gas.n0r * T0_init / volume0;
  return pressure0 * std::pow(volume0, gas.gamma());
}

void PistonIsothermalConfig::validate() const {
  gas.validate();
  require(m > 0.0 && g > 0.0 && A > 0.0, "piston: m, g, A must be positive");
  require(x0 > 0.0, "piston: initial position must be positive");
  require(T0_init > 0.0, "piston: initial temperature must be positive");
}

void DissipativePistonConfig::validate() const {
  gas.validate();
  body.validate();
  require(m > 0.0 && g > 0.0 && A > 0.0, "piston: m, g, A must be positive");
  require(mu > 0.0, "dissipative piston: mu must be positive");
  require(kappa >= 0.0, "dissipative piston: kappa must be nonnegative");
  require(x0 > 0.0, "piston: initial position must be positive");
  require(Tgas0 > 0.0 && Tc0 > 0.0,
          "dissipative piston: initial temperatures must be positive");
  require(area(x0) > 0.0, "dissipative piston: area model must be positive");
}

double DissipativePistonConfig::initial_energy() const {
  return 0.5 * m * v0 * v0 + m * g * x0 + gas.alpha * gas.n0r * Tgas0 +
         body.nu * Tc0;
}

void DissipativePistonBathConfig::validate() const {
  base.validate();
  require(kappa_e >= 0.0, "piston bath: kappa_e must be nonnegative");
  require(area_e > 0.0, "piston bath: area_e must be positive");
  require(Tb > 0.0, "piston bath: bath temperature must be positive");
}

// ---------------------------------------------------------------------------
// Wagon with internal friction; the bath variant only changes the heat rate
// and the temperature equation.

namespace {

Scenario build_wagon(const WagonAdiabaticConfig& cfg, double kappa, double Tb,
                     std::string name) {
  const double m = cfg.m;
  const double mu = cfg.mu;
  const BodyParams body = cfg.body;
  const double nu = body.nu;

  Scenario sc;
  sc.name = std::move(name);

  auto heat_rate = [kappa, Tb](const Eigen::VectorXd& q,
                               const Eigen::VectorXd&) {
    return kappa * (Tb - q[1]);
  };

  SOCSystem& sys = sc.socs;
  sys.n = 4;
  sys.mech_dim = 1;
  sys.coordinate_names = {"x", "T", "S", "U"};
  sys.lagrangian = [m](const Eigen::VectorXd& q, const Eigen::VectorXd& qd) {
    return 0.5 * m * qd[0] * qd[0] - q[3];
  };
  sys.energy = [m](const Eigen::VectorXd& q, const Eigen::VectorXd& qd) {
    return 0.5 * m * qd[0] * qd[0] + q[3];
  };
  sys.heat_rate = heat_rate;
  sys.kinematic.residual = [m, body, heat_rate](const Jet2& jet) {
    const auto& q = jet.q;
    const BodyState bs = body_state(body, q[1]);
    Eigen::VectorXd w(3);
    w[0] = q[3] - bs.internal_energy;
    w[1] = q[2] - bs.entropy;
    w[2] = m * jet.qddot[0] * jet.qdot[0] + jet.qdot[3] -
           heat_rate(q, jet.qdot);
    return w;
  };
  sys.variational.rows = [mu, nu](const Eigen::VectorXd& q,
                                  const Eigen::VectorXd& qd) {
    Eigen::MatrixXd rows(3, 4);
    rows << 0.0, -nu, 0.0, 1.0,            // dU = nu dT
        0.0, -nu / q[1], 1.0, 0.0,         // dS = nu dT / T
        mu * qd[0], 0.0, 0.0, -1.0;        // mu xdot dx = dU
    return rows;
  };
  sys.second_law = SecondLawPolicy{{2}, 1, 1e-8};

  ReducedODE& ode = sc.ode;
  ode.dim = 3;
  ode.state_names = {"x", "xdot", "T"};
  ode.rhs = [m, mu, nu, kappa, Tb](double, const Eigen::VectorXd& s) {
    Eigen::VectorXd ds(3);
    ds[0] = s[1];
    ds[1] = -mu * s[1] / m;
    ds[2] = (mu * s[1] * s[1] - kappa * (s[2] - Tb)) / nu;
    return ds;
  };
  ode.guards = {positive_coordinate("T > 0", 2)};
  ode.velocity_like = {1};

  sc.reconstruction.full_names = sys.coordinate_names;
  sc.reconstruction.full_state = [body](const Eigen::VectorXd& s) {
    const BodyState bs = body_state(body, s[2]);
    Eigen::VectorXd q(4);
    q << s[0], s[2], bs.entropy, bs.internal_energy;
    return q;
  };

  sc.initial_state = Eigen::Vector3d(cfg.x0, cfg.v0, cfg.T0_init);
  return sc;
}

}  // namespace

Scenario build_wagon_adiabatic(const WagonAdiabaticConfig& cfg) {
  cfg.validate();
  return build_wagon(cfg, 0.0, 1.0, "wagon-adiabatic");
}

Scenario build_wagon_bath(const WagonBathConfig& cfg) {
  cfg.validate();
  return build_wagon(cfg.base, cfg.kappa, cfg.Tb, "wagon-bath");
}

// ---------------------------------------------------------------------------
// Adiabatic vertical piston.

Scenario build_piston_adiabatic(const PistonAdiabaticConfig& cfg) {
  cfg.validate();
  const double m = cfg.m;
  const double g = cfg.g;
  const double area = cfg.A;
  const IdealGasParams gas = cfg.gas;
  const double n0r = gas.n0r;
  const double alpha = gas.alpha;
  const double gamma = gas.gamma();
  const double k = cfg.adiabat_constant();
  const double entropy0 = gas_state(gas, cfg.T0_init, area * cfg.x0).entropy;

  Scenario sc;
  sc.name = "piston-adiabatic";

  SOCSystem& sys = sc.socs;
  sys.n = 6;
  sys.mech_dim = 1;
  sys.coordinate_names = {"x", "P", "T", "V", "S", "U"};
  sys.lagrangian = [m, g](const Eigen::VectorXd& q, const Eigen::VectorXd& qd) {
    return 0.5 * m * qd[0] * qd[0] - m * g * q[0] - q[5];
  };
  sys.energy = [m, g](const Eigen::VectorXd& q, const Eigen::VectorXd& qd) {
    return 0.5 * m * qd[0] * qd[0] + m * g * q[0] + q[5];
  };
  sys.heat_rate = [](const Eigen::VectorXd&, const Eigen::VectorXd&) {
    return 0.0;
  };
  sys.kinematic.residual = [n0r, alpha, area, gamma, k, entropy0](
                               const Jet2& jet) {
    const auto& q = jet.q;
    Eigen::VectorXd w(5);
    w[0] = q[1] * q[3] - n0r * q[2];
    w[1] = q[5] - alpha * n0r * q[2];
    w[2] = area * q[0] - q[3];
    w[3] = q[4] - entropy0;
    w[4] = q[1] * std::pow(q[3], gamma) - k;
    return w;
  };
  sys.variational.rows = [n0r, alpha, area, gamma](const Eigen::VectorXd& q,
                                                   const Eigen::VectorXd&) {
    const double pressure = q[1];
    const double volume = q[3];
    Eigen::MatrixXd rows(5, 6);
    rows.setZero();
    rows(0, 1) = volume;
    rows(0, 2) = -n0r;
    rows(0, 3) = pressure;
    rows(1, 2) = -alpha * n0r;
    rows(1, 5) = 1.0;
    rows(2, 0) = area;
    rows(2, 3) = -1.0;
    rows(3, 4) = 1.0;
    rows(4, 1) = std::pow(volume, gamma);
    rows(4, 3) = gamma * pressure * std::pow(volume, gamma - 1.0);
    return rows;
  };
  sys.second_law = SecondLawPolicy{{4}, 2, 1e-8};

  ReducedODE& ode = sc.ode;
  ode.dim = 2;
  ode.state_names = {"x", "xdot"};
  ode.rhs = [m, g, area, gamma, k](double, const Eigen::VectorXd& s) {
    Eigen::VectorXd ds(2);
    ds[0] = s[1];
    ds[1] = -g + k * std::pow(area, 1.0 - gamma) * std::pow(s[0], -gamma) / m;
    return ds;
  };
  ode.guards = {positive_coordinate("x > 0", 0)};
  ode.velocity_like = {1};

  sc.reconstruction.full_names = sys.coordinate_names;
  sc.reconstruction.full_state = [area, gamma, k, n0r, alpha,
                                  entropy0](const Eigen::VectorXd& s) {
    const double volume = area * s[0];
    Eigen::VectorXd q(6);
    q[0] = s[0];
    q[1] = k * std::pow(volume, -gamma);
    q[2] = k * std::pow(volume, 1.0 - gamma) / n0r;
    q[3] = volume;
    q[4] = entropy0;
    q[5] = alpha * k * std::pow(volume, 1.0 - gamma);
    return q;
  };

  sc.initial_state = Eigen::Vector2d(cfg.x0, cfg.v0);
  return sc;
}

// ---------------------------------------------------------------------------
// Isothermal vertical piston. With the internal-energy potential every
// variation is forbidden and the dynamics lives entirely in the kinematic
// constraints; the Helmholtz potential makes the variational condition
// nontrivial instead. Both give the same reduced dynamics.

Scenario build_piston_isothermal(const PistonIsothermalConfig& cfg) {
  cfg.validate();
  const double m = cfg.m;
  const double g = cfg.g;
  const double area = cfg.A;
  const IdealGasParams gas = cfg.gas;
  const double n0r = gas.n0r;
  const double alpha = gas.alpha;
  const double t_iso = cfg.isothermal_temperature();
  const double x0 = cfg.x0;
  const double entropy0 = gas_state(gas, t_iso, area * x0).entropy;
  const bool helmholtz =
      cfg.potential_choice == PistonIsothermalConfig::Potential::Helmholtz;

  Scenario sc;
  sc.name = "piston-isothermal";

  SOCSystem& sys = sc.socs;
  sys.n = 6;
  sys.mech_dim = 1;
  sys.coordinate_names = {"x", "P", "T", "V", "S", "U"};
  if (helmholtz) {
    sys.lagrangian = [m, g](const Eigen::VectorXd& q,
                            const Eigen::VectorXd& qd) {
      return 0.5 * m * qd[0] * qd[0] - m * g * q[0] - q[5] + q[2] * q[4];
    };
  } else {
    sys.lagrangian = [m, g](const Eigen::VectorXd& q,
                            const Eigen::VectorXd& qd) {
      return 0.5 * m * qd[0] * qd[0] - m * g * q[0] - q[5];
    };
  }
  sys.energy = [m, g](const Eigen::VectorXd& q, const Eigen::VectorXd& qd) {
    return 0.5 * m * qd[0] * qd[0] + m * g * q[0] + q[5];
  };
  // Quasi-static heat exchange through the bath keeping T constant.
  sys.heat_rate = [](const Eigen::VectorXd& q, const Eigen::VectorXd& qd) {
    return q[2] * qd[4];
  };
  sys.kinematic.residual = [m, g, n0r, alpha, area, t_iso, gas,
                            helmholtz](const Jet2& jet) {
    const auto& q = jet.q;
    Eigen::VectorXd w(helmholtz ? 5 : 6);
    w[0] = q[1] * q[3] - n0r * q[2];
    w[1] = q[5] - alpha * n0r * q[2];
    w[2] = area * q[0] - q[3];
    w[3] = q[4] - gas_state(gas, q[2], q[3]).entropy;
    w[4] = q[2] - t_iso;
    if (!helmholtz)
      w[5] = (m * jet.qddot[0] + m * g) * jet.qdot[0] + jet.qdot[5] -
             q[2] * jet.qdot[4];
    return w;
  };
  sys.variational.rows = [n0r, alpha, area, helmholtz](
                             const Eigen::VectorXd& q, const Eigen::VectorXd&) {
    const double pressure = q[1];
    const double temperature = q[2];
    const double volume = q[3];
    Eigen::MatrixXd rows(helmholtz ? 5 : 6, 6);
    rows.setZero();
    rows(0, 1) = volume;
    rows(0, 2) = -n0r;
    rows(0, 3) = pressure;
    rows(1, 2) = -alpha * n0r;
    rows(1, 5) = 1.0;
    rows(2, 0) = area;
    rows(2, 3) = -1.0;
    rows(3, 2) = -alpha * n0r / temperature;
    rows(3, 3) = -n0r / volume;
    rows(3, 4) = 1.0;
    rows(4, 2) = 1.0;
    if (!helmholtz) {
      rows(5, 0) = pressure * area;
      rows(5, 5) = 1.0;
    }
    return rows;
  };
  sys.second_law = SecondLawPolicy{{4}, 2, 1e-8};

  ReducedODE& ode = sc.ode;
  ode.dim = 2;
  ode.state_names = {"x", "xdot"};
  ode.rhs = [m, g, n0r, t_iso](double, const Eigen::VectorXd& s) {
    Eigen::VectorXd ds(2);
    ds[0] = s[1];
    ds[1] = -g + n0r * t_iso / (m * s[0]);
    return ds;
  };
  ode.guards = {positive_coordinate("x > 0", 0)};
  ode.velocity_like = {1};

  sc.reconstruction.full_names = sys.coordinate_names;
  sc.reconstruction.full_state = [area, n0r, alpha, t_iso, entropy0,
                                  x0](const Eigen::VectorXd& s) {
    Eigen::VectorXd q(6);
    q[0] = s[0];
    q[1] = n0r * t_iso / (area * s[0]);
    q[2] = t_iso;
    q[3] = area * s[0];
    q[4] = entropy0 + n0r * std::log(s[0] / x0);
    q[5] = alpha * n0r * t_iso;
    return q;
  };

  sc.initial_state = Eigen::Vector2d(cfg.x0, cfg.v0);
  return sc;
}

// ---------------------------------------------------------------------------
// Dissipative vertical piston, isolated or immersed in a thermal bath.
// kappa_e = 0 with any bath temperature recovers the isolated system. The
// container temperature rate is obtained by solving the energy-balance
// constraint, so total-energy bookkeeping holds by construction.

namespace {

Scenario build_dissipative(const DissipativePistonConfig& cfg, double kappa_e,
                           double area_e, double Tb, std::string name) {
  const double m = cfg.m;
  const double g = cfg.g;
  const double area = cfg.A;
  const IdealGasParams gas = cfg.gas;
  const BodyParams body = cfg.body;
  const double n0r = gas.n0r;
  const double alpha = gas.alpha;
  const double nu = body.nu;
  const double mu = cfg.mu;
  const double kappa_i = cfg.kappa;
  const AreaModel area_i = cfg.area;

  Scenario sc;
  sc.name = std::move(name);

  auto heat_rate = [kappa_e, area_e, Tb](const Eigen::VectorXd& q,
                                         const Eigen::VectorXd&) {
    return kappa_e * area_e * (Tb - q[6]);
  };

  SOCSystem& sys = sc.socs;
  sys.n = 9;
  sys.mech_dim = 1;
  sys.coordinate_names = {"x", "P", "T", "V", "S", "U", "T_c", "S_c", "U_c"};
  sys.lagrangian = [m, g](const Eigen::VectorXd& q, const Eigen::VectorXd& qd) {
    return 0.5 * m * qd[0] * qd[0] - m * g * q[0] - q[5] - q[8];
  };
  sys.energy = [m, g](const Eigen::VectorXd& q, const Eigen::VectorXd& qd) {
    return 0.5 * m * qd[0] * qd[0] + m * g * q[0] + q[5] + q[8];
  };
  sys.heat_rate = heat_rate;
  // Conduction heat received by the gas is kappa_i A_i (T_c - T); its first
  // law then fixes dU = heat - P dV, and the total-energy balance fixes the
  // container rate. Routing the compression work into the gas this way is
  // what keeps the total entropy production a sum of squares.
  sys.kinematic.residual = [m, g, n0r, alpha, area, gas, body, kappa_i, area_i,
                            heat_rate](const Jet2& jet) {
    const auto& q = jet.q;
    const auto& qd = jet.qdot;
    Eigen::VectorXd w(8);
    w[0] = q[1] * q[3] - n0r * q[2];
    w[1] = q[5] - alpha * n0r * q[2];
    w[2] = area * q[0] - q[3];
    w[3] = q[4] - gas_state(gas, q[2], q[3]).entropy;
    w[4] = q[8] - body.nu * q[6];
    w[5] = q[7] - body_state(body, q[6]).entropy;
    const double mech_power = (m * jet.qddot[0] + m * g) * qd[0];
    const double gas_heat = kappa_i * area_i(q[0]) * (q[6] - q[2]);
    w[6] = qd[5] + q[1] * qd[3] - gas_heat;         // gas first law
    w[7] = mech_power + qd[5] + qd[8] - heat_rate(q, qd);  // total balance
    return w;
  };
  sys.variational.rows = [n0r, alpha, nu, area, mu](const Eigen::VectorXd& q,
                                                    const Eigen::VectorXd& qd) {
    const double pressure = q[1];
    const double temperature = q[2];
    const double volume = q[3];
    const double tc = q[6];
    Eigen::MatrixXd rows(8, 9);
    rows.setZero();
    rows(0, 1) = volume;
    rows(0, 2) = -n0r;
    rows(0, 3) = pressure;
    rows(1, 2) = -alpha * n0r;
    rows(1, 5) = 1.0;
    rows(2, 0) = area;
    rows(2, 3) = -1.0;
    rows(3, 2) = -alpha * n0r / temperature;
    rows(3, 3) = -n0r / volume;
    rows(3, 4) = 1.0;
    rows(4, 6) = -nu;
    rows(4, 8) = 1.0;
    rows(5, 6) = -nu / tc;
    rows(5, 7) = 1.0;
    rows(6, 3) = pressure;  // dU = -P dV
    rows(6, 5) = 1.0;
    rows(7, 0) = -mu * qd[0];  // dU_c = mu xdot dx
    rows(7, 8) = 1.0;
    return rows;
  };
  // External heat enters through the container, so its temperature divides
  // the heat rate in the Second-Law margin.
  const int tc_index = 6;
  sys.second_law =
      SecondLawPolicy{{4, 7}, kappa_e > 0.0 ? tc_index : 2, 1e-8};

  ReducedODE& ode = sc.ode;
  ode.dim = 4;
  ode.state_names = {"x", "xdot", "T", "T_c"};
  ode.rhs = [m, g, n0r, alpha, nu, mu, kappa_i, area_i, kappa_e, area_e,
             Tb](double, const Eigen::VectorXd& s) {
    const double x = s[0];
    const double xdot = s[1];
    const double temperature = s[2];
    const double tc = s[3];
    const double xddot =
        -g + n0r * temperature / (m * x) - mu * xdot / m;
    const double compression_power = n0r * temperature * xdot / x;  // P dV/dt
    const double tdot = (kappa_i * area_i(x) * (tc - temperature) -
                         compression_power) /
                        (alpha * n0r);
    const double external_heat = kappa_e * area_e * (Tb - tc);
    const double tcdot =
        (external_heat - (m * xddot + m * g) * xdot - alpha * n0r * tdot) / nu;
    Eigen::VectorXd ds(4);
    ds << xdot, xddot, tdot, tcdot;
    return ds;
  };
  ode.guards = {positive_coordinate("x > 0", 0),
                positive_coordinate("T > 0", 2),
                positive_coordinate("T_c > 0", 3)};
  ode.velocity_like = {1};

  sc.reconstruction.full_names = sys.coordinate_names;
  sc.reconstruction.full_state = [area, n0r, alpha, gas,
                                  body](const Eigen::VectorXd& s) {
    const double volume = area * s[0];
    const GasState gs = gas_state(gas, s[2], volume);
    const BodyState bs = body_state(body, s[3]);
    Eigen::VectorXd q(9);
    q[0] = s[0];
    q[1] = gs.pressure;
    q[2] = s[2];
    q[3] = volume;
    q[4] = gs.entropy;
    q[5] = gs.internal_energy;
    q[6] = s[3];
    q[7] = bs.entropy;
    q[8] = bs.internal_energy;
    return q;
  };

  sc.initial_state = Eigen::Vector4d(cfg.x0, cfg.v0, cfg.Tgas0, cfg.Tc0);
  return sc;
}

}  // namespace

Scenario build_dissipative_piston(const DissipativePistonConfig& cfg) {
  cfg.validate();
  return build_dissipative(cfg, 0.0, 1.0, 1.0, "piston-dissipative");
}

Scenario build_dissipative_piston_bath(const DissipativePistonBathConfig& cfg) {
  cfg.validate();
  return build_dissipative(cfg.base, cfg.kappa_e, cfg.area_e, cfg.Tb,
                           "piston-dissipative-bath");
}

Scenario build_scenario(const ScenarioConfig& cfg) {
  return std::visit(
      [](const auto& c) -> Scenario {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, WagonAdiabaticConfig>)
          return build_wagon_adiabatic(c);
        else if constexpr (std::is_same_v<T, WagonBathConfig>)
          return build_wagon_bath(c);
        else if constexpr (std::is_same_v<T, PistonAdiabaticConfig>)
          return build_piston_adiabatic(c);
        else if constexpr (std::is_same_v<T, PistonIsothermalConfig>)
          return build_piston_isothermal(c);
        else if constexpr (std::is_same_v<T, DissipativePistonConfig>)
          return build_dissipative_piston(c);
        else
          return build_dissipative_piston_bath(c);
      },
      cfg);
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {
      "wagon-adiabatic",       "wagon-bath",
      "piston-adiabatic",      "piston-isothermal",
      "piston-dissipative",    "piston-dissipative-bath"};
  return names;
}

}  // namespace thermomech
