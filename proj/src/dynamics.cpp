#include "thermomech/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "thermomech/numdiff.hpp"

namespace thermomech {

void IntegratorConfig::validate() const {
  if (t_end <= 0.0) throw std::invalid_argument("t_end must be positive");
  if (method == Method::RK4) {
    if (dt <= 0.0) throw std::invalid_argument("dt must be positive");
  } else {
    if (rtol <= 0.0 || atol <= 0.0)
      throw std::invalid_argument("rtol and atol must be positive");
  }
  if (max_steps <= 0) throw std::invalid_argument("max_steps must be positive");
}

GuardViolation::GuardViolation(double t, Eigen::VectorXd s,
                               const std::string& guard)
    : std::runtime_error("guard '" + guard + "' violated at t = " +
                         std::to_string(t)),
      time(t),
      state(std::move(s)) {}

MaxStepsExceeded::MaxStepsExceeded(double t)
    : std::runtime_error("step limit exceeded at t = " + std::to_string(t)),
      time(t) {}

namespace {

void check_guards(const ReducedODE& ode, double t, const Eigen::VectorXd& s) {
  for (const auto& g : ode.guards)
    if (!g.ok(s)) throw GuardViolation(t, s, g.name);
  if (!s.allFinite()) throw GuardViolation(t, s, "finite state");
}

Eigen::VectorXd rk4_increment(const ReducedODE& ode, double t,
                              const Eigen::VectorXd& y, double h) {
  const Eigen::VectorXd k1 = ode.rhs(t, y);
  const Eigen::VectorXd k2 = ode.rhs(t + 0.5 * h, y + 0.5 * h * k1);
  const Eigen::VectorXd k3 = ode.rhs(t + 0.5 * h, y + 0.5 * h * k2);
  const Eigen::VectorXd k4 = ode.rhs(t + h, y + h * k3);
  return (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Trajectory integrate_rk4(const ReducedODE& ode, const Eigen::VectorXd& initial,
                         const IntegratorConfig& cfg) {
  Trajectory traj;
  traj.state_names = ode.state_names;
  double t = 0.0;
  Eigen::VectorXd y = initial;
  // Compensated accumulation keeps the rounding floor of long fixed-step
  // runs below the truncation error.
  Eigen::VectorXd carry = Eigen::VectorXd::Zero(y.size());
  traj.times.push_back(t);
  traj.states.push_back(y);

  const auto advance = [&](double h) {
    const Eigen::VectorXd increment = rk4_increment(ode, t, y, h);
    for (int i = 0; i < y.size(); ++i) {
      const double term = increment[i] - carry[i];
      const double next = y[i] + term;
      carry[i] = (next - y[i]) - term;
      y[i] = next;
    }
  };

  const long full = static_cast<long>(std::floor(cfg.t_end / cfg.dt + 1e-12));
  const double remainder = cfg.t_end - static_cast<double>(full) * cfg.dt;
  if (full > cfg.max_steps) throw MaxStepsExceeded(t);

  for (long i = 0; i < full; ++i) {
    advance(cfg.dt);
    t = static_cast<double>(i + 1) * cfg.dt;
    check_guards(ode, t, y);
    traj.times.push_back(t);
    traj.states.push_back(y);
  }
  if (remainder > 1e-12 * std::max(1.0, cfg.t_end)) {
    advance(remainder);
    t = cfg.t_end;
    check_guards(ode, t, y);
    traj.times.push_back(t);
    traj.states.push_back(y);
  }
  return traj;
}

// Dormand-Prince 5(4) embedded pair.
Trajectory integrate_rk45(const ReducedODE& ode, const Eigen::VectorXd& initial,
                          const IntegratorConfig& cfg) {
  static const double c[7] = {0.0,      1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0,
                              8.0 / 9.0, 1.0,       1.0};
  static const double a[7][6] = {
      {},
      {1.0 / 5.0},
      {3.0 / 40.0, 9.0 / 40.0},
      {44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0},
      {19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0},
      {9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0,
       -5103.0 / 18656.0},
      {35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0,
       11.0 / 84.0}};
  static const double b5[7] = {35.0 / 384.0,     0.0,  500.0 / 1113.0,
                               125.0 / 192.0,    -2187.0 / 6784.0,
                               11.0 / 84.0,      0.0};
  static const double b4[7] = {5179.0 / 57600.0,    0.0,
                               7571.0 / 16695.0,    393.0 / 640.0,
                               -92097.0 / 339200.0, 187.0 / 2100.0,
                               1.0 / 40.0};

  Trajectory traj;
  traj.state_names = ode.state_names;
  double t = 0.0;
  Eigen::VectorXd y = initial;
  traj.times.push_back(t);
  traj.states.push_back(y);

  double h = cfg.t_end / 100.0;
  long steps = 0;
  const int n = static_cast<int>(y.size());
  std::vector<Eigen::VectorXd> k(7);

  while (t < cfg.t_end * (1.0 - 1e-14)) {
    if (++steps > cfg.max_steps) throw MaxStepsExceeded(t);
    h = std::min(h, cfg.t_end - t);

    k[0] = ode.rhs(t, y);
    for (int stage = 1; stage < 7; ++stage) {
      Eigen::VectorXd arg = y;
      for (int j = 0; j < stage; ++j)
        if (a[stage][j] != 0.0) arg += h * a[stage][j] * k[j];
      k[stage] = ode.rhs(t + c[stage] * h, arg);
    }

    Eigen::VectorXd y5 = y, err = Eigen::VectorXd::Zero(n);
    for (int stage = 0; stage < 7; ++stage) {
      if (b5[stage] != 0.0) y5 += h * b5[stage] * k[stage];
      err += h * (b5[stage] - b4[stage]) * k[stage];
    }

    double norm = 0.0;
    for (int i = 0; i < n; ++i) {
      const double sc =
          cfg.atol + cfg.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
      norm += (err[i] / sc) * (err[i] / sc);
    }
    norm = std::sqrt(norm / n);

    if (norm <= 1.0) {
      t += h;
      y = y5;
      check_guards(ode, t, y);
      traj.times.push_back(t);
      traj.states.push_back(y);
    }
    const double factor =
        (norm == 0.0) ? 5.0
                      : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
    h *= factor;
  }
  return traj;
}

}  // namespace

Trajectory integrate(const ReducedODE& ode, const Eigen::VectorXd& initial,
                     const IntegratorConfig& cfg) {
  cfg.validate();
  if (initial.size() != ode.dim)
    throw std::invalid_argument("initial state has wrong dimension");
  check_guards(ode, 0.0, initial);
  return cfg.method == IntegratorConfig::Method::RK4
             ? integrate_rk4(ode, initial, cfg)
             : integrate_rk45(ode, initial, cfg);
}

void reconstruct(Trajectory& traj, const Reconstruction& recon) {
  traj.full_names = recon.full_names;
  traj.full_states.clear();
  traj.full_states.reserve(traj.states.size());
  for (const auto& s : traj.states) traj.full_states.push_back(recon.full_state(s));
}

void lift_to_jets(Trajectory& traj) {
  if (!traj.has_full())
    throw std::logic_error("lift_to_jets needs reconstructed states");
  const int count = traj.size();
  if (count < 3) throw std::logic_error("lift_to_jets needs at least 3 samples");
  const int stencil = std::min(5, count);
  const int n = static_cast<int>(traj.full_states.front().size());

  traj.jets.clear();
  traj.jets.reserve(count);
  for (int i = 0; i < count; ++i) {
    int lo = std::clamp(i - stencil / 2, 0, count - stencil);
    std::vector<double> nodes(traj.times.begin() + lo,
                              traj.times.begin() + lo + stencil);
    const auto w1 = fd::fornberg_weights(traj.times[i], nodes, 1);
    const auto w2 = fd::fornberg_weights(traj.times[i], nodes, 2);

    Jet2 jet;
    jet.q = traj.full_states[i];
    jet.qdot = Eigen::VectorXd::Zero(n);
    jet.qddot = Eigen::VectorXd::Zero(n);
    for (int s = 0; s < stencil; ++s) {
      jet.qdot += w1[s] * traj.full_states[lo + s];
      jet.qddot += w2[s] * traj.full_states[lo + s];
    }
    traj.jets.push_back(std::move(jet));
  }
}

EnergyAudit energy_audit(const Trajectory& traj, const SOCSystem& sys) {
  if (!traj.has_full() || !traj.has_jets())
    throw std::logic_error("energy_audit needs full states and jets");
  EnergyAudit audit;
  const int count = traj.size();
  audit.drift.resize(count);

  std::vector<double> rate(count);
  for (int i = 0; i < count; ++i)
    rate[i] = sys.heat_rate ? sys.heat_rate(traj.jets[i].q, traj.jets[i].qdot)
                            : 0.0;

  const double e0 = sys.energy(traj.jets[0].q, traj.jets[0].qdot);
  const double scale = std::max(1.0, std::abs(e0));
  double heat = 0.0;
  for (int i = 0; i < count; ++i) {
    if (i > 0)
      heat += 0.5 * (rate[i] + rate[i - 1]) * (traj.times[i] - traj.times[i - 1]);
    const double e = sys.energy(traj.jets[i].q, traj.jets[i].qdot);
    audit.drift[i] = e - e0 - heat;
    audit.max_relative = std::max(audit.max_relative, std::abs(audit.drift[i]) / scale);
  }
  return audit;
}

SecondLawAudit second_law_audit(const Trajectory& traj, const SOCSystem& sys) {
  if (!traj.has_full() || !traj.has_jets())
    throw std::logic_error("second_law_audit needs full states and jets");
  if (!sys.second_law)
    throw std::logic_error("system has no Second-Law policy");
  const SecondLawPolicy& policy = *sys.second_law;

  SecondLawAudit audit;
  const int count = traj.size();
  audit.margin.resize(count);
  for (int i = 0; i < count; ++i) {
    const Jet2& jet = traj.jets[i];
    double entropy_rate = 0.0;
    for (int e : policy.entropy_indices) entropy_rate += jet.qdot[e];
    const double rate =
        sys.heat_rate ? sys.heat_rate(jet.q, jet.qdot) : 0.0;
    audit.margin[i] = entropy_rate - rate / jet.q[policy.temperature_index];
  }

  audit.min_margin = std::numeric_limits<double>::infinity();
  for (int i = 1; i + 1 < count; ++i)
    audit.min_margin = std::min(audit.min_margin, audit.margin[i]);
  audit.accepted = audit.min_margin >= -policy.tolerance;
  return audit;
}

SocsAudit socs_audit(const Trajectory& traj, const SOCSystem& sys) {
  if (!traj.has_jets()) throw std::logic_error("socs_audit needs jets");
  SocsAudit audit;
  for (int i = 1; i + 1 < traj.size(); ++i) {
    const Jet2& jet = traj.jets[i];
    const Eigen::VectorXd w = kinematic_residual(sys, jet);
    if (w.size() > 0)
      audit.kinematic_max =
          std::max(audit.kinematic_max, w.cwiseAbs().maxCoeff());
    audit.dalembert_max =
        std::max(audit.dalembert_max, dalembert_violation(sys, jet));
  }
  return audit;
}

double reversibility_check(const ReducedODE& ode,
                           const Eigen::VectorXd& initial, double t1,
                           const IntegratorConfig& cfg) {
  IntegratorConfig leg = cfg;
  leg.t_end = t1;
  const Trajectory forward = integrate(ode, initial, leg);
  Eigen::VectorXd turned = forward.states.back();
  for (int i : ode.velocity_like) turned[i] = -turned[i];
  const Trajectory backward = integrate(ode, turned, leg);
  const Eigen::VectorXd final = backward.states.back();

  double err = 0.0;
  for (int i = 0; i < ode.dim; ++i) {
    const bool velocity =
        std::find(ode.velocity_like.begin(), ode.velocity_like.end(), i) !=
        ode.velocity_like.end();
    const double diff = velocity
                            ? std::abs(std::abs(final[i]) - std::abs(initial[i]))
                            : std::abs(final[i] - initial[i]);
    err = std::max(err, diff);
  }
  return err;
}

SimulationReport run_audits(Trajectory& traj, const Scenario& scenario) {
  if (!traj.has_full()) reconstruct(traj, scenario.reconstruction);
  if (!traj.has_jets()) lift_to_jets(traj);

  SimulationReport report;
  const EnergyAudit energy = energy_audit(traj, scenario.socs);
  report.energy_drift = energy.max_relative;
  const SecondLawAudit law = second_law_audit(traj, scenario.socs);
  report.entropy_margin_min = law.min_margin;
  report.second_law_accepted = law.accepted;
  const SocsAudit socs = socs_audit(traj, scenario.socs);
  report.constraint_residual_max = socs.kinematic_max;
  report.dalembert_violation_max = socs.dalembert_max;
  return report;
}

}  // namespace thermomech
