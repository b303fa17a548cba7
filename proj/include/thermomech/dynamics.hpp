#pragma once

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "thermomech/scenarios.hpp"
#include "thermomech/socs.hpp"

namespace thermomech {

struct IntegratorConfig {
  enum class Method { RK4, RK45 };

  Method method = Method::RK45;
  double dt = 1e-3;     // fixed-step size (RK4)
  double rtol = 1e-9;   // adaptive relative tolerance
  double atol = 1e-12;  // adaptive absolute tolerance
  double t_end = 10.0;
  long max_steps = 20000000;

  void validate() const;
};

struct GuardViolation : std::runtime_error {
  GuardViolation(double t, Eigen::VectorXd s, const std::string& guard);
  double time;
  Eigen::VectorXd state;
};

struct MaxStepsExceeded : std::runtime_error {
  explicit MaxStepsExceeded(double t);
  double time;
};

// Time-sampled solution; full_states and jets are filled by reconstruct and
// lift_to_jets. Jets carry grid finite-difference velocities/accelerations
// so that every audit is independent of the integrator that produced the
// data.
struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  std::vector<std::string> state_names;
  std::vector<Eigen::VectorXd> full_states;
  std::vector<std::string> full_names;
  std::vector<Jet2> jets;

  int size() const { return static_cast<int>(times.size()); }
  bool has_full() const { return !full_states.empty(); }
  bool has_jets() const { return !jets.empty(); }
};

Trajectory integrate(const ReducedODE& ode, const Eigen::VectorXd& initial,
                     const IntegratorConfig& cfg);

// Fills full_states from the reduced states.
void reconstruct(Trajectory& traj, const Reconstruction& recon);

// Fills jets with grid derivatives of the full states (five-point stencils,
// one-sided near the ends).
void lift_to_jets(Trajectory& traj);

struct EnergyAudit {
  std::vector<double> drift;  // E(t) - E(0) - accumulated heat
  double max_relative = 0.0;
};

EnergyAudit energy_audit(const Trajectory& traj, const SOCSystem& sys);

struct SecondLawAudit {
  std::vector<double> margin;  // dS_total/dt - heat_rate / T
  double min_margin = 0.0;
  bool accepted = true;
};

SecondLawAudit second_law_audit(const Trajectory& traj, const SOCSystem& sys);

struct SocsAudit {
  double kinematic_max = 0.0;
  double dalembert_max = 0.0;
};

// Maxima over interior samples (endpoints excluded).
SocsAudit socs_audit(const Trajectory& traj, const SOCSystem& sys);

// Integrates to t1, negates the velocity-like components, integrates t1
// again; returns the max-norm distance from the initial state, comparing
// velocity-like components by absolute value.
double reversibility_check(const ReducedODE& ode, const Eigen::VectorXd& initial,
                           double t1, const IntegratorConfig& cfg);

struct SimulationReport {
  double energy_drift = 0.0;
  double entropy_margin_min = 0.0;
  double constraint_residual_max = 0.0;
  double dalembert_violation_max = 0.0;
  bool second_law_accepted = true;
  std::optional<double> reversibility_error;
};

// Runs the full audit battery; reconstructs and lifts the trajectory first
// when needed.
SimulationReport run_audits(Trajectory& traj, const Scenario& scenario);

}  // namespace thermomech
