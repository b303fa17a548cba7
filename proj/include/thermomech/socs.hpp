#pragma once

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace thermomech {

// A point of the second-order tangent bundle in coordinates.
struct Jet2 {
  Eigen::VectorXd q;
  Eigen::VectorXd qdot;
  Eigen::VectorXd qddot;

  int dim() const { return static_cast<int>(q.size()); }
};

// Kinematic constraints w(q, qdot, qddot) = 0; the residual may be empty.
struct KinematicConstraints {
  std::function<Eigen::VectorXd(const Jet2&)> residual;
};

// Variational constraints as an annihilator: rows(q, qdot) * delta_q = 0.
// The admissible variations at (q, qdot) are the nullspace of the rows.
struct VariationalConstraints {
  std::function<Eigen::MatrixXd(const Eigen::VectorXd& q,
                                const Eigen::VectorXd& qdot)>
      rows;
};

// Identifies the entropy/temperature coordinates used by the Second-Law
// margin dS_total/dt - heat_rate / T.
struct SecondLawPolicy {
  std::vector<int> entropy_indices;
  int temperature_index = 0;
  double tolerance = 1e-8;
};

// The triple (L, C_K, C_V) plus the heat exchange and the total energy.
// heat_rate(q, qdot) is the pairing of the heat one-form with the velocity
// (zero for adiabatic systems); energy(q, qdot) is the physical total energy
// E_mec + sum U of the mechanical/thermodynamic split.
struct SOCSystem {
  int n = 0;
  int mech_dim = 0;
  std::function<double(const Eigen::VectorXd& q, const Eigen::VectorXd& qdot)>
      lagrangian;
  KinematicConstraints kinematic;
  VariationalConstraints variational;
  std::function<double(const Eigen::VectorXd& q, const Eigen::VectorXd& qdot)>
      heat_rate;
  std::function<double(const Eigen::VectorXd& q, const Eigen::VectorXd& qdot)>
      energy;
  std::optional<SecondLawPolicy> second_law;
  std::vector<std::string> coordinate_names;
  double pivot_tol = 1e-10;  // relative pivot tolerance for nullspace ranks
  double tolerance = 1e-8;   // dynamic-consistency tolerance
};

// Orthonormal basis of the admissible variations at a point.
struct VariationBasis {
  Eigen::MatrixXd columns;  // n x r, orthonormal

  int dimension() const { return static_cast<int>(columns.cols()); }
};

// w evaluated on the jet; the jet satisfies the kinematic constraints iff
// the max-norm is below tolerance.
Eigen::VectorXd kinematic_residual(const SOCSystem& sys, const Jet2& jet);

VariationBasis variation_basis(const SOCSystem& sys, const Eigen::VectorXd& q,
                               const Eigen::VectorXd& qdot);

// Euler-Lagrange residual R_i = d/dt(dL/dqdot_i) - dL/dq_i, with the time
// derivative expanded through the jet's velocity and acceleration. All
// derivatives of L are central finite differences.
Eigen::VectorXd el_residual(const SOCSystem& sys, const Jet2& jet);

// Max |<R, delta>| over unit vectors delta in the variation basis; zero by
// convention when no variations are admissible.
double dalembert_violation(const SOCSystem& sys, const Jet2& jet);

// Least-squares coefficients lambda with R = sum_b lambda_b v^b. Throws when
// the fit residual exceeds the system tolerance (the jet is then dynamically
// inconsistent).
Eigen::VectorXd constraint_force(const SOCSystem& sys, const Jet2& jet);

// Nonholonomic system as a second-order constrained system: the kinematic
// constraints enforce rows(q) qdot = 0 together with its time derivative,
// and the admissible variations are the distribution itself.
SOCSystem nonholonomic_embed(
    std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&)>
        lagrangian,
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> dist_rows, int n);

// Holonomic system on the level set f(q) = 0: the kinematic constraints
// enforce f and its first and second time derivatives, the admissible
// variations are the tangent of the level set. Requires a full-rank Jacobian
// wherever it is queried.
SOCSystem holonomic_embed(
    std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&)>
        lagrangian,
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> submanifold_eqs,
    int n);

}  // namespace thermomech
