#include "thermomech/socs.hpp"

#include <cmath>
#include <stdexcept>

#include "thermomech/numdiff.hpp"

namespace thermomech {

namespace {

void check_jet(const SOCSystem& sys, const Jet2& jet) {
  if (jet.q.size() != sys.n || jet.qdot.size() != sys.n ||
      jet.qddot.size() != sys.n)
    throw std::invalid_argument("jet dimension does not match system");
}

// Energy of a Lagrangian, <dL/dqdot, qdot> - L, by central differences.
double lagrangian_energy(
    const std::function<double(const Eigen::VectorXd&,
                               const Eigen::VectorXd&)>& lag,
    const Eigen::VectorXd& q, const Eigen::VectorXd& qdot) {
  const auto in_qdot = [&](const Eigen::VectorXd& v) { return lag(q, v); };
  const Eigen::VectorXd p = fd::gradient(in_qdot, qdot);
  return p.dot(qdot) - lag(q, qdot);
}

}  // namespace

Eigen::VectorXd kinematic_residual(const SOCSystem& sys, const Jet2& jet) {
  check_jet(sys, jet);
  if (!sys.kinematic.residual) return Eigen::VectorXd(0);
  return sys.kinematic.residual(jet);
}

VariationBasis variation_basis(const SOCSystem& sys, const Eigen::VectorXd& q,
                               const Eigen::VectorXd& qdot) {
  const Eigen::MatrixXd rows =
      sys.variational.rows ? sys.variational.rows(q, qdot)
                           : Eigen::MatrixXd(0, sys.n);
  if (rows.rows() == 0)
    return {Eigen::MatrixXd::Identity(sys.n, sys.n)};
  if (rows.cols() != sys.n)
    throw std::invalid_argument("variational rows have wrong width");

  Eigen::FullPivLU<Eigen::MatrixXd> lu(rows);
  lu.setThreshold(sys.pivot_tol);
  const int r = static_cast<int>(lu.dimensionOfKernel());
  if (r == 0) return {Eigen::MatrixXd(sys.n, 0)};

  const Eigen::MatrixXd kernel = lu.kernel();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(kernel);
  const Eigen::MatrixXd thin_q =
      qr.householderQ() * Eigen::MatrixXd::Identity(sys.n, r);
  return {thin_q};
}

Eigen::VectorXd el_residual(const SOCSystem& sys, const Jet2& jet) {
  check_jet(sys, jet);
  const auto& lag = sys.lagrangian;
  const int n = sys.n;

  // d/dt(dL/dqdot_i) as the derivative along s of dL/dqdot_i evaluated on
  // (q + s qdot, qdot + s qddot). The inner velocity-gradient differences
  // use the wide second-order step; so does the outer s-difference, since
  // the quotient of the two amplifies rounding in L.
  const double s_step = fd::second_step();
  Eigen::VectorXd residual(n);
  for (int i = 0; i < n; ++i) {
    const double hi = fd::scaled(fd::second_step(), jet.qdot[i]);
    const auto momentum_at = [&](double s) {
      Eigen::VectorXd qs = jet.q + s * jet.qdot;
      Eigen::VectorXd vs = jet.qdot + s * jet.qddot;
      Eigen::VectorXd vp = vs, vm = vs;
      vp[i] += hi;
      vm[i] -= hi;
      return (lag(qs, vp) - lag(qs, vm)) / (2.0 * hi);
    };
    residual[i] = (momentum_at(s_step) - momentum_at(-s_step)) / (2.0 * s_step);
    if (!std::isfinite(residual[i]))
      throw std::domain_error("el_residual: non-finite Lagrangian evaluation");
  }

  const auto in_q = [&](const Eigen::VectorXd& v) { return lag(v, jet.qdot); };
  residual -= fd::gradient(in_q, jet.q);
  if (!residual.allFinite())
    throw std::domain_error("el_residual: non-finite Lagrangian evaluation");
  return residual;
}

double dalembert_violation(const SOCSystem& sys, const Jet2& jet) {
  const VariationBasis basis = variation_basis(sys, jet.q, jet.qdot);
  if (basis.dimension() == 0) return 0.0;
  const Eigen::VectorXd r = el_residual(sys, jet);
  return (basis.columns.transpose() * r).cwiseAbs().maxCoeff();
}

Eigen::VectorXd constraint_force(const SOCSystem& sys, const Jet2& jet) {
  const Eigen::VectorXd r = el_residual(sys, jet);
  const Eigen::MatrixXd rows =
      sys.variational.rows ? sys.variational.rows(jet.q, jet.qdot)
                           : Eigen::MatrixXd(0, sys.n);
  if (rows.rows() == 0) {
    if (r.cwiseAbs().maxCoeff() > sys.tolerance)
      throw std::runtime_error(
          "constraint_force: residual outside the constraint-force space");
    return Eigen::VectorXd(0);
  }

  const Eigen::MatrixXd basis_t = rows.transpose();  // n x m_V
  const Eigen::VectorXd lambda =
      basis_t.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(r);
  const double fit = (basis_t * lambda - r).cwiseAbs().maxCoeff();
  if (fit > sys.tolerance)
    throw std::runtime_error(
        "constraint_force: residual outside the constraint-force space");
  return lambda;
}

SOCSystem nonholonomic_embed(
    std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&)>
        lagrangian,
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> dist_rows, int n) {
  SOCSystem sys;
  sys.n = n;
  sys.mech_dim = n;
  sys.lagrangian = lagrangian;
  sys.heat_rate = [](const Eigen::VectorXd&, const Eigen::VectorXd&) {
    return 0.0;
  };
  sys.energy = [lagrangian](const Eigen::VectorXd& q,
                            const Eigen::VectorXd& qdot) {
    return lagrangian_energy(lagrangian, q, qdot);
  };

  sys.kinematic.residual = [dist_rows](const Jet2& jet) {
    const Eigen::MatrixXd rows = dist_rows(jet.q);
    const int m = static_cast<int>(rows.rows());
    Eigen::VectorXd w(2 * m);
    w.head(m) = rows * jet.qdot;

    // d/dt(rows * qdot) = (D_v rows) qdot + rows * qddot, with the rows
    // differentiated along the velocity direction.
    Eigen::VectorXd derivative_term = Eigen::VectorXd::Zero(m);
    const double speed = jet.qdot.norm();
    if (speed > 0.0) {
      const Eigen::VectorXd dir = jet.qdot / speed;
      const double h = fd::first_step() * (1.0 + jet.q.norm());
      const Eigen::MatrixXd dr =
          (dist_rows(jet.q + h * dir) - dist_rows(jet.q - h * dir)) /
          (2.0 * h);
      derivative_term = speed * (dr * jet.qdot);
    }
    w.tail(m) = derivative_term + rows * jet.qddot;
    return w;
  };
  sys.variational.rows = [dist_rows](const Eigen::VectorXd& q,
                                     const Eigen::VectorXd&) {
    return dist_rows(q);
  };
  return sys;
}

SOCSystem holonomic_embed(
    std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&)>
        lagrangian,
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> submanifold_eqs,
    int n) {
  SOCSystem sys;
  sys.n = n;
  sys.mech_dim = n;
  sys.lagrangian = lagrangian;
  sys.heat_rate = [](const Eigen::VectorXd&, const Eigen::VectorXd&) {
    return 0.0;
  };
  sys.energy = [lagrangian](const Eigen::VectorXd& q,
                            const Eigen::VectorXd& qdot) {
    return lagrangian_energy(lagrangian, q, qdot);
  };

  const double pivot_tol = sys.pivot_tol;
  auto full_rank_jacobian = [submanifold_eqs,
                             pivot_tol](const Eigen::VectorXd& q) {
    const Eigen::MatrixXd jac = fd::jacobian(submanifold_eqs, q);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
    svd.setThreshold(pivot_tol);
    if (svd.rank() < jac.rows())
      throw std::runtime_error(
          "holonomic_embed: rank-deficient constraint Jacobian");
    return jac;
  };

  sys.kinematic.residual = [submanifold_eqs, full_rank_jacobian](
                               const Jet2& jet) {
    const Eigen::VectorXd level = submanifold_eqs(jet.q);
    const Eigen::MatrixXd jac = full_rank_jacobian(jet.q);
    const int m = static_cast<int>(level.size());
    Eigen::VectorXd w(3 * m);
    w.head(m) = level;
    w.segment(m, m) = jac * jet.qdot;
    // Second time derivative: qdot^T Hess(f) qdot + J qddot, the curvature
    // term via a directional second difference.
    w.tail(m) = fd::second_directional(submanifold_eqs, jet.q, jet.qdot) +
                jac * jet.qddot;
    return w;
  };
  sys.variational.rows = [full_rank_jacobian](const Eigen::VectorXd& q,
                                              const Eigen::VectorXd&) {
    return full_rank_jacobian(q);
  };
  return sys;
}

}  // namespace thermomech
