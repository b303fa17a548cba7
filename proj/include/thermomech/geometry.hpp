#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

namespace thermomech {

// One bilinear term of a contact form: sign * base[coeff] * delta[diff].
// The temperature pairs carry sign -1 and are the ones whose base value
// must stay positive.
struct PairTerm {
  int coeff = 0;
  int diff = 0;
  double sign = 1.0;
  bool temperature = false;
};

// Chart on a thermodynamic phase space with contact form
//   theta = sum(dU terms) - sum T dS + sum x dy.
// A canonical chart of d intensive/extensive pairs orders its 2d+1
// coordinates as (x_1..x_{d-1}, T, y_1..y_{d-1}, S, U). Composite charts
// concatenate blocks and sum their forms.
class ContactChart {
 public:
  static ContactChart canonical(int pair_count,
                                std::vector<std::string> names);

  int dim() const { return static_cast<int>(names_.size()); }
  int pair_count() const { return static_cast<int>(pairs_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<PairTerm>& pairs() const { return pairs_; }
  const std::vector<int>& energy_indices() const { return energy_; }

  // Canonical-block accessors (first block for composites).
  int temperature_index() const;
  int entropy_index() const;
  int energy_index() const { return energy_.front(); }

  int index_of(const std::string& name) const;  // -1 when absent

  friend ContactChart composite_chart(const ContactChart& a,
                                      const ContactChart& b);

  ContactChart() = default;  // empty chart, only valid as an assignment target

 private:
  std::vector<std::string> names_;
  std::vector<PairTerm> pairs_;
  std::vector<int> energy_;
};

// A chart point together with tangent components in the same ordering.
struct TangentThermo {
  Eigen::VectorXd base;
  Eigen::VectorXd delta;
};

// Evaluates theta at v.base on v.delta.
double contact_form(const ContactChart& chart, const TangentThermo& v);

// Chart whose contact form is the sum of the factors' forms. Colliding
// coordinate names from b are suffixed until unique.
ContactChart composite_chart(const ContactChart& a, const ContactChart& b);

// U = phi(y_1..y_{d-1}, S). The gradient, when supplied, returns the d
// partials (dphi/dy_1, ..., dphi/dy_{d-1}, dphi/dS).
struct FundamentalEquation {
  int extensive_count = 0;  // number of y variables, d - 1
  std::function<double(const Eigen::VectorXd& y, double s)> phi;
  std::function<Eigen::VectorXd(const Eigen::VectorXd& y, double s)> gradient;
  std::function<bool(const Eigen::VectorXd& y, double s)> domain;

  bool in_domain(const Eigen::VectorXd& y, double s) const {
    return !domain || domain(y, s);
  }
};

// Checks a supplied analytic gradient against central differences of phi
// on the given sample points; returns the worst relative mismatch.
double gradient_check(const FundamentalEquation& eq,
                      const std::vector<Eigen::VectorXd>& y_samples,
                      const std::vector<double>& s_samples);

// Equilibrium-state map (x = -grad_y phi, T = dphi/dS, y, S, U = phi),
// returned as a canonical chart point. Uses the analytic gradient when
// present, central differences otherwise.
Eigen::VectorXd state_equations(const FundamentalEquation& eq,
                                const Eigen::VectorXd& y, double s);

// Parametrized equilibrium submanifold: u = (y_1..y_{d-1}, S) -> chart point.
struct LegendrePatch {
  ContactChart chart;
  std::function<Eigen::VectorXd(const Eigen::VectorXd& u)> map;
  // Optional analytic tangent: column j is the pushforward of e_j.
  std::function<Eigen::MatrixXd(const Eigen::VectorXd& u)> tangent;
};

LegendrePatch make_legendre_patch(const ContactChart& chart,
                                  const FundamentalEquation& eq);

// Max |theta| over the d coordinate tangent directions of the patch at
// (y, S); near zero certifies that the patch is Legendre there.
double pullback_residual(const LegendrePatch& patch, const Eigen::VectorXd& y,
                         double s);

}  // namespace thermomech
