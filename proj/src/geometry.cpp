#include "thermomech/geometry.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "thermomech/numdiff.hpp"

namespace thermomech {

ContactChart ContactChart::canonical(int pair_count,
                                     std::vector<std::string> names) {
  if (pair_count < 1)
    throw std::invalid_argument("contact chart needs at least one pair");
  const int n = 2 * pair_count + 1;
  if (static_cast<int>(names.size()) != n)
    throw std::invalid_argument("contact chart expects 2d+1 coordinate names");
  std::set<std::string> unique(names.begin(), names.end());
  if (static_cast<int>(unique.size()) != n)
    throw std::invalid_argument("contact chart coordinate names must be unique");

  ContactChart chart;
  chart.names_ = std::move(names);
  const int d = pair_count;
  chart.pairs_.push_back({d - 1, 2 * d - 1, -1.0, true});  // -T dS
  for (int i = 0; i < d - 1; ++i)
    chart.pairs_.push_back({i, d + i, 1.0, false});  // +x_i dy_i
  chart.energy_ = {2 * d};
  return chart;
}

int ContactChart::temperature_index() const {
  for (const auto& p : pairs_)
    if (p.temperature) return p.coeff;
  throw std::logic_error("chart has no temperature pair");
}

int ContactChart::entropy_index() const {
  for (const auto& p : pairs_)
    if (p.temperature) return p.diff;
  throw std::logic_error("chart has no temperature pair");
}

int ContactChart::index_of(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

double contact_form(const ContactChart& chart, const TangentThermo& v) {
  if (v.base.size() != chart.dim() || v.delta.size() != chart.dim())
    throw std::invalid_argument("tangent dimensions do not match chart");
  for (const auto& p : chart.pairs())
    if (p.temperature && v.base[p.coeff] <= 0.0)
      throw std::domain_error("contact form requires positive temperature");

  double value = 0.0;
  for (int u : chart.energy_indices()) value += v.delta[u];
  for (const auto& p : chart.pairs())
    value += p.sign * v.base[p.coeff] * v.delta[p.diff];
  return value;
}

ContactChart composite_chart(const ContactChart& a, const ContactChart& b) {
  ContactChart chart;
  chart.names_ = a.names_;
  std::set<std::string> used(a.names_.begin(), a.names_.end());
  for (const auto& name : b.names_) {
    std::string candidate = name;
    for (int k = 2; used.count(candidate); ++k)
      candidate = name + "_" + std::to_string(k);
    used.insert(candidate);
    chart.names_.push_back(candidate);
  }

  chart.pairs_ = a.pairs_;
  chart.energy_ = a.energy_;
  const int offset = a.dim();
  for (auto p : b.pairs_) {
    p.coeff += offset;
    p.diff += offset;
    chart.pairs_.push_back(p);
  }
  for (int u : b.energy_) chart.energy_.push_back(u + offset);
  return chart;
}

namespace {

Eigen::VectorXd phi_gradient(const FundamentalEquation& eq,
                             const Eigen::VectorXd& y, double s) {
  if (eq.gradient) return eq.gradient(y, s);
  const int d = eq.extensive_count + 1;
  Eigen::VectorXd u(d);
  u.head(eq.extensive_count) = y;
  u[d - 1] = s;
  const auto f = [&eq](const Eigen::VectorXd& v) {
    return eq.phi(v.head(v.size() - 1), v[v.size() - 1]);
  };
  return fd::gradient(f, u);
}

}  // namespace

double gradient_check(const FundamentalEquation& eq,
                      const std::vector<Eigen::VectorXd>& y_samples,
                      const std::vector<double>& s_samples) {
  if (!eq.gradient)
    throw std::invalid_argument("gradient_check needs an analytic gradient");
  double worst = 0.0;
  for (const auto& y : y_samples)
    for (double s : s_samples) {
      if (!eq.in_domain(y, s)) continue;
      const Eigen::VectorXd analytic = eq.gradient(y, s);
      FundamentalEquation numeric = eq;
      numeric.gradient = nullptr;
      const Eigen::VectorXd fd_grad = phi_gradient(numeric, y, s);
      for (int i = 0; i < analytic.size(); ++i) {
        const double scale = std::max(1.0, std::abs(analytic[i]));
        worst = std::max(worst, std::abs(analytic[i] - fd_grad[i]) / scale);
      }
    }
  return worst;
}

Eigen::VectorXd state_equations(const FundamentalEquation& eq,
                                const Eigen::VectorXd& y, double s) {
  if (y.size() != eq.extensive_count)
    throw std::invalid_argument("state_equations: wrong number of y values");
  if (!eq.in_domain(y, s))
    throw std::domain_error("state_equations: point outside phi domain");

  const Eigen::VectorXd grad = phi_gradient(eq, y, s);
  const int d = eq.extensive_count + 1;
  const double temperature = grad[d - 1];
  if (temperature <= 0.0)
    throw std::domain_error("state_equations: computed temperature not positive");

  Eigen::VectorXd point(2 * d + 1);
  point.head(d - 1) = -grad.head(d - 1);
  point[d - 1] = temperature;
  point.segment(d, d - 1) = y;
  point[2 * d - 1] = s;
  point[2 * d] = eq.phi(y, s);
  return point;
}

LegendrePatch make_legendre_patch(const ContactChart& chart,
                                  const FundamentalEquation& eq) {
  if (chart.pair_count() != eq.extensive_count + 1)
    throw std::invalid_argument("chart and fundamental equation disagree on d");

  LegendrePatch patch;
  patch.chart = chart;
  patch.map = [eq](const Eigen::VectorXd& u) {
    return state_equations(eq, u.head(u.size() - 1), u[u.size() - 1]);
  };
  if (eq.gradient) {
    const int d = eq.extensive_count + 1;
    auto map = patch.map;
    patch.tangent = [eq, map, d](const Eigen::VectorXd& u) {
      Eigen::MatrixXd jac = fd::jacobian(map, u);
      // The (y, S, U) rows are known exactly; only the contact form's
      // coefficient rows (x, T) are left to the finite differences.
      jac.middleRows(d, d).setZero();
      for (int j = 0; j < d - 1; ++j) jac(d + j, j) = 1.0;
      jac(2 * d - 1, d - 1) = 1.0;
      jac.row(2 * d) = eq.gradient(u.head(d - 1), u[d - 1]).transpose();
      return jac;
    };
  }
  return patch;
}

double pullback_residual(const LegendrePatch& patch, const Eigen::VectorXd& y,
                         double s) {
  Eigen::VectorXd u(y.size() + 1);
  u.head(y.size()) = y;
  u[y.size()] = s;

  const Eigen::VectorXd base = patch.map(u);
  const Eigen::MatrixXd jac =
      patch.tangent ? patch.tangent(u) : fd::jacobian(patch.map, u);

  double worst = 0.0;
  for (int j = 0; j < jac.cols(); ++j) {
    const double theta = contact_form(patch.chart, {base, jac.col(j)});
    worst = std::max(worst, std::abs(theta));
  }
  return worst;
}

}  // namespace thermomech
