#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace thermomech::fd {

// Relative step sizes, scaled per coordinate by max(1, |x|).
// kFirst balances truncation against rounding for first derivatives of
// smooth functions; kSecond is deliberately larger and is used for the
// nested differences behind second derivatives, where the division by h^2
// amplifies rounding noise.
inline double first_step() {
  static const double h = std::cbrt(std::numeric_limits<double>::epsilon());
  return h;
}

inline double second_step() {
  static const double h =
      std::pow(std::numeric_limits<double>::epsilon(), 1.0 / 6.0);
  return h;
}

inline double scaled(double base, double x) {
  return base * std::max(1.0, std::abs(x));
}

// Central difference d/dx_i f(x).
inline double partial(const std::function<double(const Eigen::VectorXd&)>& f,
                      const Eigen::VectorXd& x, int i,
                      double base = first_step()) {
  const double h = scaled(base, x[i]);
  Eigen::VectorXd xp = x, xm = x;
  xp[i] += h;
  xm[i] -= h;
  return (f(xp) - f(xm)) / (2.0 * h);
}

inline Eigen::VectorXd gradient(
    const std::function<double(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& x, double base = first_step()) {
  Eigen::VectorXd g(x.size());
  for (int i = 0; i < x.size(); ++i) g[i] = partial(f, x, i, base);
  return g;
}

// Central-difference Jacobian of a vector-valued map, column per coordinate.
inline Eigen::MatrixXd jacobian(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& x, double base = first_step()) {
  Eigen::MatrixXd jac;
  for (int j = 0; j < x.size(); ++j) {
    const double h = scaled(base, x[j]);
    Eigen::VectorXd xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    const Eigen::VectorXd col = (f(xp) - f(xm)) / (2.0 * h);
    if (jac.size() == 0) jac.resize(col.size(), x.size());
    jac.col(j) = col;
  }
  return jac;
}

// Directional second derivative d^2/ds^2 f(x + s u) at s = 0.
inline Eigen::VectorXd second_directional(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& x, const Eigen::VectorXd& u,
    double base = second_step()) {
  const double h = base;
  return (f(x + h * u) - 2.0 * f(x) + f(x - h * u)) / (h * h);
}

// Finite-difference weights on an arbitrary node set (Fornberg's algorithm).
// Returns weights w such that sum_k w[k] f(nodes[k]) approximates the
// `order`-th derivative of f at x0.
inline std::vector<double> fornberg_weights(double x0,
                                            const std::vector<double>& nodes,
                                            int order) {
  const int n = static_cast<int>(nodes.size());
  std::vector<std::vector<double>> c(
      n, std::vector<double>(static_cast<size_t>(order) + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k)
        c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][static_cast<size_t>(order)];
  return w;
}

}  // namespace thermomech::fd
