#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "thermomech/geometry.hpp"
#include "thermomech/thermo.hpp"

using namespace thermomech;
using Eigen::VectorXd;

namespace {

VectorXd vec(std::initializer_list<double> values) {
  VectorXd v(static_cast<Eigen::Index>(values.size()));
  int i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("contact form on the one-pair chart") {
  const ContactChart chart = body_chart();

  CHECK(contact_form(chart, {vec({2.0, 0.0, 0.0}), vec({0.0, 1.0, 0.0})}) ==
        doctest::Approx(-2.0));
  CHECK(contact_form(chart, {vec({2.0, 0.0, 0.0}), vec({0.0, 0.0, 1.0})}) ==
        doctest::Approx(1.0));
}

TEST_CASE("contact form on the gas chart") {
  const ContactChart chart = gas_chart();
  // base (P, T, V, S, U) = (5, 3, *, *, *), delta dV=2, dS=1, dU=4
  const VectorXd base = vec({5.0, 3.0, 1.0, 0.0, 1.0});
  const VectorXd delta = vec({0.0, 0.0, 2.0, 1.0, 4.0});
  CHECK(contact_form(chart, {base, delta}) == doctest::Approx(11.0));
}

TEST_CASE("contact form errors") {
  const ContactChart chart = body_chart();
  CHECK_THROWS_AS(
      contact_form(chart, {vec({2.0, 0.0}), vec({0.0, 1.0, 0.0})}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      contact_form(chart, {vec({-1.0, 0.0, 0.0}), vec({0.0, 1.0, 0.0})}),
      std::domain_error);
}

TEST_CASE("contact form is linear in the tangent") {
  const ContactChart chart = gas_chart();
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  std::uniform_real_distribution<double> temp(0.1, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    VectorXd base(5), v(5), w(5);
    for (int i = 0; i < 5; ++i) {
      base[i] = coef(rng);
      v[i] = coef(rng);
      w[i] = coef(rng);
    }
    base[1] = temp(rng);
    const double a = coef(rng), b = coef(rng);
    const double lhs = contact_form(chart, {base, a * v + b * w});
    const double rhs = a * contact_form(chart, {base, v}) +
                       b * contact_form(chart, {base, w});
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("composite chart sums the factor forms") {
  const ContactChart gas = gas_chart();
  const ContactChart container = body_chart({"T_c", "S_c", "U_c"});
  const ContactChart total = composite_chart(gas, container);

  CHECK(total.dim() == 8);
  CHECK(total.pair_count() == 3);

  VectorXd base(8), delta(8);
  base << 5.0, 3.0, 1.0, 0.0, 1.0, 2.0, 0.5, 1.0;
  delta << 0.1, 0.2, 2.0, 1.0, 4.0, 0.3, 0.7, 0.9;

  const double expected = (4.0 - 3.0 * 1.0 + 5.0 * 2.0)   // dU - T dS + P dV
                          + (0.9 - 2.0 * 0.7);            // dU_c - T_c dS_c
  CHECK(contact_form(total, {base, delta}) == doctest::Approx(expected));

  SUBCASE("tangent supported in one factor reduces to that factor") {
    VectorXd only_gas = delta;
    only_gas.tail(3).setZero();
    const double composite_value = contact_form(total, {base, only_gas});
    const double factor_value =
        contact_form(gas, {base.head(5), delta.head(5)});
    CHECK(composite_value == doctest::Approx(factor_value).epsilon(1e-14));
  }

  SUBCASE("split tangents add up") {
    VectorXd only_container = delta;
    only_container.head(5).setZero();
    VectorXd only_gas = delta;
    only_gas.tail(3).setZero();
    CHECK(contact_form(total, {base, delta}) ==
          doctest::Approx(contact_form(total, {base, only_gas}) +
                          contact_form(total, {base, only_container})));
  }
}

TEST_CASE("composite chart suffixes colliding names") {
  const ContactChart a = body_chart({"T", "S", "U"});
  const ContactChart b = body_chart({"T", "S", "U"});
  const ContactChart total = composite_chart(a, b);
  CHECK(total.names()[3] == "T_2");
  CHECK(total.names()[4] == "S_2");
  CHECK(total.names()[5] == "U_2");
}

TEST_CASE("degenerate charts are rejected") {
  CHECK_THROWS_AS(ContactChart::canonical(0, {"U"}), std::invalid_argument);
  CHECK_THROWS_AS(ContactChart::canonical(1, {"T", "S"}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ContactChart::canonical(1, {"T", "T", "U"}),
                  std::invalid_argument);
}

TEST_CASE("state equations of the constant-heat-capacity body") {
  BodyParams body;
  body.nu = 1.0;
  body.t0 = 1.0;
  body.s0 = 0.0;
  const FundamentalEquation eq = body_fundamental_equation(body);
  const VectorXd point = state_equations(eq, VectorXd(0), 0.0);
  REQUIRE(point.size() == 3);
  CHECK(point[0] == doctest::Approx(1.0));  // T
  CHECK(point[1] == doctest::Approx(0.0));  // S
  CHECK(point[2] == doctest::Approx(1.0));  // U
}

TEST_CASE("state equations of the ideal gas") {
  IdealGasParams gas;
  gas.n0r = 1.0;
  gas.alpha = 1.5;
  gas.s0 = 1.0;
  gas.t0 = 1.0;
  gas.v0 = 1.0;

  FundamentalEquation numeric = gas_fundamental_equation(gas);
  numeric.gradient = nullptr;  // exercise the finite-difference route

  for (double volume : {0.7, 1.3, 2.5})
    for (double entropy : {0.4, 1.0, 1.8}) {
      const VectorXd point = state_equations(numeric, vec({volume}), entropy);
      const double pressure = point[0];
      const double temperature = point[1];
      const double energy = point[4];
      CHECK(temperature ==
            doctest::Approx(energy / (gas.n0r * gas.alpha)).epsilon(1e-8));
      CHECK(pressure ==
            doctest::Approx(energy / (volume * gas.alpha)).epsilon(1e-8));

      // Inverting the log form of the entropy state equation recovers S.
      const double s_back =
          gas.s0 + gas.n0r * (gas.alpha * std::log(temperature / gas.t0) +
                              std::log(volume / gas.v0));
      CHECK(s_back == doctest::Approx(entropy).epsilon(1e-8));
    }
}

TEST_CASE("state equation errors") {
  IdealGasParams gas;
  const FundamentalEquation eq = gas_fundamental_equation(gas);
  CHECK_THROWS_AS(state_equations(eq, vec({-1.0}), 0.0), std::domain_error);
  CHECK_THROWS_AS(state_equations(eq, VectorXd(0), 0.0),
                  std::invalid_argument);

  FundamentalEquation cooling;
  cooling.extensive_count = 0;
  cooling.phi = [](const VectorXd&, double s) { return -s; };
  CHECK_THROWS_AS(state_equations(cooling, VectorXd(0), 1.0),
                  std::domain_error);
}

TEST_CASE("analytic gradients agree with central differences") {
  IdealGasParams gas;
  gas.alpha = 1.5;
  std::vector<VectorXd> volumes = {vec({0.6}), vec({1.0}), vec({2.0})};
  std::vector<double> entropies = {0.2, 1.0, 1.7};
  CHECK(gradient_check(gas_fundamental_equation(gas), volumes, entropies) <
        1e-5);

  BodyParams body;
  body.nu = 0.5;
  CHECK(gradient_check(body_fundamental_equation(body), {VectorXd(0)},
                       entropies) < 1e-5);
}

TEST_CASE("Legendre patches annihilate the contact form") {
  IdealGasParams gas;
  gas.alpha = 1.5;
  const ContactChart chart = gas_chart();

  const FundamentalEquation analytic = gas_fundamental_equation(gas);
  FundamentalEquation numeric = analytic;
  numeric.gradient = nullptr;

  const LegendrePatch exact = make_legendre_patch(chart, analytic);
  const LegendrePatch approx = make_legendre_patch(chart, numeric);

  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      const double volume = 0.5 + 0.2 * i;
      const double entropy = -0.5 + 0.2 * j;
      CHECK(pullback_residual(exact, vec({volume}), entropy) <= 1e-10);
      CHECK(pullback_residual(approx, vec({volume}), entropy) <= 1e-6);
    }

  BodyParams body;
  const LegendrePatch body_patch =
      make_legendre_patch(body_chart(), body_fundamental_equation(body));
  for (int j = 0; j < 10; ++j)
    CHECK(pullback_residual(body_patch, VectorXd(0), 0.5 + 0.1 * j) <= 1e-10);
}

TEST_CASE("perturbed parametrization is detected") {
  IdealGasParams gas;
  gas.alpha = 1.5;
  const LegendrePatch exact =
      make_legendre_patch(gas_chart(), gas_fundamental_equation(gas));

  const double eps = 1e-3;
  LegendrePatch bent;
  bent.chart = exact.chart;
  bent.map = [inner = exact.map, eps](const VectorXd& u) {
    VectorXd p = inner(u);
    p[1] += eps;  // shift the temperature off the equilibrium locus
    return p;
  };

  const double residual = pullback_residual(bent, vec({1.2}), 0.3);
  // dS/du is 1 along the entropy parameter, so the residual tracks eps.
  CHECK(residual == doctest::Approx(eps).epsilon(0.1));
}
