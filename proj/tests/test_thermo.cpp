#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "thermomech/thermo.hpp"

using namespace thermomech;

TEST_CASE("gas state equations") {
  IdealGasParams gas;
  gas.n0r = 1.0;
  gas.alpha = 1.5;

  SUBCASE("figure parameters") {
    const GasState s = gas_state(gas, 25.0, 15.0);
    CHECK(s.pressure == doctest::Approx(5.0 / 3.0));
    CHECK(s.internal_energy == doctest::Approx(37.5));
  }

  SUBCASE("entropy vanishes at the reference state") {
    gas.s0 = 0.7;
    gas.t0 = 2.0;
    gas.v0 = 3.0;
    CHECK(gas_state(gas, 2.0, 3.0).entropy == doctest::Approx(0.7));
  }

  SUBCASE("round trip through the log form") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> pos(0.3, 8.0);
    for (int i = 0; i < 50; ++i) {
      const double temperature = pos(rng);
      const double volume = pos(rng);
      const GasState s = gas_state(gas, temperature, volume);
      const double t_back = s.internal_energy / (gas.alpha * gas.n0r);
      const double v_back =
          gas.v0 * std::exp((s.entropy - gas.s0) / gas.n0r) *
          std::pow(gas.t0 / t_back, gas.alpha);
      CHECK(t_back == doctest::Approx(temperature).epsilon(1e-10));
      CHECK(v_back == doctest::Approx(volume).epsilon(1e-10));
    }
  }

  SUBCASE("rejects nonpositive inputs") {
    CHECK_THROWS_AS(gas_state(gas, -1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(gas_state(gas, 1.0, 0.0), std::domain_error);
  }
}

TEST_CASE("adiabat constant") {
  IdealGasParams gas;
  gas.alpha = 1.5;

  CHECK(gas_adiabat_constant(gas, 1.0, 1.0) == doctest::Approx(1.0));

  SUBCASE("constant along an isoentrope") {
    const double t1 = 2.0, v1 = 1.5;
    const GasState s1 = gas_state(gas, t1, v1);
    for (double v2 : {0.8, 1.1, 3.0}) {
      // Equal entropy forces T^alpha V to be constant.
      const double t2 = t1 * std::pow(v1 / v2, 1.0 / gas.alpha);
      const GasState s2 = gas_state(gas, t2, v2);
      CHECK(s2.entropy == doctest::Approx(s1.entropy).epsilon(1e-12));
      const double k1 = gas_adiabat_constant(gas, s1.pressure, v1);
      const double k2 = gas_adiabat_constant(gas, s2.pressure, v2);
      CHECK(k2 == doctest::Approx(k1).epsilon(1e-10));
    }
  }

  SUBCASE("entropy offset changes the adiabat") {
    const double t = 2.0, v = 1.5;
    const GasState s1 = gas_state(gas, t, v);
    const GasState s2 = gas_state(gas, t, 2.0 * v);
    CHECK(s2.entropy - s1.entropy ==
          doctest::Approx(gas.n0r * std::log(2.0)).epsilon(1e-12));
    const double k1 = gas_adiabat_constant(gas, s1.pressure, v);
    const double k2 = gas_adiabat_constant(gas, s2.pressure, 2.0 * v);
    CHECK(k2 / k1 ==
          doctest::Approx(std::pow(2.0, gas.gamma() - 1.0)).epsilon(1e-12));
    CHECK(k1 != k2);
  }

  SUBCASE("gamma is derived consistently") {
    for (double alpha : {0.5, 1.0, 1.5, 2.5}) {
      IdealGasParams p;
      p.alpha = alpha;
      CHECK(p.gamma() > 1.0);
      CHECK(p.gamma() * p.alpha ==
            doctest::Approx(p.alpha + 1.0).epsilon(1e-15));
    }
  }
}

TEST_CASE("body state equations") {
  BodyParams body;
  body.t0 = 1.0;
  body.s0 = 0.0;

  SUBCASE("unit values") {
    body.nu = 1.0;
    const BodyState s = body_state(body, 1.0);
    CHECK(s.internal_energy == doctest::Approx(1.0));
    CHECK(s.entropy == doctest::Approx(0.0));
  }

  SUBCASE("figure heat capacity") {
    body.nu = 0.5;
    const BodyState s = body_state(body, 20.0);
    CHECK(s.internal_energy == doctest::Approx(10.0));
    CHECK(s.entropy == doctest::Approx(0.5 * std::log(20.0)));
  }

  SUBCASE("dU = T dS along a smooth temperature path") {
    body.nu = 0.8;
    const auto temperature = [](double t) { return 1.0 + 0.5 * std::sin(t); };
    const double h = 1e-5;
    for (double t = 0.3; t < 6.0; t += 0.7) {
      const BodyState plus = body_state(body, temperature(t + h));
      const BodyState minus = body_state(body, temperature(t - h));
      const double u_rate =
          (plus.internal_energy - minus.internal_energy) / (2.0 * h);
      const double s_rate = (plus.entropy - minus.entropy) / (2.0 * h);
      CHECK(std::abs(u_rate - temperature(t) * s_rate) <= 1e-8);
    }
  }

  SUBCASE("rejects nonpositive temperature") {
    CHECK_THROWS_AS(body_state(body, 0.0), std::domain_error);
  }
}

TEST_CASE("molar fundamental equation") {
  IdealGasParams gas;
  gas.n0r = 2.0;  // read as R for the molar form
  gas.alpha = 1.5;
  gas.t0 = 3.0;
  gas.s0 = 0.4;
  gas.v0 = 1.2;
  const double u0 = gas.n0r * gas.alpha * gas.t0;

  SUBCASE("reference point returns u0") {
    CHECK(gas_fundamental(gas, 1.0, gas.s0, gas.v0) == doctest::Approx(u0));
  }

  SUBCASE("agrees with the fused state equations at N = 1") {
    double worst = 0.0;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) {
        const double entropy = -0.5 + 0.4 * i;
        const double volume = 0.6 + 0.5 * j;
        const double u = gas_fundamental(gas, 1.0, entropy, volume);
        const double temperature = u / (gas.n0r * gas.alpha);
        const GasState s = gas_state(gas, temperature, volume);
        worst = std::max(worst,
                         std::abs(s.internal_energy - u) / std::abs(u));
        worst = std::max(worst, std::abs(s.entropy - entropy) /
                                    std::max(1.0, std::abs(entropy)));
      }
    CHECK(worst <= 1e-9);
  }

  SUBCASE("chemical potential changes sign at S = N R (1 + alpha)") {
    const double n = 1.0;
    const double s_star = n * gas.n0r * (1.0 + gas.alpha);
    const double lo = gas_chemical_potential(gas, n, s_star - 0.3, 1.0);
    const double hi = gas_chemical_potential(gas, n, s_star + 0.3, 1.0);
    CHECK(lo > 0.0);
    CHECK(hi < 0.0);
    CHECK(std::abs(gas_chemical_potential(gas, n, s_star, 1.0)) <= 1e-12);
  }

  SUBCASE("rejects nonpositive N or V") {
    CHECK_THROWS_AS(gas_fundamental(gas, 0.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(gas_fundamental(gas, 1.0, 1.0, -2.0), std::domain_error);
  }
}

TEST_CASE("first law along smooth gas paths") {
  IdealGasParams gas;
  gas.alpha = 1.5;
  const auto temperature = [](double t) { return 2.0 + 0.4 * std::sin(t); };
  const auto volume = [](double t) { return 1.5 + 0.5 * std::cos(0.7 * t); };
  const double h = 1e-5;
  for (double t = 0.2; t < 6.0; t += 0.5) {
    const GasState plus = gas_state(gas, temperature(t + h), volume(t + h));
    const GasState minus = gas_state(gas, temperature(t - h), volume(t - h));
    const GasState mid = gas_state(gas, temperature(t), volume(t));
    const double u_rate =
        (plus.internal_energy - minus.internal_energy) / (2.0 * h);
    const double s_rate = (plus.entropy - minus.entropy) / (2.0 * h);
    const double v_rate = (volume(t + h) - volume(t - h)) / (2.0 * h);
    CHECK(std::abs(u_rate - (temperature(t) * s_rate -
                             mid.pressure * v_rate)) <= 1e-6);
  }
}

TEST_CASE("isoentropic paths are exactly the constant-adiabat paths") {
  IdealGasParams gas;
  gas.alpha = 1.5;
  const double t0 = 2.0, v0 = 1.0;
  const GasState start = gas_state(gas, t0, v0);
  const double k0 = gas_adiabat_constant(gas, start.pressure, v0);

  for (double v = 0.5; v <= 3.0; v += 0.25) {
    // March along constant entropy and check the adiabat constant...
    const double t_iso = t0 * std::pow(v0 / v, 1.0 / gas.alpha);
    const GasState s = gas_state(gas, t_iso, v);
    CHECK(gas_adiabat_constant(gas, s.pressure, v) ==
          doctest::Approx(k0).epsilon(1e-9));
    CHECK(s.entropy == doctest::Approx(start.entropy).epsilon(1e-9));

    // ...then along the adiabat and check the entropy.
    const double p_adiabat = k0 * std::pow(v, -gas.gamma());
    const double t_adiabat = p_adiabat * v / gas.n0r;
    CHECK(gas_state(gas, t_adiabat, v).entropy ==
          doctest::Approx(start.entropy).epsilon(1e-9));
  }
}
