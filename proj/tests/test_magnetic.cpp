#include <doctest.h>

#include <cmath>

#include "diracgap/magnetic.hpp"

using namespace diracgap;

TEST_CASE("a_B0 closed form at z = 0 and asymptotics") {
  for (double B : {0.5, 1.0, 4.0})
    CHECK(a_B0(0.0, B) == doctest::Approx(std::sqrt(M_PI * B / 2.0)).epsilon(1e-10));
  CHECK(a_B0(0.0, 1.0) == doctest::Approx(1.2533141).epsilon(1e-7));
  // Large |z|: a ~ 1/|z| since the Gaussian weight has unit mass.
  CHECK(a_B0(1e4, 1.0) == doctest::Approx(1e-4).epsilon(1e-3));
  // Even, positive, decreasing in |z|.
  for (double z : {0.1, 0.7, 3.0, 25.0}) {
    CHECK(a_B0(-z, 1.3) == a_B0(z, 1.3));
    CHECK(a_B0(z, 1.3) > 0.0);
    CHECK(a_B0(z + 0.1, 1.3) < a_B0(z, 1.3));
    CHECK(a_B0(z, 1.3) < std::sqrt(M_PI * 1.3 / 2.0));
  }
}

TEST_CASE("lambda_B0 without coupling reduces to the quadratic root") {
  // nu -> 0: lambda a = k/(1 + lambda) + a with a = int f^2, k = int f'^2,
  // so lambda = sqrt(1 + k/a) >= 1.  Use a tiny nu and a unit gaussian.
  MagneticParams params(1e-12, 1.0);
  auto f = [](double z) { return std::exp(-0.5 * z * z); };
  auto df = [](double z) { return -z * std::exp(-0.5 * z * z); };
  auto res = lambda_B0(f, df, 30.0, params);
  // a = sqrt(pi), k = sqrt(pi)/2 for the unit gaussian on the line.
  double expected = std::sqrt(1.0 + 0.5);
  CHECK(res.value >= 1.0);
  CHECK(res.value == doctest::Approx(expected).epsilon(1e-8));
  CHECK(std::abs(res.residual) < 1e-10);
}

TEST_CASE("lambda_B0 is scaling invariant") {
  MagneticParams params(0.5, 1.0);
  auto f = [](double z) { return std::exp(-0.4 * z * z); };
  auto df = [](double z) { return -0.8 * z * std::exp(-0.4 * z * z); };
  double base = lambda_B0(f, df, 30.0, params).value;
  for (double t : {3.0, 1e-3}) {
    auto ft = [t, &f](double z) { return t * f(z); };
    auto dft = [t, &df](double z) { return t * df(z); };
    CHECK(lambda_B0(ft, dft, 30.0, params).value == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("lambda_B0 agrees between grids and rejects zero input") {
  MagneticParams params(0.5, 1.0);
  auto f = [](double z) { return std::exp(-0.5 * z * z); };
  auto df = [](double z) { return -z * std::exp(-0.5 * z * z); };
  double a = lambda_B0(f, df, 25.0, params).value;
  double b = lambda_B0(f, df, 50.0, params).value;  // doubled domain resolution
  CHECK(a == doctest::Approx(b).epsilon(1e-8));
  auto zero = [](double) { return 0.0; };
  CHECK_THROWS_AS(lambda_B0(zero, zero, 25.0, params), std::invalid_argument);
}

TEST_CASE("c0 is below every trial value and stable under refinement") {
  MagneticParams params(0.5, 1.0);
  auto basis = default_z_basis(1.0, 100, 3);
  auto res = minimize_c0(params, basis);
  CHECK(res.converged);
  auto f = [](double z) { return std::exp(-0.5 * z * z); };
  auto df = [](double z) { return -z * std::exp(-0.5 * z * z); };
  CHECK(res.c0 <= lambda_B0(f, df, basis.right(), params).value + 1e-12);
  CHECK(res.tail_mass < 1e-10);

  auto finer = minimize_c0(params, default_z_basis(1.0, 150, 3));
  CHECK(finer.c0 <= res.c0 + 1e-9);
}

TEST_CASE("minimizing profile is even in z") {
  MagneticParams params(0.7, 1.0);
  auto basis = default_z_basis(1.0, 100, 3);
  auto res = minimize_c0(params, basis);
  // Compare the reconstructed profile at +-z.
  for (double z : {0.3, 1.1, 3.7}) {
    double plus = basis.combination(res.coefficients, z);
    double minus = basis.combination(res.coefficients, -z);
    CHECK(plus == doctest::Approx(minus).epsilon(1e-6));
  }
}

TEST_CASE("c0 decreases with the field and with the coupling") {
  auto c0_of = [](double nu, double B) {
    MagneticParams p(nu, B);
    return minimize_c0(p, default_z_basis(B, 100, 3)).c0;
  };
  double a = c0_of(0.9, 1.0), b = c0_of(0.9, 10.0), c = c0_of(0.9, 100.0);
  CHECK(b <= a + 1e-9);
  CHECK(c <= b + 1e-9);
  // More attraction lowers the level at fixed B.
  CHECK(c0_of(0.6, 1.0) <= c0_of(0.3, 1.0) + 1e-9);
}

TEST_CASE("critical field at nu = 0.9 respects the literature bounds") {
  CriticalFieldOptions opts;
  opts.n_basis = 120;
  auto cf = critical_field(0.9, opts);
  CHECK(cf.headline == cf.B_upper);
  CHECK(cf.B_lower <= cf.B_upper);
  CHECK(cf.headline >= 0.75 / 0.81);  // paper lower bound 0.75 / nu^2
  double upper_bound = 18.0 * M_PI * 0.81 / std::pow(3.0 * 0.81 - 2.0, 2);
  CHECK(cf.headline <= upper_bound);
  CHECK_THROWS_AS(critical_field(0.0), std::invalid_argument);
  CHECK_THROWS_AS(critical_field(1.0), std::invalid_argument);
}

TEST_CASE("bracket midpoint trend moves toward pi as nu decreases") {
  CriticalFieldOptions opts;
  opts.n_basis = 100;
  auto a = critical_field(0.25, opts);
  auto b = critical_field(0.2, opts);
  double pa = 0.25 * std::log(a.bracket_mid());
  double pb = 0.2 * std::log(b.bracket_mid());
  CHECK(pb > pa);                       // increasing toward pi
  CHECK(std::abs(pb - M_PI) < 0.3 * M_PI);
  CHECK(pb < M_PI);
}
