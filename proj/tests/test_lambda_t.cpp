#include <doctest.h>

#include <cmath>

#include "diracgap/gap.hpp"
#include "diracgap/lambda_t.hpp"

using namespace diracgap;

namespace {

Potential free_potential() { return Potential::tabulated({0.0, 1e6}, {0.0, 0.0}); }

RadialProfile gaussian_profile(double w) {
  return {[w](double r) { return std::exp(-r * r / (2 * w * w)); },
          [w](double r) { return -r / (w * w) * std::exp(-r * r / (2 * w * w)); }};
}

}  // namespace

TEST_CASE("free-case lambda_T reduces to the closed-form quadratic root") {
  PhysicalParams params(1.0);
  AngularChannel ch(-1);
  auto V = free_potential();
  auto phi = gaussian_profile(1.3);
  auto res = lambda_T(phi, V, params, ch, 40.0);
  // lambda * a = kinetic/(c^2 + lambda) + c^2 a  =>  lambda = sqrt(c^4 + k/a).
  double a = 0.0, k = 0.0;
  const int n = 4000;
  for (int i = 1; i <= n; ++i) {
    double r = 40.0 * i / n, dr = 40.0 / n;
    double f = phi.f(r), df = phi.df(r);
    a += f * f * r * r * dr;
    k += df * df * r * r * dr;
  }
  double expected = std::sqrt(1.0 + k / a);
  CHECK(res.value >= 1.0);
  CHECK(res.value == doctest::Approx(expected).epsilon(1e-5));
  CHECK(std::abs(res.residual) < 1e-10);
}

TEST_CASE("lambda_T is invariant under profile scaling") {
  PhysicalParams params(1.0);
  AngularChannel ch(-1);
  auto V = Potential::coulomb(0.5);
  auto phi = gaussian_profile(1.0);
  double base = lambda_T(phi, V, params, ch, 50.0).value;
  for (double t : {1e-3, 2.0, 1e3}) {
    RadialProfile scaled = {[&phi, t](double r) { return t * phi.f(r); },
                            [&phi, t](double r) { return t * phi.df(r); }};
    double got = lambda_T(scaled, V, params, ch, 50.0).value;
    CHECK(got == doctest::Approx(base).epsilon(1e-10));
  }
}

TEST_CASE("lambda_T at the exact Coulomb ground profile returns lambda_1") {
  // phi = r^{gamma-1} e^{-nu r} is the ground upper component; lambda^T
  // equals sqrt(1 - nu^2) there (the Hardy functional is tight).
  PhysicalParams params(1.0);
  AngularChannel ch(-1);
  const double nu = 0.5, gamma = std::sqrt(1.0 - nu * nu);
  auto V = Potential::coulomb(nu);
  RadialProfile phi = {
      [=](double r) { return std::pow(r, gamma - 1.0) * std::exp(-nu * r); },
      [=](double r) {
        return std::pow(r, gamma - 2.0) * (gamma - 1.0 - nu * r) * std::exp(-nu * r);
      }};
  auto res = lambda_T(phi, V, params, ch, 90.0, 1e-13);
  CHECK(res.value == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-8));
}

TEST_CASE("zero profile is rejected") {
  PhysicalParams params(1.0);
  AngularChannel ch(-1);
  auto V = Potential::coulomb(0.5);
  RadialProfile zero = {[](double) { return 0.0; }, [](double) { return 0.0; }};
  CHECK_THROWS_AS(lambda_T(zero, V, params, ch, 10.0), std::invalid_argument);
}

TEST_CASE("min_lambda_T agrees with the matrix root route") {
  PhysicalParams params(1.0);
  AngularChannel ch(-1);
  for (double nu : {0.3, 0.5}) {
    auto V = Potential::coulomb(nu);
    double rmax = suggest_rmax(V, params, ch, 1);
    auto basis = graded_radial_basis(120, rmax, 2, 1e-6);
    auto direct = solve_level(1, basis, V, params, ch);
    auto minimized = min_lambda_T(V, params, ch, basis);
    CHECK(minimized.converged);
    CHECK(std::abs(minimized.value - direct.lambda) < 1e-5);
    double exact = coulomb_dirac_level(nu, 1.0, -1, 1);
    CHECK(std::abs(minimized.value - exact) < 2e-6);
  }
}

TEST_CASE("min_lambda_T in the free case stays at the continuum edge") {
  PhysicalParams params(1.0);
  AngularChannel ch(-1);
  auto V = free_potential();
  auto basis = graded_radial_basis(60, 30.0, 2, 1e-5);
  MinLambdaTOptions opts;
  opts.max_iter = 400;
  auto res = min_lambda_T(V, params, ch, basis, opts);
  CHECK(res.value >= 1.0 - 1e-9);
}

TEST_CASE("optimizer non-convergence is reported, not thrown") {
  PhysicalParams params(1.0);
  AngularChannel ch(-1);
  auto V = Potential::coulomb(0.5);
  auto basis = graded_radial_basis(80, 60.0, 2, 1e-6);
  MinLambdaTOptions opts;
  opts.max_iter = 2;
  auto res = min_lambda_T(V, params, ch, basis, opts);
  CHECK_FALSE(res.converged);
  CHECK(std::isfinite(res.value));
}

TEST_CASE("basis-coefficient lambda_T matches the profile route") {
  PhysicalParams params(1.0);
  AngularChannel ch(-1);
  auto V = Potential::coulomb(0.5);
  auto basis = graded_radial_basis(100, 50.0, 2, 1e-6);
  // Coefficients of a smooth positive profile.
  Eigen::VectorXd y = Eigen::VectorXd::Zero(basis.size());
  const BasisQuadrature& q = basis.quadrature();
  for (std::size_t j = 0; j < q.x.size(); ++j) {
    double target = std::exp(-0.8 * q.x[j]);
    for (int a = 0; a <= basis.degree(); ++a) {
      int idx = q.first[j] + a;
      if (idx >= 0 && idx < basis.size()) y[idx] += q.w[j] * q.x[j] * q.x[j] * q.val(a, j) * target;
    }
  }
  RadialProfile phi = {[&](double r) { return basis.combination(y, r); },
                       [&](double r) { return basis.combination_deriv(y, r); }};
  double via_basis = lambda_T(basis, y, V, params, ch).value;
  double via_profile = lambda_T(phi, V, params, ch, basis.right()).value;
  CHECK(via_basis == doctest::Approx(via_profile).epsilon(1e-7));
}
