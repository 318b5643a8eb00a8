#include <doctest.h>

#include <cmath>

#include "diracgap/bessel_transform.hpp"
#include "diracgap/errors.hpp"
#include "diracgap/hardy.hpp"
#include "diracgap/quadrature.hpp"

using namespace diracgap;

namespace {

std::vector<double> uniform_breaks(double rmax, int cells) {
  std::vector<double> pts(cells + 1);
  for (int i = 0; i <= cells; ++i) pts[i] = rmax * i / cells;
  return pts;
}

RadialSpinor dilated(const RadialSpinor& psi, double t) {
  RadialSpinor out = psi;
  auto scale = [t](ChannelProfile& p) {
    auto f = p.f, df = p.df;
    double amp = std::pow(t, 1.5);
    p.f = [=](double r) { return amp * f(t * r); };
    p.df = [=](double r) { return amp * t * df(t * r); };
    p.extent /= t;
    p.feature_scale /= t;
    p.breakpoints.clear();
  };
  scale(out.upper);
  scale(out.lower);
  return out;
}

}  // namespace

TEST_CASE("spherical Bessel transforms match closed forms") {
  // T0[e^{-r^2/2}](p) = e^{-p^2/2}; T1[r e^{-r^2/2}](p) = p e^{-p^2/2}.
  RadialFilonTable g0([](double r) { return std::exp(-0.5 * r * r); }, uniform_breaks(20, 120));
  RadialFilonTable g1([](double r) { return r * std::exp(-0.5 * r * r); },
                      uniform_breaks(20, 120));
  for (double p : {1e-4, 0.05, 0.7, 2.0, 5.0}) {
    CHECK(g0.transform(0, p) == doctest::Approx(std::exp(-0.5 * p * p)).epsilon(1e-11));
    CHECK(g1.transform(1, p) == doctest::Approx(p * std::exp(-0.5 * p * p)).epsilon(1e-11));
  }
  // T0[e^{-r}](p) = sqrt(2/pi) 2/(1+p^2)^2, including far into the tail.
  RadialFilonTable ex([](double r) { return std::exp(-r); }, uniform_breaks(45, 200));
  for (double p : {1e-4, 1.0, 10.0, 100.0, 3000.0}) {
    double expect = std::sqrt(2.0 / M_PI) * 2.0 / std::pow(1.0 + p * p, 2);
    CHECK(ex.transform(0, p) == doctest::Approx(expect).epsilon(1e-7));
  }
}

TEST_CASE("transform tables are self-validating under resolution doubling") {
  auto psi = make_test_spinor(21, true);
  RadialFilonTable coarse(psi.upper.f, uniform_breaks(psi.upper.extent, 60));
  RadialFilonTable fine(psi.upper.f, uniform_breaks(psi.upper.extent, 120));
  for (double p : {0.3, 3.0, 30.0}) {
    double a = coarse.transform(0, p), b = fine.transform(0, p);
    CHECK(std::abs(a - b) <= 1e-9 * std::max(std::abs(b), 1e-6));
  }
}

TEST_CASE("momentum-space norm matches the position norm (Parseval)") {
  auto psi = make_test_spinor(3, true);
  double rmax = std::max(psi.upper.extent, psi.lower.extent);
  double pos = integrate_adaptive(
      [&](double r) {
        double fu = psi.upper.f(r), fl = psi.lower.f(r);
        return (fu * fu + fl * fl) * r * r;
      },
      0.0, rmax, 1e-12);
  RadialFilonTable up(psi.upper.f, uniform_breaks(psi.upper.extent, 120));
  RadialFilonTable low(psi.lower.f, uniform_breaks(psi.lower.extent, 120));
  double mom = integrate_adaptive(
      [&](double p) {
        double a = up.transform(0, p), b = low.transform(1, p);
        return (a * a + b * b) * p * p;
      },
      0.0, 60.0, 1e-11);
  CHECK(mom == doctest::Approx(pos).epsilon(1e-7));
}

TEST_CASE("kato inequality on seeded spinors") {
  PhysicalParams params(1.0);
  auto psi = make_test_spinor(5, false);
  auto rep = check_kato(psi, params);
  CHECK(rep.constant == doctest::Approx(M_PI / 2.0));
  CHECK(rep.margin > 0.0);
  CHECK(rep.margin >= -1e-10 * rep.rhs);
}

TEST_CASE("kato on the zero function returns zeros") {
  PhysicalParams params(1.0);
  RadialSpinor zero;
  zero.upper.l = 0;
  zero.upper.f = [](double) { return 0.0; };
  zero.upper.df = [](double) { return 0.0; };
  zero.lower.l = 1;
  zero.lower.f = [](double) { return 0.0; };
  zero.lower.df = [](double) { return 0.0; };
  auto rep = check_kato(zero, params);
  CHECK(rep.lhs == 0.0);
  CHECK(rep.rhs == 0.0);
  CHECK(rep.margin == 0.0);
}

TEST_CASE("kato two-sided dilation invariance") {
  PhysicalParams params(1.0);
  auto psi = make_test_spinor(7, false);
  auto base = check_kato(psi, params);
  for (double t : {0.5, 2.0}) {
    auto rep = check_kato(dilated(psi, t), params);
    CHECK(rep.lhs / rep.rhs == doctest::Approx(base.lhs / base.rhs).epsilon(1e-10));
  }
}

TEST_CASE("tix inequality for projected spinors") {
  PhysicalParams params(1.0);
  for (std::uint64_t seed : {2ull, 9ull, 14ull}) {
    for (int sign : {1, -1}) {
      auto psi = make_test_spinor(seed, true);
      psi.projected = sign;
      auto rep = check_tix(psi, params);
      CHECK(rep.hypothesis_ok);
      CHECK(rep.constant == doctest::Approx(0.5 * (M_PI / 2.0 + 2.0 / M_PI)));
      CHECK(rep.margin >= -1e-10 * rep.rhs);
      CHECK(rep.lhs > 0.0);
    }
  }
}

TEST_CASE("tix flags unprojected input as hypothesis-unmet") {
  PhysicalParams params(1.0);
  auto psi = make_test_spinor(4, true);
  auto rep = check_tix(psi, params);
  CHECK_FALSE(rep.hypothesis_ok);
  CHECK(rep.note.find("hypothesis-unmet") != std::string::npos);
}

TEST_CASE("dirac-hardy inequality and its tight profile") {
  // Unit gaussian at nu = 1.
  ChannelProfile gauss;
  gauss.l = 0;
  gauss.extent = 16.0;
  gauss.feature_scale = 1.0;
  gauss.f = [](double r) { return std::exp(-0.5 * r * r); };
  gauss.df = [](double r) { return -r * std::exp(-0.5 * r * r); };
  auto rep1 = check_hardy_dirac(gauss, -1, 1.0);
  CHECK(rep1.id == "Hardynu1");
  CHECK(rep1.margin > 0.0);

  // The exact Coulomb ground profile makes the nu < 1 inequality tight.
  const double nu = 0.5, gamma = std::sqrt(0.75);
  ChannelProfile ground;
  ground.l = 0;
  ground.extent = 90.0;
  ground.feature_scale = 0.5;
  ground.f = [=](double r) { return std::pow(r, gamma - 1.0) * std::exp(-nu * r); };
  ground.df = [=](double r) {
    return std::pow(r, gamma - 2.0) * (gamma - 1.0 - nu * r) * std::exp(-nu * r);
  };
  auto rep2 = check_hardy_dirac(ground, -1, nu);
  CHECK(rep2.id == "Hardynubis");
  CHECK(std::abs(rep2.margin) <= 1e-6 * rep2.rhs);

  CHECK_THROWS_AS(check_hardy_dirac(gauss, -1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(check_hardy_dirac(gauss, -1, 1.2), std::invalid_argument);
}

TEST_CASE("nu -> 1 limit of the coulomb-dirac inequality is consistent") {
  // gamma = sqrt(1 - nu^2) vanishes like sqrt(1 - nu), so the approach to
  // the nu = 1 form is O(sqrt(1 - nu)).
  auto phi = make_test_profile(FamilyKind::Gaussian, 0, 77);
  auto near1 = check_hardy_dirac(phi, -1, 1.0 - 1e-12);
  auto at1 = check_hardy_dirac(phi, -1, 1.0);
  CHECK(near1.rhs == doctest::Approx(at1.rhs).epsilon(1e-5));
  CHECK(near1.lhs == doctest::Approx(at1.lhs).epsilon(1e-5));
}

TEST_CASE("dilation-invariant pair") {
  auto phi = make_test_profile(FamilyKind::Gaussian, 0, 13);
  auto [homog, classical] = check_dilation_hardy(phi, -1);
  CHECK(homog.margin > 0.0);
  CHECK(classical.margin > 0.0);
  CHECK(classical.constant == doctest::Approx(0.25));
  // Dilation invariance of the homogeneous ratio.
  RadialSpinor wrap;
  wrap.upper = phi;
  for (double t : {0.5, 2.0}) {
    auto scaled = dilated(wrap, t);
    auto [h2, c2] = check_dilation_hardy(scaled.upper, -1);
    CHECK(h2.lhs / h2.rhs == doctest::Approx(homog.lhs / homog.rhs).epsilon(1e-10));
    CHECK(c2.lhs / c2.rhs == doctest::Approx(classical.lhs / classical.rhs).epsilon(1e-10));
  }
}

TEST_CASE("classical hardy constant is approached by the extremal family") {
  double r1 = classical_hardy_extremal_ratio(0.05);
  double r2 = classical_hardy_extremal_ratio(0.01);
  CHECK(std::abs(r2 - 0.25) < 0.05 * 0.25);
  CHECK(std::abs(r2 - 0.25) < std::abs(r1 - 0.25));  // monotone approach
  CHECK(r2 == doctest::Approx(0.25 + 0.01 * 0.01).epsilon(1e-3));
}

TEST_CASE("families are reproducible from the seed") {
  PhysicalParams params(1.0);
  HardySuiteOptions opts;
  opts.count = 3;
  opts.seed = 42;
  auto a = run_hardy_family("Hardyclass", opts, params);
  auto b = run_hardy_family("Hardyclass", opts, params);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].lhs == b[i].lhs);
    CHECK(a[i].rhs == b[i].rhs);
    CHECK(a[i].seed == b[i].seed);
  }
}

TEST_CASE("small family sweep has no violations") {
  PhysicalParams params(1.0);
  HardySuiteOptions opts;
  opts.count = 12;
  opts.seed = 5;
  for (const auto& id : hardy_inequality_ids()) {
    auto reports = run_hardy_family(id, opts, params);
    for (const auto& rep : reports) {
      if (!rep.hypothesis_ok) continue;
      CHECK(rep.margin >= -1e-10 * rep.rhs);
    }
  }
}
