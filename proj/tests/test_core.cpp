#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>

#include "diracgap/dirac.hpp"
#include "diracgap/potential.hpp"
#include "diracgap/quadrature.hpp"
#include "diracgap/radial.hpp"

using namespace diracgap;

TEST_CASE("anticommutation relations hold exactly") {
  auto beta = DiracMatrices::beta();
  for (int k = 1; k <= 3; ++k) {
    auto ak = DiracMatrices::alpha(k);
    CHECK((ak * beta + beta * ak).norm() == 0.0);
    CHECK((ak - ak.adjoint()).norm() == 0.0);
    for (int l = 1; l <= 3; ++l) {
      auto al = DiracMatrices::alpha(l);
      Eigen::Matrix4cd anti = ak * al + al * ak;
      Eigen::Matrix4cd expected = Eigen::Matrix4cd::Zero();
      if (k == l) expected = 2.0 * Eigen::Matrix4cd::Identity();
      CHECK((anti - expected).norm() == 0.0);
    }
  }
  CHECK((beta * beta - Eigen::Matrix4cd::Identity()).norm() == 0.0);
}

TEST_CASE("free projector at p = 0 is (beta + 1)/2") {
  PhysicalParams params(1.0);
  auto P = free_dirac_projector(Eigen::Vector3d::Zero(), params, +1);
  Eigen::Matrix4cd expected = Eigen::Matrix4cd::Zero();
  expected(0, 0) = expected(1, 1) = 1.0;
  CHECK((P - expected).norm() < 1e-15);
}

TEST_CASE("free projector properties at random momenta") {
  PhysicalParams params(1.37);
  std::uint64_t state = 42;
  auto next = [&]() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return double(state >> 11) * 0x1.0p-53 * 4.0 - 2.0;
  };
  for (int trial = 0; trial < 25; ++trial) {
    Eigen::Vector3d p(next(), next(), next());
    auto Pp = free_dirac_projector(p, params, +1);
    auto Pm = free_dirac_projector(p, params, -1);
    CHECK((Pp * Pp - Pp).norm() < 1e-14);
    CHECK((Pp + Pm - Eigen::Matrix4cd::Identity()).norm() < 1e-14);
    CHECK((Pp - Pp.adjoint()).norm() < 1e-14);
    CHECK(std::abs(Pp.trace().real() - 2.0) < 1e-13);
    // P+ D P+ = +E P+ on the range of P+.
    double energy = std::sqrt(params.c * params.c * p.squaredNorm() + std::pow(params.c, 4));
    auto D = free_dirac_symbol(p, params);
    CHECK((Pp * D * Pp - energy * Pp).norm() < 1e-12);
  }
}

TEST_CASE("projector at p = (1,0,0), c = 1 has eigenvalues {0,0,1,1}") {
  PhysicalParams params(1.0);
  auto P = free_dirac_projector(Eigen::Vector3d(1, 0, 0), params, +1);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(P);
  auto ev = es.eigenvalues();
  CHECK(ev[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(ev[1] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(ev[2] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ev[3] == doctest::Approx(1.0).epsilon(1e-14));
  // Entrywise cross-check against the closed form (D + E)/2E.
  double energy = std::sqrt(2.0);
  Eigen::Matrix4cd expected =
      (free_dirac_symbol(Eigen::Vector3d(1, 0, 0), params) +
       energy * Eigen::Matrix4cd::Identity()) /
      (2.0 * energy);
  CHECK((P - expected).norm() < 1e-15);
}

TEST_CASE("coulomb potential values and singularity") {
  auto V = Potential::coulomb(1.0);
  CHECK(V(2.0) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(V(1e6) == doctest::Approx(-1e-6).epsilon(1e-12));
  CHECK_THROWS_AS(V(0.0), SingularEvaluation);
  CHECK(V.K1() == 0.0);
  CHECK(V.K2() == 0.0);
}

TEST_CASE("regularized coulomb clamps at delta") {
  auto V = Potential::regularized_coulomb(1.0, 0.1);
  CHECK(V(0.0) == doctest::Approx(-10.0));
  CHECK(V(0.05) == doctest::Approx(-10.0));
  CHECK(V(1.0) == doctest::Approx(-1.0));
}

TEST_CASE("tabulated potential interpolates; oracle is the source formula") {
  // Samples of -0.5 / max(r, 0.1) on a fine grid.
  std::vector<double> r, v;
  for (int i = 0; i <= 400; ++i) {
    double ri = 20.0 * i / 400;
    r.push_back(ri);
    v.push_back(-0.5 / std::max(ri, 0.1));
  }
  auto V = Potential::tabulated(r, v);
  CHECK(V(0.05) == doctest::Approx(-5.0).epsilon(1e-12));  // flat region: exact
  for (double q : {0.37, 1.234, 7.77})
    CHECK(V(q) == doctest::Approx(-0.5 / std::max(q, 0.1)).epsilon(1e-2));
  // Beyond the table the value decays like 1/r towards zero.
  CHECK(std::abs(V(1e5)) < 1e-5);
  CHECK_THROWS_AS(Potential::tabulated({1.0, 1.0}, {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("tabulated potential file round trip") {
  std::string path = "test_potential.txt";
  {
    std::ofstream out(path);
    out.precision(17);
    out << "# radius value\n";
    for (int i = 0; i <= 50; ++i) {
      double ri = 0.1 + i * 0.2;
      out << ri << " " << -1.0 / ri << "\n";
    }
  }
  auto V = Potential::from_file(path);
  CHECK(V(1.1) == doctest::Approx(-1.0 / 1.1).epsilon(1e-4));
  CHECK(V.nu() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("radial sigma gradient") {
  // kappa = -1: the 1/r term drops.
  CHECK(radial_sigma_grad(-1, std::exp(-1.0), -std::exp(-1.0), 1.0) ==
        doctest::Approx(-std::exp(-1.0)).epsilon(1e-15));
  // kappa = +1, f = r at r = 1: f' + 2f/r = 3.
  CHECK(radial_sigma_grad(1, 1.0, 1.0, 1.0) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK_THROWS_AS(radial_sigma_grad(1, 1.0, 1.0, 0.0), SingularEvaluation);
  CHECK(radial_sigma_grad(-1, 1.0, 1.0, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("gauss rules integrate polynomials exactly") {
  for (int n : {2, 4, 6, 8}) {
    // x^{2n-1} over [0, 1] equals 1/(2n).
    int pw = 2 * n - 1;
    double got = integrate_gauss([pw](double x) { return std::pow(x, pw); }, 0.0, 1.0, n);
    CHECK(got == doctest::Approx(1.0 / (pw + 1)).epsilon(1e-14));
  }
}

TEST_CASE("adaptive quadrature handles a sharp feature") {
  double got = integrate_adaptive([](double x) { return std::exp(-100.0 * x * x); }, -3.0, 5.0,
                                  1e-13);
  CHECK(got == doctest::Approx(std::sqrt(M_PI) / 10.0).epsilon(1e-12));
}

TEST_CASE("graded quadrature integrates an endpoint singularity") {
  // int_0^1 r^{-1/2} dr = 2.
  double got = integrate_graded_left([](double r) { return 1.0 / std::sqrt(r); }, 0.0, 1.0,
                                     1e-14, 240, 12);
  CHECK(got == doctest::Approx(2.0).epsilon(1e-8));
}
