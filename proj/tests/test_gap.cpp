#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "diracgap/errors.hpp"
#include "diracgap/gap.hpp"
#include "diracgap/quadrature.hpp"
#include "oracles/radial_dirac_fd.hpp"

using namespace diracgap;

namespace {
const double kRoot3Over2 = std::sqrt(3.0) / 2.0;  // sqrt(c^4 - nu^2 c^2) at nu=0.5, c=1
}

TEST_CASE("free assembly at lambda = 0 reduces to the H1 form") {
  PhysicalParams params(1.0);
  AngularChannel ch(-1);
  auto basis = graded_radial_basis(24, 12.0, 2, 1e-4);
  auto V0 = Potential::regularized_coulomb(1e-14, 1.0);  // numerically zero potential
  auto A = assemble_gap_matrix(0.0, basis, V0, params, ch);
  // Entries equal int (phi_i' phi_j' + phi_i phi_j) r^2 dr: positive definite.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A.entries, Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues()[0] > 0.0);
  // Spot check diagonal entries against an independent adaptive quadrature
  // restricted to the spline support.
  const auto& bp = basis.breakpoints();
  const int L = int(bp.size()) - 1;
  for (int i : {0, 7, 15}) {
    double lo = bp[std::max(0, i + 1 - basis.degree())];
    double hi = bp[std::min(L, i + 2)];
    double expected = integrate_adaptive(
        [&](double r) {
          double f = basis.value(i, r), df = basis.deriv(i, r);
          return (df * df + f * f) * r * r;
        },
        lo, hi, 1e-13);
    CHECK(A.entries(i, i) == doctest::Approx(expected).epsilon(1e-7));
  }
}

TEST_CASE("assembled matrix is symmetric and banded") {
  PhysicalParams params(1.0);
  AngularChannel ch(1);
  auto V = Potential::coulomb(0.5);
  for (int d : {2, 3}) {
    auto basis = graded_radial_basis(30, 40.0, d, 1e-5);
    auto A = assemble_gap_matrix(0.3, basis, V, params, ch).entries;
    CHECK((A - A.transpose()).norm() <= 1e-13 * A.norm());
    for (int i = 0; i < A.rows(); ++i)
      for (int j = 0; j < A.cols(); ++j)
        if (std::abs(i - j) > d) CHECK(A(i, j) == 0.0);
  }
}

TEST_CASE("single-bump entry matches an independent adaptive quadrature") {
  PhysicalParams params(1.0);
  AngularChannel ch(-1);
  auto V = Potential::coulomb(0.5);
  SplineBasis basis({0.0, 1.7, 4.0}, 2, SplineBasis::Measure::RadialR2);
  REQUIRE(basis.size() == 2);
  const double lambda = 0.8;
  auto A = assemble_gap_matrix(lambda, basis, V, params, ch).entries;
  for (int i : {0, 1}) {
    double expected = integrate_adaptive(
        [&](double r) {
          double f = basis.value(i, r), df = basis.deriv(i, r);
          double v = -0.5 / r;
          return (df * df / (lambda + 1.0 - v) + (v + 1.0 - lambda) * f * f) * r * r;
        },
        1e-30, basis.right(), 1e-13);
    CHECK(A(i, i) == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("Loewner monotonicity in lambda") {
  PhysicalParams params(1.0);
  AngularChannel ch(-1);
  auto V = Potential::coulomb(0.5);
  auto basis = graded_radial_basis(40, 30.0, 2, 1e-5);
  GapAssembler assembler(basis, V, params, ch);
  auto A1 = assembler.matrix(0.1);
  auto A2 = assembler.matrix(0.6);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A1 - A2, Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues()[0] >= -1e-12 * A1.norm());
}

TEST_CASE("gap collapse detected for lambda beyond the bracket") {
  PhysicalParams params(1.0);
  AngularChannel ch(-1);
  // A potential with positive part K2 = 0.5 collapses at lambda close to -c^2 + K2.
  std::vector<double> r, v;
  for (int i = 0; i <= 100; ++i) {
    double ri = 0.1 + 0.4 * i;
    r.push_back(ri);
    v.push_back(0.5 * std::exp(-0.1 * ri));
  }
  auto V = Potential::tabulated(r, v);
  auto basis = graded_radial_basis(20, 30.0, 2, 1e-4);
  CHECK_THROWS_AS(assemble_gap_matrix(-0.6, basis, V, params, ch), GapCollapse);
}

TEST_CASE("kth matrix eigenvalue basics") {
  Eigen::MatrixXd D = Eigen::Vector3d(3.0, 1.0, 2.0).asDiagonal();
  CHECK(kth_matrix_eigenvalue(D, 1) == doctest::Approx(1.0));
  CHECK(kth_matrix_eigenvalue(D, 2) == doctest::Approx(2.0));
  CHECK(kth_matrix_eigenvalue(D, 3) == doctest::Approx(3.0));
  Eigen::MatrixXd I = Eigen::MatrixXd::Identity(5, 5);
  for (int k = 1; k <= 5; ++k) CHECK(kth_matrix_eigenvalue(I, k) == doctest::Approx(1.0));
  CHECK_THROWS_AS(kth_matrix_eigenvalue(I, 0), std::out_of_range);
  CHECK_THROWS_AS(kth_matrix_eigenvalue(I, 6), std::out_of_range);
}

TEST_CASE("kth eigenvalue matches the inertia-count bisection oracle") {
  // Deterministic pseudo-random symmetric 8x8.
  std::uint64_t state = 7;
  auto next = [&]() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return double(state >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  };
  const int n = 8;
  std::vector<std::vector<double>> A(n, std::vector<double>(n));
  Eigen::MatrixXd M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double v = next();
      A[i][j] = A[j][i] = v;
      M(i, j) = M(j, i) = v;
    }
  for (int k = 1; k <= n; ++k) {
    // Oracle: bisection on the inertia count of A - sigma I.
    double lo = -10.0, hi = 10.0;
    for (int it = 0; it < 120; ++it) {
      double mid = 0.5 * (lo + hi);
      (oracle::inertia_count_below(A, mid) >= k ? hi : lo) = mid;
    }
    CHECK(kth_matrix_eigenvalue(M, k) == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-10));
  }
}

TEST_CASE("coulomb ground state at nu = 0.5") {
  PhysicalParams params(1.0);
  AngularChannel ch(-1);
  auto V = Potential::coulomb(0.5);
  auto basis = graded_radial_basis(200, 60.0, 2, 1e-6);
  auto res = solve_level(1, basis, V, params, ch);
  CHECK(std::abs(res.lambda - kRoot3Over2) / kRoot3Over2 < 1e-6);
  CHECK(std::abs(res.mu_residual) < 1e-8);
  CHECK(res.lambda > -1.0);
  CHECK(res.lambda < 1.0);
  CHECK(res.history.size() >= 3);
  // mu_k decreases along recorded history when sorted by lambda.
  auto hist = res.history;
  std::sort(hist.begin(), hist.end());
  for (std::size_t i = 1; i < hist.size(); ++i) CHECK(hist[i].second <= hist[i - 1].second + 1e-9);
}

TEST_CASE("coulomb ground state at nu = 0.9 (strong coupling grid)") {
  PhysicalParams params(1.0);
  AngularChannel ch(-1);
  auto V = Potential::coulomb(0.9);
  auto basis = graded_radial_basis(200, 34.0, 3, 1e-8);
  auto res = solve_level(1, basis, V, params, ch);
  CHECK(std::abs(res.lambda - std::sqrt(1.0 - 0.81)) < 1e-5);
}

TEST_CASE("free case reports no root in the gap") {
  PhysicalParams params(1.0);
  AngularChannel ch(-1);
  auto V = Potential::regularized_coulomb(1e-14, 1.0);
  auto basis = graded_radial_basis(40, 30.0, 2, 1e-5);
  for (int k : {1, 2, 5}) CHECK_THROWS_AS(solve_level(k, basis, V, params, ch), NoRootInGap);
}

TEST_CASE("levels are ordered within a channel") {
  PhysicalParams params(1.0);
  AngularChannel ch(-1);
  auto V = Potential::coulomb(0.5);
  auto basis = graded_radial_basis(160, 120.0, 2, 1e-6);
  double l1 = solve_level(1, basis, V, params, ch).lambda;
  double l2 = solve_level(2, basis, V, params, ch).lambda;
  double l3 = solve_level(3, basis, V, params, ch).lambda;
  CHECK(l1 <= l2);
  CHECK(l2 <= l3);
  CHECK(l2 == doctest::Approx(coulomb_dirac_level(0.5, 1.0, -1, 2)).epsilon(2e-5));
}

TEST_CASE("levels agree with the finite-difference radial Dirac oracle") {
  PhysicalParams params(1.0);
  AngularChannel ch(-1);
  auto V = Potential::coulomb(0.3);
  auto basis = graded_radial_basis(200, 100.0, 2, 1e-6);
  auto res = solve_level(1, basis, V, params, ch);
  oracle::RadialDiracFD fd;
  fd.V = [](double r) { return -0.3 / r; };
  fd.c = 1.0;
  fd.kappa = -1;
  fd.R = 100.0;
  fd.N = 100000;
  CHECK(res.lambda == doctest::Approx(fd.level_richardson(1)).epsilon(1e-7));
}

TEST_CASE("nested refinement converges from above") {
  PhysicalParams params(1.0);
  AngularChannel ch(-1);
  auto V = Potential::coulomb(0.5);
  std::vector<SplineBasis> bases;
  bases.push_back(graded_radial_basis(25, 60.0, 2, 1e-6));
  for (int i = 0; i < 3; ++i) bases.push_back(bases.back().refined());
  auto conv = converge_levels(1, bases, V, params, ch);
  REQUIRE(conv.lambdas.size() == 4);
  CHECK(conv.sizes[0] == 25);
  CHECK(conv.sizes[3] == 200);
  for (std::size_t i = 1; i < conv.lambdas.size(); ++i)
    CHECK(conv.lambdas[i] <= conv.lambdas[i - 1] + 1e-9);
  CHECK(std::abs(conv.lambdas.back() - kRoot3Over2) < 1e-6);
  CHECK(conv.error_estimate >= -1e-9);

  // Identical basis repeated: constant sequence.
  std::vector<SplineBasis> same = {bases[0], bases[0]};
  auto conv2 = converge_levels(1, same, V, params, ch);
  CHECK(conv2.lambdas[0] == doctest::Approx(conv2.lambdas[1]).epsilon(1e-12));

  // Non-nested bases rejected.
  std::vector<SplineBasis> bad = {graded_radial_basis(30, 60.0, 2, 1e-5),
                                  graded_radial_basis(37, 60.0, 2, 1e-6)};
  CHECK_THROWS_AS(converge_levels(1, bad, V, params, ch), std::invalid_argument);
}

TEST_CASE("nonrelativistic sweep hits the Schrodinger limit") {
  AngularChannel ch(-1);
  auto V = Potential::coulomb(1.0);
  NonrelOptions opts;
  opts.n = 240;
  opts.degree = 3;
  auto sweep = nonrel_sweep({5.0, 10.0, 20.0, 40.0}, V, ch, 1, opts);
  double schrodinger = oracle::schrodinger_ground_fd([](double r) { return -1.0 / r; }, 0, 60.0,
                                                     200000);
  CHECK(schrodinger == doctest::Approx(-0.5).epsilon(1e-7));
  CHECK(std::abs(sweep.mu_inf - schrodinger) < 1e-4);
  // c = 10 entry against the closed-form relativistic shift.
  CHECK(sweep.points[1].mu == doctest::Approx(100.0 * (std::sqrt(0.99) - 1.0)).epsilon(1e-7));
  CHECK_THROWS_AS(nonrel_sweep({0.5, 2.0}, V, ch, 1, opts), std::invalid_argument);
}
