#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "diracgap/errors.hpp"
#include "diracgap/soliton.hpp"

using namespace diracgap;

namespace {

std::pair<double, double> interp_profile(const SolitonProfile& p, double r) {
  auto it = std::lower_bound(p.r.begin(), p.r.end(), r);
  if (it == p.r.begin() || it == p.r.end()) return {0.0, 0.0};
  std::size_t hi = it - p.r.begin(), lo = hi - 1;
  double t = (r - p.r[lo]) / (p.r[hi] - p.r[lo]);
  return {(1 - t) * p.u[lo] + t * p.u[hi], (1 - t) * p.v[lo] + t * p.v[hi]};
}

}  // namespace

TEST_CASE("x0 = 0 gives the trivial localized solution") {
  auto p = integrate_soler(0.5, 0.0, Nonlinearity::soler(), 20.0);
  CHECK(p.classification == SolitonClass::Localized);
  CHECK(p.nodes_u == 0);
  CHECK(p.nodes_v == 0);
  for (double v : p.v) CHECK(v == 0.0);
}

TEST_CASE("scan endpoints behave as the phase portrait dictates") {
  auto g = Nonlinearity::soler();
  // Small data: captured by the center (0, v*), v never crosses zero.
  auto low = integrate_soler(0.5, 1e-4, g, 0.0);
  CHECK(low.classification == SolitonClass::Inconclusive);
  CHECK(low.nodes_v == 0);
  // Large data: joint blowup of u and v.
  auto high = integrate_soler(0.5, 10.0, g, 0.0);
  CHECK(high.classification == SolitonClass::UDominantBlowup);
  // Node budget produces the v-sign-exit outcome between the branches.
  ShootingOptions budget;
  budget.node_budget = 1;
  auto over = integrate_soler(0.5, 1.45, g, 0.0, budget);
  CHECK(over.classification == SolitonClass::VSignExit);
  CHECK(over.nodes_v == 1);
}

TEST_CASE("omega outside (0,1) is rejected") {
  CHECK_THROWS_AS(integrate_soler(1.0, 1.0, Nonlinearity::soler(), 10.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(find_ground(1.2, Nonlinearity::soler()), std::invalid_argument);
}

TEST_CASE("ground state of the cubic model at omega = 0.5") {
  auto p = find_ground(0.5, Nonlinearity::soler());
  CHECK(p.classification == SolitonClass::Localized);
  CHECK(p.nodes_u == 0);
  CHECK(p.nodes_v == 0);
  CHECK(p.x0 == doctest::Approx(1.380565923).epsilon(1e-6));  // frozen from the scan oracle
  // Positive components on (0, infinity).
  for (std::size_t i = 1; i < p.r.size(); ++i) {
    CHECK(p.u[i] >= 0.0);
    CHECK(p.v[i] >= 0.0);
  }
  // Decay rate within 5% of sqrt(1 - omega^2).
  double mu = std::sqrt(1.0 - 0.25);
  CHECK(std::abs(p.decay_rate - mu) < 0.05 * mu);
  CHECK(p.residual_max_scaled < 1e-8);
  // Localized per the recorded thresholds.
  CHECK(std::abs(p.u.back()) + std::abs(p.v.back()) < p.decay_tol_used);
}

TEST_CASE("excited branches are ordered with the right node counts") {
  auto g = Nonlinearity::soler();
  auto b1 = find_ground(0.5, g);
  auto b2 = find_excited(0.5, g, 2);
  auto b3 = find_excited(0.5, g, 3);
  CHECK(b1.x0 < b2.x0);
  CHECK(b2.x0 < b3.x0);
  CHECK(b1.nodes_v == 0);
  CHECK(b2.nodes_v == 1);
  CHECK(b3.nodes_v == 2);
  CHECK(b1.nodes_u == 0);
  CHECK(b2.nodes_u == 1);
  CHECK(b3.nodes_u == 2);
  for (const auto* b : {&b1, &b2, &b3}) {
    CHECK(b->residual_max_scaled < 1e-8);
    double mu = std::sqrt(0.75);
    CHECK(std::abs(b->decay_rate - mu) < 0.05 * mu);
    CHECK(b->x0 < 10.0);  // the branch values stay below a common bound
  }

  // Node monotonicity between consecutive located branches.
  auto mid12 = integrate_soler(0.5, 0.5 * (b1.x0 + b2.x0), g, 0.0);
  auto mid23 = integrate_soler(0.5, 0.5 * (b2.x0 + b3.x0), g, 0.0);
  CHECK(mid12.nodes_v >= 1);
  CHECK(mid23.nodes_v >= mid12.nodes_v);
}

TEST_CASE("les4 hypothesis check rejects inadmissible couplings") {
  CHECK_THROWS_AS(find_ground(0.5, Nonlinearity::constant(-1.0)), HypothesisUnmet);
}

TEST_CASE("compact support criterion on the analytic examples") {
  auto r1 = compact_support_criterion(Nonlinearity::negative_power(0.5));
  CHECK(r1.bounded);
  CHECK(r1.integral == doctest::Approx(1.0).epsilon(1e-8));
  auto r2 = compact_support_criterion(Nonlinearity::constant(-1.0));
  CHECK_FALSE(r2.bounded);
  CHECK(std::isinf(r2.integral));
  auto r3 = compact_support_criterion(Nonlinearity::negative_power(0.75));
  CHECK(r3.bounded);
  CHECK(r3.integral == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
  CHECK_THROWS_AS(compact_support_criterion(Nonlinearity::soler()), HypothesisUnmet);
}

TEST_CASE("schwarzschild metric factor and domain validation") {
  SchwarzschildSetup s{2.0, 1.0, 0.5};
  CHECK(s.metric(2.0) == doctest::Approx(0.5));
  CHECK(s.metric(1e9) == doctest::Approx(1.0));
  CHECK_THROWS_AS(integrate_schwarzschild({0.9, 1.0, 0.5}, 1.0, 10.0), std::invalid_argument);
}

TEST_CASE("far star boundary reproduces the flat system") {
  auto g = Nonlinearity::soler();
  const double x0 = 0.5;
  // Frozen from the flat-space oracle: relative sup-deviation over a
  // two-unit window, decaying like 1/r0.
  double dev50 = 0.0;
  std::vector<double> r0s = {25.0, 50.0, 100.0};
  std::vector<double> devs;
  for (double r0 : r0s) {
    auto curved = integrate_schwarzschild({r0, 1.0, 0.5}, x0, r0 + 3.0);
    auto flat = integrate_flat_from(0.5, g, r0, -x0, x0, r0 + 3.0);
    double dev = 0.0, amp = 0.0;
    for (double r = r0; r < r0 + 2.0; r += 0.02) {
      auto [uc, vc] = interp_profile(curved, r);
      auto [uf, vf] = interp_profile(flat, r);
      dev = std::max({dev, std::abs(uc - uf), std::abs(vc - vf)});
      amp = std::max({amp, std::abs(uf), std::abs(vf)});
    }
    devs.push_back(dev / amp);
    if (r0 == 50.0) dev50 = dev / amp;
  }
  CHECK(dev50 < 0.03);  // oracle value 0.026 at r0 = 50
  // O(1/r0) rate: log-log slope close to -1.
  double slope = std::log(devs.back() / devs.front()) / std::log(r0s.back() / r0s.front());
  CHECK(slope < -0.6);
  CHECK(slope > -1.4);
}

TEST_CASE("bound state outside a small star boundary") {
  SchwarzschildSetup setup{2.0, 1.0, 0.5};
  auto p = find_schwarzschild_branch(setup);
  CHECK(p.classification == SolitonClass::Localized);
  CHECK(p.x0 == doctest::Approx(0.69010182).epsilon(1e-5));  // frozen from the scan oracle
  CHECK(p.nodes_v == 0);
  // MIT-bag boundary data u = -v at r0.
  CHECK(p.u.front() == doctest::Approx(-p.v.front()).epsilon(1e-12));
  CHECK(p.residual_max_scaled < 1e-8);
}

TEST_CASE("nls ground state matches its known profile") {
  auto nls = nls_ground_state(Nonlinearity::soler());
  CHECK(nls.phi0 == doctest::Approx(4.3373877).epsilon(1e-6));
  double root2 = std::sqrt(2.0);
  CHECK(std::abs(nls.decay_rate - root2) < 0.05 * root2);
  // Positive and decreasing.
  for (std::size_t i = 1; i < nls.r.size(); ++i) CHECK(nls.phi[i] > 0.0);
  // Uniqueness: a different scan grid converges to the same amplitude.
  ShootingOptions other;
  other.scan_points = 97;
  auto nls2 = nls_ground_state(Nonlinearity::soler(), other);
  CHECK(std::abs(nls2.phi0 - nls.phi0) < 1e-8);
}

TEST_CASE("ounaies rescaling approaches the NLS limit") {
  auto g = Nonlinearity::soler();
  std::vector<RescaleReport> reps;
  for (double eps : {0.04, 0.02, 0.01}) reps.push_back(nonrel_rescale_check(eps, g));
  for (std::size_t i = 1; i < reps.size(); ++i) {
    CHECK(reps[i].l2_distance < reps[i - 1].l2_distance);
    CHECK(reps[i].chi_residual < reps[i - 1].chi_residual);
  }
  // Amplitude scaling ~ sqrt(eps): the ratio between eps = 0.04 and 0.01
  // equals 2 within 10%.
  double x0_ratio = (reps[0].amplitude_ratio * std::sqrt(0.04)) /
                    (reps[2].amplitude_ratio * std::sqrt(0.01));
  CHECK(std::abs(x0_ratio - 2.0) < 0.2);
  CHECK_THROWS_AS(nonrel_rescale_check(0.0, g), std::invalid_argument);
  CHECK_THROWS_AS(nonrel_rescale_check(0.2, g), std::invalid_argument);
}
