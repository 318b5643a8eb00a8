#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "diracgap/ode.hpp"

namespace diracgap {

/// Scalar self-coupling g with antiderivative G (G' = g, G(0) = 0) and the
/// homogeneity degree theta when the model has one.
struct Nonlinearity {
  std::function<double(double)> g;
  std::function<double(double)> G;
  double theta = std::numeric_limits<double>::quiet_NaN();
  std::string name;

  static Nonlinearity soler();                    // g(s) = s
  static Nonlinearity power(double theta);        // g(s) = sign(s) |s|^theta
  static Nonlinearity negative_power(double a);   // g(s) = -s^{-a}, s > 0
  static Nonlinearity constant(double value);
};

enum class SolitonClass { Localized, UDominantBlowup, VSignExit, Inconclusive };

std::string to_string(SolitonClass c);

struct ShootingOptions {
  double rmax = 0.0;            // 0 = auto (about 45 / sqrt(1 - omega^2))
  double decay_tol = 1e-10;     // localized when |u| + |v| drops below this
  double blowup_factor = 1e6;   // blowup when |u| + |v| > factor * x0
  double grazing_tol = 1e-12;   // sign changes below this amplitude are ignored
  double rel_tol = 1e-12;       // integrator tolerance
  double scan_lo = 1e-6, scan_hi = 1e2;
  int scan_points = 161;
  int node_budget = std::numeric_limits<int>::max();
};

struct SolitonProfile {
  double omega = 0.0;
  double x0 = 0.0;
  std::vector<double> r, u, v;
  int nodes_u = 0, nodes_v = 0;
  double decay_rate = std::numeric_limits<double>::quiet_NaN();
  SolitonClass classification = SolitonClass::Inconclusive;
  double residual_max_scaled = 0.0;  // max |ODE defect| / (|u| + |v| + x0)
  double decay_tol_used = 0.0, blowup_factor_used = 0.0;
};

/// Integrates the radial system
///   u' + 2u/r = v (g(v^2 - u^2) - (1 - omega)),
///   v'        = u (g(v^2 - u^2) - (1 + omega)),
/// from u(0) = 0, v(0) = x0 (series start at r = 1e-6) and classifies the
/// trajectory.  Stops early once the v node budget is exhausted.
SolitonProfile integrate_soler(double omega, double x0, const Nonlinearity& g, double rmax,
                               const ShootingOptions& opts = {});

/// Ground state: bisection on x0 between blowup and v-sign-exit outcomes,
/// with the exponential tail attached by backward integration.
SolitonProfile find_ground(double omega, const Nonlinearity& g, const ShootingOptions& opts = {});

/// n-th excited branch (components carry n-1 interior zeros).
SolitonProfile find_excited(double omega, const Nonlinearity& g, int n,
                            const ShootingOptions& opts = {});

struct CompactSupportResult {
  bool bounded = false;
  double integral = std::numeric_limits<double>::infinity();  // int_0^1 ds / G(s)
};

/// Bounded-support test for singular couplings: the support of (u, v) is
/// bounded iff int_0^1 ds / G(s) is finite, G(s) = -int_0^s g.
CompactSupportResult compact_support_criterion(const Nonlinearity& g);

struct SchwarzschildSetup {
  double r0 = 2.0;      // star boundary, outside the horizon (r0 > 1)
  double lambda = 1.0;  // cubic coupling strength
  double omega = 0.5;

  double metric(double r) const { return 1.0 - 1.0 / r; }
};

/// Integrates the curved-metric system
///   f u' + (u/r)(f + sqrt(f)) = v [lambda (v^2-u^2) - (sqrt(f) - omega)],
///   f v' + (v/r)(f - sqrt(f)) = u [lambda (v^2-u^2) - (sqrt(f) + omega)],
/// outward from r0 with MIT-bag data u(r0) = -x0, v(r0) = x0.
SolitonProfile integrate_schwarzschild(const SchwarzschildSetup& setup, double x0, double rmax,
                                       const ShootingOptions& opts = {});

SolitonProfile find_schwarzschild_branch(const SchwarzschildSetup& setup,
                                         const ShootingOptions& opts = {});

/// Flat-space comparison run started from the same boundary data.
SolitonProfile integrate_flat_from(double omega, const Nonlinearity& g, double r0, double u0,
                                   double v0, double rmax, const ShootingOptions& opts = {});

struct NlsProfile {
  std::vector<double> r, phi, dphi;
  double phi0 = 0.0;  // shooting value phi(0)
  double decay_rate = std::numeric_limits<double>::quiet_NaN();
};

/// Positive decaying solution of -1/2 lap phi + phi - g(|phi|^2) phi = 0
/// obtained by shooting on phi(0); the oracle for the rescaling check.
NlsProfile nls_ground_state(const Nonlinearity& g, const ShootingOptions& opts = {});

struct RescaleReport {
  double eps = 0.0;
  double l2_distance = 0.0;      // || rescaled upper - NLS ground ||_L2
  double chi_residual = 0.0;     // || chibar + (i/2) sigma.grad phibar || (radial form)
  double amplitude_ratio = 0.0;  // v(0) / (sqrt(eps) phi_NLS(0))
};

/// Ounaies rescaling check near omega = 1: 1 - omega = eps, upper component
/// scaled by sqrt(eps), lower by eps, radii by sqrt(eps).
RescaleReport nonrel_rescale_check(double eps, const Nonlinearity& g,
                                   const ShootingOptions& opts = {});

}  // namespace diracgap
