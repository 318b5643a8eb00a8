#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "diracgap/params.hpp"

namespace diracgap {

/// Radial profile living in a single angular channel; l is the orbital
/// momentum carried by the channel (profiles behave like r^l at the origin).
struct ChannelProfile {
  int l = 0;
  std::function<double(double)> f;
  std::function<double(double)> df;
  double extent = 10.0;                // effective support radius
  double feature_scale = 0.5;          // smallest variation scale (grid sizing)
  std::vector<double> breakpoints;     // natural cells, empty = auto
};

/// 4-spinor test function in the kappa = -1 pair: upper profile with l = 0,
/// lower with l = 1; `projected` records whether a free-energy projector has
/// been applied (+1 / -1) or not (0).
struct RadialSpinor {
  ChannelProfile upper;  // l = 0
  ChannelProfile lower;  // l = 1
  int projected = 0;
};

struct InequalityReport {
  std::string id;
  std::uint64_t seed = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;    // rhs - lhs
  double constant = 0.0;  // the sharp constant appearing on the rhs
  bool hypothesis_ok = true;
  std::string note;
};

/// Kato: int |psi|^2/|x| <= (pi/2) (psi, sqrt(-Delta) psi).
InequalityReport check_kato(const RadialSpinor& psi, const PhysicalParams& params);

/// Tix: (psi, psi/|x|) <= 1/2 (pi/2 + 2/pi) (psi, |D_1| psi) for psi in the
/// positive or negative spectral subspace of D_1.  The projector is applied
/// in momentum space here; an unprojected input is reported hypothesis-unmet.
InequalityReport check_tix(const RadialSpinor& psi, const PhysicalParams& params);

/// W^2 <= -4 Delta, checked directly in position space.
InequalityReport check_w2(const RadialSpinor& psi, const PhysicalParams& params);

/// Dirac-Hardy inequality for 2-spinor profiles (c = 1 normalization):
/// nu < 1 uses the 1 + nu/r + sqrt(1-nu^2) denominator, nu = 1 the 1 + 1/r one.
InequalityReport check_hardy_dirac(const ChannelProfile& phi, int kappa, double nu);

/// Dilation-invariant Hardy pair: int |x| |sigma.grad phi|^2 >= int |phi|^2/|x|
/// and the classical int |grad phi|^2 >= 1/4 int |phi|^2/|x|^2.
std::pair<InequalityReport, InequalityReport> check_dilation_hardy(const ChannelProfile& phi,
                                                                   int kappa);

/// Ratio int |grad phi_eps|^2 / int |phi_eps|^2/|x|^2 for the near-extremal
/// family phi_eps = r^{-1/2+eps} chi(r); approaches 1/4 as eps -> 0.
double classical_hardy_extremal_ratio(double eps);

enum class FamilyKind { Gaussian, Exponential, CoulombLike, RandomSpline };

/// Deterministic seeded test profile; l fixes the origin behavior r^l.
ChannelProfile make_test_profile(FamilyKind kind, int l, std::uint64_t seed);

/// Seeded 4-spinor; smooth_only restricts to kinds whose Bessel transform
/// machinery applies (excludes the r^{gamma-1} cusp family).
RadialSpinor make_test_spinor(std::uint64_t seed, bool smooth_only);

struct HardySuiteOptions {
  int count = 100;
  std::uint64_t seed = 1;
};

/// Runs one inequality id over `count` seeded members and returns the reports.
std::vector<InequalityReport> run_hardy_family(const std::string& id,
                                               const HardySuiteOptions& opts,
                                               const PhysicalParams& params);

std::vector<std::string> hardy_inequality_ids();

}  // namespace diracgap
