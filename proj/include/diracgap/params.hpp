#pragma once

#include <cmath>
#include <stdexcept>

namespace diracgap {

/// Physical constants in units m = hbar = 1.  The only free constant is the
/// speed of light; the essential spectrum of the free operator is
/// (-inf, -c^2] u [c^2, inf), so bound levels live in (-c^2, c^2).
struct PhysicalParams {
  double c = 1.0;

  explicit PhysicalParams(double c_ = 1.0) : c(c_) {
    if (!(c > 0.0)) throw std::invalid_argument("PhysicalParams: c must be positive");
  }

  double gap_upper() const { return c * c; }
  double gap_lower() const { return -c * c; }
};

/// Angular momentum channel of the radial reduction.  kappa = -1 is the
/// channel of the spherically symmetric ansatz (upper component l = 0,
/// lower component l = 1).
struct AngularChannel {
  int kappa = -1;

  explicit AngularChannel(int k = -1) : kappa(k) {
    if (kappa == 0) throw std::invalid_argument("AngularChannel: kappa must be nonzero");
  }

  /// Orbital momentum carried by a radial profile living in channel kappa.
  static int orbital_l(int kappa) { return kappa > 0 ? kappa : -kappa - 1; }

  int l_upper() const { return orbital_l(kappa); }
  int l_lower() const { return orbital_l(-kappa); }
};

}  // namespace diracgap
