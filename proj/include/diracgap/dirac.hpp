#pragma once

#include <Eigen/Dense>

#include "diracgap/params.hpp"

namespace diracgap {

/// The standard representation: beta = diag(I2, -I2), alpha_k offdiagonal
/// with the Pauli matrix sigma_k.  All four matrices are Hermitian and obey
/// alpha_k alpha_l + alpha_l alpha_k = 2 delta_kl, alpha_k beta + beta alpha_k = 0,
/// beta^2 = 1.
struct DiracMatrices {
  static Eigen::Matrix2cd pauli(int k);   // k = 1, 2, 3
  static Eigen::Matrix4cd alpha(int k);   // k = 1, 2, 3
  static Eigen::Matrix4cd beta();
};

/// Free Dirac operator in momentum space, D_c(p) = c alpha.p + c^2 beta.
Eigen::Matrix4cd free_dirac_symbol(const Eigen::Vector3d& p, const PhysicalParams& params);

/// Spectral projector of the free operator onto the positive (sign=+1) or
/// negative (sign=-1) energy subspace at momentum p:
///   P(p) = (sign * D_c(p) + E(p)) / (2 E(p)),   E(p) = sqrt(c^2 |p|^2 + c^4).
Eigen::Matrix4cd free_dirac_projector(const Eigen::Vector3d& p, const PhysicalParams& params,
                                      int sign);

/// 2x2 restriction of D_c(p) to a radial channel pair (upper profile in
/// channel kappa, lower in -kappa): [[c^2, -c p], [-c p, -c^2]].
Eigen::Matrix2d free_dirac_symbol_radial(double p, const PhysicalParams& params);
Eigen::Matrix2d free_dirac_projector_radial(double p, const PhysicalParams& params, int sign);

}  // namespace diracgap
