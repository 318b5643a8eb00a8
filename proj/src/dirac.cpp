#include "diracgap/dirac.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace diracgap {

using namespace std::complex_literals;

Eigen::Matrix2cd DiracMatrices::pauli(int k) {
  Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();
  switch (k) {
    case 1:
      s(0, 1) = 1.0;
      s(1, 0) = 1.0;
      break;
    case 2:
      s(0, 1) = -1.0i;
      s(1, 0) = 1.0i;
      break;
    case 3:
      s(0, 0) = 1.0;
      s(1, 1) = -1.0;
      break;
    default:
      throw std::invalid_argument("pauli: k must be 1, 2 or 3");
  }
  return s;
}

Eigen::Matrix4cd DiracMatrices::alpha(int k) {
  Eigen::Matrix4cd a = Eigen::Matrix4cd::Zero();
  a.block<2, 2>(0, 2) = pauli(k);
  a.block<2, 2>(2, 0) = pauli(k);
  return a;
}

Eigen::Matrix4cd DiracMatrices::beta() {
  Eigen::Matrix4cd b = Eigen::Matrix4cd::Zero();
  b(0, 0) = b(1, 1) = 1.0;
  b(2, 2) = b(3, 3) = -1.0;
  return b;
}

Eigen::Matrix4cd free_dirac_symbol(const Eigen::Vector3d& p, const PhysicalParams& params) {
  const double c = params.c;
  Eigen::Matrix4cd d = c * c * DiracMatrices::beta();
  for (int k = 1; k <= 3; ++k) d += c * p[k - 1] * DiracMatrices::alpha(k);
  return d;
}

Eigen::Matrix4cd free_dirac_projector(const Eigen::Vector3d& p, const PhysicalParams& params,
                                      int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("projector sign must be +-1");
  const double c = params.c;
  const double energy = std::sqrt(c * c * p.squaredNorm() + c * c * c * c);
  Eigen::Matrix4cd d = free_dirac_symbol(p, params);
  return (double(sign) * d + energy * Eigen::Matrix4cd::Identity()) / (2.0 * energy);
}

Eigen::Matrix2d free_dirac_symbol_radial(double p, const PhysicalParams& params) {
  const double c = params.c;
  Eigen::Matrix2d d;
  d << c * c, -c * p, -c * p, -c * c;
  return d;
}

Eigen::Matrix2d free_dirac_projector_radial(double p, const PhysicalParams& params, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("projector sign must be +-1");
  const double c = params.c;
  const double energy = std::sqrt(c * c * p * p + c * c * c * c);
  return (double(sign) * free_dirac_symbol_radial(p, params) +
          energy * Eigen::Matrix2d::Identity()) /
         (2.0 * energy);
}

}  // namespace diracgap
