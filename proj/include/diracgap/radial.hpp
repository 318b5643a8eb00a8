#pragma once

#include <vector>

#include "diracgap/errors.hpp"

namespace diracgap {

/// Radial action of sigma.grad on a profile living in channel kappa:
///   (d_kappa f)(r) = f'(r) + (1 + kappa) f(r) / r.
/// For the pair (kappa = -1 upper, kappa = +1 lower) this reproduces the
/// first-order operators v' and u' + 2u/r of the radial reduction.
inline double radial_sigma_grad(int kappa, double f, double df, double r) {
  if (kappa == -1) return df;
  if (r == 0.0)
    throw SingularEvaluation("radial_sigma_grad: r = 0 is singular for kappa != -1");
  return df + (1.0 + kappa) * f / r;
}

/// Vectorized form on matching (f, df, r) samples.
std::vector<double> radial_sigma_grad(int kappa, const std::vector<double>& f,
                                      const std::vector<double>& df,
                                      const std::vector<double>& r);

}  // namespace diracgap
