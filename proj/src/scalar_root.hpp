#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "diracgap/errors.hpp"

namespace diracgap::detail {

/// Sampled implicit Rayleigh-type equation shared by the lambda^T functional
/// and its 1D magnetic analogue: the root of
///   h(lambda) = sum w [ c^2 dphi^2 / (lambda + c^2 - V) + (V + c^2 - lambda) phi^2 ],
/// which is strictly decreasing in lambda on (K2 - c^2, infinity).
struct SampledEquation {
  std::vector<double> w, dphi2, phi2, v;
  double c2 = 1.0;
  double k2 = 0.0;

  double a() const {
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * phi2[i];
    return s;
  }
  double h(double lambda) const {
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
      s += w[i] * (c2 * dphi2[i] / (lambda + c2 - v[i]) + (v[i] + c2 - lambda) * phi2[i]);
    return s;
  }
  double dh(double lambda) const {
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
      s -= w[i] * (c2 * dphi2[i] / ((lambda + c2 - v[i]) * (lambda + c2 - v[i])) + phi2[i]);
    return s;
  }
};

struct ScalarRootResult {
  double value = 0.0;
  int iterations = 0;
  double residual = 0.0;
};

inline ScalarRootResult solve_scalar_root(const SampledEquation& eq, double tol) {
  const double norm = eq.a();
  if (!(norm > 0.0)) throw std::invalid_argument("lambda functional: zero profile rejected");

  ScalarRootResult res;
  double lo = eq.k2 - eq.c2 + 1e-10;
  double hlo = eq.h(lo);
  if (hlo <= 0.0)
    throw NumericalError("lambda functional: no root above K2 - c^2");
  double hi = std::max(eq.c2, lo + 1.0);
  int iters = 0;
  while (eq.h(hi) > 0.0) {
    hi = lo + 2.0 * (hi - lo);
    if (++iters > 200) throw NumericalError("lambda functional: failed to bracket the root");
  }
  for (int it = 0; it < 80 && (hi - lo) > 1e-3 * (1.0 + std::abs(lo)); ++it) {
    double mid = 0.5 * (lo + hi);
    (eq.h(mid) > 0.0 ? lo : hi) = mid;
    ++iters;
  }
  double lambda = 0.5 * (lo + hi);
  for (int it = 0; it < 100; ++it) {
    double h = eq.h(lambda);
    double dh = eq.dh(lambda);
    double next = lambda - h / dh;
    if (next <= lo || next >= hi) {
      (h > 0.0 ? lo : hi) = lambda;
      next = 0.5 * (lo + hi);
    } else {
      (h > 0.0 ? lo : hi) = lambda;
    }
    ++iters;
    if (std::abs(next - lambda) <= tol * std::max(1.0, std::abs(lambda))) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  res.value = lambda;
  res.iterations = iters;
  res.residual = eq.h(lambda) / norm;
  return res;
}

}  // namespace diracgap::detail
