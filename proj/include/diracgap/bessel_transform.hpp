#pragma once

#include <array>
#include <functional>
#include <vector>

namespace diracgap {

/// Filon-type quadrature table for spherical Bessel transforms
///   T_l[f](p) = sqrt(2/pi) int_a^b f(r) j_l(p r) r^2 dr,   l in {0, 1}.
/// The smooth factor is interpolated once per cell by a degree-10 Chebyshev
/// polynomial; per momentum only trigonometric moments are evaluated, so the
/// cost is independent of p.  Exact for piecewise polynomials of degree <= 8.
class RadialFilonTable {
public:
  RadialFilonTable(const std::function<double(double)>& f, std::vector<double> breakpoints);

  double transform(int l, double p) const;

  /// Plain moment int f r^k dr over the table range (k <= 12).
  double power_moment(int k) const;

private:
  static constexpr int kNodes = 11;  // polynomial degree kNodes-1

  struct Cell {
    double m = 0.0, s = 0.0;                  // r = m + s t, t in [-1, 1]
    std::array<double, kNodes> poly_f{};      // monomial coefficients of f(r)
    std::array<double, kNodes> poly_fr{};     // of f(r) * r
    std::array<double, kNodes> poly_fr2{};    // of f(r) * r^2
  };
  std::vector<Cell> cells_;
  std::array<double, 13> moments_{};  // int f r^k dr, k = 0..12
  double rmax_ = 0.0;

  double transform_series(int l, double p) const;
};

/// Trigonometric moments S_k = int_{-1}^{1} t^k sin(theta t) dt and
/// C_k = int t^k cos(theta t) dt for k = 0..kmax (kmax <= 12).
void sincos_moments(double theta, int kmax, double* S, double* C);

}  // namespace diracgap
