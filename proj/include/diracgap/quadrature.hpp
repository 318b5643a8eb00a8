#pragma once

#include <functional>
#include <vector>

namespace diracgap {

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Computes the n-point Gauss-Legendre rule (Newton iteration on the
/// Legendre polynomial roots).  Exact for polynomials of degree 2n-1.
const GaussRule& gauss_legendre(int n);

/// Integrates f over [a, b] with an n-point Gauss rule.
double integrate_gauss(const std::function<double(double)>& f, double a, double b, int n);

/// Adaptive integration over [a, b]: recursively subdivided Gauss rule with
/// an embedded error estimate (G7 against G15 on the same interval).
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-12, double abs_tol = 0.0, int max_depth = 48);

/// Composite Gauss integration on a grid that is geometrically graded
/// towards the left endpoint a (first cell of width ~h0, ratio chosen so that
/// `cells` intervals cover [a, b]).  Intended for integrands with an
/// integrable singularity at a.
double integrate_graded_left(const std::function<double(double)>& f, double a, double b,
                             double h0, int cells = 240, int points_per_cell = 12);

/// Geometric partition of [a, b] with `cells` intervals, the first of width
/// about h0 (monotone increasing widths).  Returns the cell boundaries.
std::vector<double> graded_points(double a, double b, double h0, int cells);

/// Double-exponential (tanh-sinh) quadrature on [a, b]; converges to machine
/// precision also for integrable endpoint singularities like x^{-alpha}.
double integrate_tanh_sinh(const std::function<double(double)>& f, double a, double b,
                           double rel_tol = 1e-13, int max_level = 12);

/// Same rule with the integrand receiving (x, d) where d is the distance to
/// the nearer endpoint, computed without cancellation; required when the
/// integrand is singular at an endpoint and needs that distance precisely.
double integrate_tanh_sinh(const std::function<double(double, double)>& f, double a, double b,
                           double rel_tol = 1e-13, int max_level = 12);

}  // namespace diracgap
