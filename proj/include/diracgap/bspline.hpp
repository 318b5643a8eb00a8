#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

namespace diracgap {

/// Clamped B-spline basis of degree d on a strictly increasing breakpoint
/// sequence.  Holds the full (untrimmed) basis of L + d splines on L cells.
class BSplineCore {
public:
  BSplineCore(std::vector<double> breakpoints, int degree);

  int degree() const { return degree_; }
  int num_cells() const { return static_cast<int>(breaks_.size()) - 1; }
  int num_splines() const { return num_cells() + degree_; }
  const std::vector<double>& breakpoints() const { return breaks_; }
  double left() const { return breaks_.front(); }
  double right() const { return breaks_.back(); }

  /// Index of the cell containing x (last cell is closed on the right).
  int find_cell(double x) const;

  /// Values and first derivatives of the degree+1 splines active on the cell
  /// containing x.  The active spline indices are first..first+degree.
  void eval_active(double x, int& first, double* values, double* derivs) const;

  /// Value / derivative of a single spline (0 outside its support).
  double value(int i, double x) const;
  double deriv(int i, double x) const;

private:
  int degree_;
  std::vector<double> breaks_;
  std::vector<double> knots_;  // clamped
};

/// Quadrature tables for Galerkin assembly: per-node radius, weight and the
/// values/derivatives of the active trimmed basis functions.
struct BasisQuadrature {
  std::vector<double> x;       // node positions
  std::vector<double> w;       // Gauss weights (plain dx measure)
  std::vector<int> first;      // first active trimmed index at the node
  Eigen::MatrixXd val;         // (degree+1) x nodes
  Eigen::MatrixXd der;         // (degree+1) x nodes
};

/// Boundary-trimmed, normalized B-spline basis used by the solvers.  The
/// first and last spline of the clamped basis are dropped so every basis
/// function vanishes at both endpoints; the rest are scaled to unit norm in
/// the given measure (r^2 dr on the half line, dz on an interval).
class SplineBasis {
public:
  enum class Measure { RadialR2, Line };

  SplineBasis(std::vector<double> breakpoints, int degree, Measure measure);

  int size() const { return core_.num_splines() - 2; }
  int degree() const { return core_.degree(); }
  Measure measure() const { return measure_; }
  const std::vector<double>& breakpoints() const { return core_.breakpoints(); }
  double left() const { return core_.left(); }
  double right() const { return core_.right(); }

  /// Midpoint-bisects every cell; the refined basis spans a superset.
  SplineBasis refined() const;
  bool is_refinement_of(const SplineBasis& coarser) const;

  double value(int i, double x) const;    // trimmed, normalized
  double deriv(int i, double x) const;

  double combination(const Eigen::VectorXd& coeffs, double x) const;
  double combination_deriv(const Eigen::VectorXd& coeffs, double x) const;

  /// Gauss tables with 2*degree+2 points per cell (enough for the products
  /// of two splines against the r^2 weight).
  const BasisQuadrature& quadrature() const;

private:
  double weight(double x) const;

  BSplineCore core_;
  Measure measure_;
  std::vector<double> scale_;  // normalization, indexed by trimmed index
  mutable std::shared_ptr<BasisQuadrature> quad_;
};

/// Radial basis on [0, rmax] with geometric grading towards the origin.
/// n basis functions; the first cell has width ~h0_frac * rmax.
SplineBasis graded_radial_basis(int n, double rmax, int degree = 2, double h0_frac = 1e-6);

/// Symmetric basis on [-zmax, zmax], geometrically refined towards z = 0.
SplineBasis graded_line_basis(int n, double zmax, int degree = 2, double h0_frac = 1e-4);

}  // namespace diracgap
