#pragma once

#include <Eigen/Dense>
#include <functional>

#include "diracgap/bspline.hpp"
#include "diracgap/params.hpp"
#include "diracgap/potential.hpp"

namespace diracgap {

/// Upper-component radial profile given analytically (value and derivative).
struct RadialProfile {
  std::function<double(double)> f;
  std::function<double(double)> df;
};

struct LambdaTResult {
  double value = 0.0;
  int iterations = 0;
  double residual = 0.0;  // defect of the implicit equation, scaled by ||phi||^2
};

/// The scalar functional lambda^T(V, phi): the unique number above K2 - c^2
/// satisfying
///   lambda int |phi|^2 = int [ c^2 |d_kappa phi|^2 / (c^2 - V + lambda)
///                              + (c^2 + V) |phi|^2 ] r^2 dr.
/// Monotone bisection bracket plus Newton; invariant under scaling of phi.
LambdaTResult lambda_T(const RadialProfile& phi, const Potential& V,
                       const PhysicalParams& params, const AngularChannel& channel,
                       double rmax, double tol = 1e-12);

/// Same functional evaluated for a coefficient vector on a spline basis.
LambdaTResult lambda_T(const SplineBasis& basis, const Eigen::VectorXd& coeffs,
                       const Potential& V, const PhysicalParams& params,
                       const AngularChannel& channel, double tol = 1e-12);

struct MinLambdaTOptions {
  double inner_tol = 1e-12;
  double grad_tol = 1e-8;
  int max_iter = 4000;
};

struct MinLambdaTResult {
  double value = 0.0;
  Eigen::VectorXd coefficients;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// First gap eigenvalue as the minimum of lambda^T over the basis span
/// (quasi-Newton on the coefficients, scalar root solved per evaluation).
/// This is the independent cross-check of the matrix root route.
MinLambdaTResult min_lambda_T(const Potential& V, const PhysicalParams& params,
                              const AngularChannel& channel, const SplineBasis& basis,
                              const MinLambdaTOptions& opts = {});

}  // namespace diracgap
