#pragma once

#include <Eigen/Dense>
#include <functional>

namespace diracgap {

struct BfgsOptions {
  double grad_tol = 1e-8;      // stop when ||grad||_2 <= grad_tol * scale
  double grad_tol_scale = 1.0; // caller-chosen scale (1 or |f|)
  int max_iter = 2000;
  double initial_step = 1.0;
};

struct BfgsResult {
  Eigen::VectorXd x;
  double value = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Dense BFGS with Armijo backtracking.  Minimizes f with analytic gradient;
/// suitable for the few-hundred-dimensional coefficient problems here.
BfgsResult bfgs_minimize(const std::function<double(const Eigen::VectorXd&)>& f,
                         const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& grad,
                         Eigen::VectorXd x0, const BfgsOptions& opts = {});

}  // namespace diracgap
