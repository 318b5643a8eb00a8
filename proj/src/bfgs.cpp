#include "diracgap/bfgs.hpp"

#include <cmath>

namespace diracgap {

BfgsResult bfgs_minimize(const std::function<double(const Eigen::VectorXd&)>& f,
                         const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& grad,
                         Eigen::VectorXd x0, const BfgsOptions& opts) {
  const int n = static_cast<int>(x0.size());
  Eigen::MatrixXd H = Eigen::MatrixXd::Identity(n, n);  // inverse Hessian estimate
  Eigen::VectorXd x = std::move(x0);
  double fx = f(x);
  Eigen::VectorXd g = grad(x);

  BfgsResult res;
  for (int iter = 0; iter < opts.max_iter; ++iter) {
    res.iterations = iter;
    double gn = g.norm();
    if (gn <= opts.grad_tol * opts.grad_tol_scale) {
      res.converged = true;
      break;
    }
    Eigen::VectorXd dir = -H * g;
    double slope = g.dot(dir);
    if (slope >= 0.0) {  // reset on a non-descent direction
      H.setIdentity();
      dir = -g;
      slope = -gn * gn;
    }

    double step = opts.initial_step;
    double fnew = fx;
    Eigen::VectorXd xnew = x;
    bool moved = false;
    for (int ls = 0; ls < 60; ++ls) {
      xnew = x + step * dir;
      fnew = f(xnew);
      if (std::isfinite(fnew) && fnew <= fx + 1e-4 * step * slope) {
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;

    Eigen::VectorXd gnew = grad(xnew);
    Eigen::VectorXd s = xnew - x;
    Eigen::VectorXd yv = gnew - g;
    double sy = s.dot(yv);
    if (sy > 1e-14 * s.norm() * yv.norm()) {
      Eigen::VectorXd Hy = H * yv;
      double yHy = yv.dot(Hy);
      // BFGS update of the inverse Hessian.
      H += ((sy + yHy) / (sy * sy)) * (s * s.transpose());
      H -= (Hy * s.transpose() + s * Hy.transpose()) / sy;
    }
    x = std::move(xnew);
    fx = fnew;
    g = std::move(gnew);
  }
  res.x = x;
  res.value = fx;
  res.grad_norm = g.norm();
  if (res.grad_norm <= opts.grad_tol * opts.grad_tol_scale) res.converged = true;
  return res;
}

}  // namespace diracgap
