#pragma once

#include <array>
#include <functional>
#include <vector>

namespace diracgap {

/// Right-hand side of a two-component first-order system y' = f(t, y).
using Rhs2 = std::function<void(double t, const std::array<double, 2>& y,
                                std::array<double, 2>& dy)>;

struct OdeOptions {
  double rel_tol = 1e-11;
  double abs_tol = 1e-13;
  double h_init = 1e-4;
  double h_max = 1.0;
  double h_min_factor = 1e-14;  // underflow when h < h_min_factor * |t|
  long max_steps = 4000000;
};

/// One accepted Dormand-Prince step with its order-4 dense-output
/// coefficients: y(t0 + theta h) = c1 + theta (c2 + (1-theta)(c3 + theta (c4 + (1-theta) c5))).
struct DenseStep {
  double t0 = 0.0, h = 0.0;
  std::array<std::array<double, 5>, 2> cont;  // per component

  void eval(double t, std::array<double, 2>& y) const;
  void eval_deriv(double t, std::array<double, 2>& dy) const;
};

enum class OdeStatus { ReachedEnd, ObserverStop, StepUnderflow };

/// Called after each accepted step; return false to stop the integration.
using StepObserver = std::function<bool(const DenseStep&, const std::array<double, 2>& y_end)>;

struct OdeResult {
  OdeStatus status = OdeStatus::ReachedEnd;
  double t_end = 0.0;
  std::array<double, 2> y_end{};
  long steps = 0;
};

/// Adaptive embedded 5(4) integration from t0 to t_end (t_end < t0 runs
/// backwards).  Dense steps are handed to the observer as they complete.
OdeResult integrate_ode(const Rhs2& rhs, double t0, std::array<double, 2> y0, double t_end,
                        const OdeOptions& opts, const StepObserver& observer);

/// Convenience wrapper that collects all dense steps.
struct DenseTrajectory {
  std::vector<DenseStep> steps;
  OdeStatus status = OdeStatus::ReachedEnd;
  double t_end = 0.0;
  std::array<double, 2> y_end{};

  void eval(double t, std::array<double, 2>& y) const;
  void eval_deriv(double t, std::array<double, 2>& dy) const;
};

DenseTrajectory integrate_dense(const Rhs2& rhs, double t0, std::array<double, 2> y0,
                                double t_end, const OdeOptions& opts = {});

}  // namespace diracgap
