#include "diracgap/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace diracgap {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
// y5 - y4 error weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense output weights (Hairer, Norsett, Wanner).
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

}  // namespace

void DenseStep::eval(double t, std::array<double, 2>& y) const {
  double th = (t - t0) / h;
  double th1 = 1.0 - th;
  for (int i = 0; i < 2; ++i) {
    const auto& c = cont[i];
    y[i] = c[0] + th * (c[1] + th1 * (c[2] + th * (c[3] + th1 * c[4])));
  }
}

void DenseStep::eval_deriv(double t, std::array<double, 2>& dy) const {
  double th = (t - t0) / h;
  for (int i = 0; i < 2; ++i) {
    const auto& c = cont[i];
    // d/dtheta of c0 + th(c1 + (1-th)(c2 + th(c3 + (1-th)c4)))
    double inner = c[2] + th * (c[3] + (1.0 - th) * c[4]);
    double dinner = c[3] + c[4] * (1.0 - 2.0 * th);
    dy[i] = (c[1] + (1.0 - 2.0 * th) * inner + th * (1.0 - th) * dinner) / h;
  }
}

OdeResult integrate_ode(const Rhs2& rhs, double t0, std::array<double, 2> y0, double t_end,
                        const OdeOptions& opts, const StepObserver& observer) {
  OdeResult res;
  const double dir = (t_end >= t0) ? 1.0 : -1.0;
  double t = t0;
  std::array<double, 2> y = y0;
  std::array<double, 2> k1, k2, k3, k4, k5, k6, k7, ytmp, ynew;
  rhs(t, y, k1);
  double h = std::min(opts.h_init, opts.h_max) * dir;

  while (dir * (t_end - t) > 0.0) {
    if (std::abs(h) > dir * (t_end - t)) h = (t_end - t);
    if (std::abs(h) < opts.h_min_factor * std::max(1.0, std::abs(t))) {
      res.status = OdeStatus::StepUnderflow;
      break;
    }
    if (++res.steps > opts.max_steps) {
      res.status = OdeStatus::StepUnderflow;
      break;
    }

    for (int i = 0; i < 2; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
    rhs(t + c2 * h, ytmp, k2);
    for (int i = 0; i < 2; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    rhs(t + c3 * h, ytmp, k3);
    for (int i = 0; i < 2; ++i) ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(t + c4 * h, ytmp, k4);
    for (int i = 0; i < 2; ++i)
      ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs(t + c5 * h, ytmp, k5);
    for (int i = 0; i < 2; ++i)
      ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    rhs(t + h, ytmp, k6);
    for (int i = 0; i < 2; ++i)
      ynew[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    rhs(t + h, ynew, k7);

    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
      double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      double sc = opts.abs_tol + opts.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err += (ei / sc) * (ei / sc);
    }
    err = std::sqrt(0.5 * err);

    if (err <= 1.0 || std::abs(h) <= 1.01 * opts.h_min_factor * std::max(1.0, std::abs(t))) {
      DenseStep step;
      step.t0 = t;
      step.h = h;
      for (int i = 0; i < 2; ++i) {
        double delta = ynew[i] - y[i];
        double bspl = h * k1[i] - delta;
        step.cont[i][0] = y[i];
        step.cont[i][1] = delta;
        step.cont[i][2] = bspl;
        step.cont[i][3] = delta - h * k7[i] - bspl;
        step.cont[i][4] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] +
                               d7 * k7[i]);
      }
      t += h;
      y = ynew;
      k1 = k7;  // FSAL
      if (observer && !observer(step, y)) {
        res.status = OdeStatus::ObserverStop;
        res.t_end = t;
        res.y_end = y;
        return res;
      }
    }

    double fac = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
    fac = std::clamp(fac, 0.2, 5.0);
    h *= fac;
    if (std::abs(h) > opts.h_max) h = opts.h_max * dir;
  }

  if (res.status != OdeStatus::StepUnderflow && dir * (t_end - t) <= 0.0)
    res.status = OdeStatus::ReachedEnd;
  res.t_end = t;
  res.y_end = y;
  return res;
}

void DenseTrajectory::eval(double t, std::array<double, 2>& y) const {
  if (steps.empty()) throw std::runtime_error("DenseTrajectory: empty");
  // Steps are ordered in integration direction.
  const double dir = steps.front().h > 0 ? 1.0 : -1.0;
  std::size_t lo = 0, hi = steps.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    double t1 = steps[mid].t0 + steps[mid].h;
    if (dir * (t - t1) > 0.0)
      lo = mid + 1;
    else
      hi = mid;
  }
  steps[lo].eval(t, y);
}

void DenseTrajectory::eval_deriv(double t, std::array<double, 2>& dy) const {
  if (steps.empty()) throw std::runtime_error("DenseTrajectory: empty");
  const double dir = steps.front().h > 0 ? 1.0 : -1.0;
  std::size_t lo = 0, hi = steps.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    double t1 = steps[mid].t0 + steps[mid].h;
    if (dir * (t - t1) > 0.0)
      lo = mid + 1;
    else
      hi = mid;
  }
  steps[lo].eval_deriv(t, dy);
}

DenseTrajectory integrate_dense(const Rhs2& rhs, double t0, std::array<double, 2> y0,
                                double t_end, const OdeOptions& opts) {
  DenseTrajectory traj;
  auto res = integrate_ode(
      rhs, t0, y0, t_end, opts,
      [&](const DenseStep& s, const std::array<double, 2>&) {
        traj.steps.push_back(s);
        return true;
      });
  traj.status = res.status;
  traj.t_end = res.t_end;
  traj.y_end = res.y_end;
  return traj;
}

}  // namespace diracgap
