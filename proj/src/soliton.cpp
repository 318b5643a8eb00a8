#include "diracgap/soliton.hpp"

#include <algorithm>
#include <cmath>

#include "diracgap/errors.hpp"
#include "diracgap/quadrature.hpp"

namespace diracgap {

Nonlinearity Nonlinearity::soler() {
  Nonlinearity n;
  n.g = [](double s) { return s; };
  n.G = [](double s) { return 0.5 * s * s; };
  n.theta = 1.0;
  n.name = "soler";
  return n;
}

Nonlinearity Nonlinearity::power(double theta) {
  if (!(theta > 0.0)) throw std::invalid_argument("power nonlinearity: theta must be positive");
  Nonlinearity n;
  n.g = [theta](double s) { return s >= 0.0 ? std::pow(s, theta) : -std::pow(-s, theta); };
  n.G = [theta](double s) {
    double a = std::pow(std::abs(s), theta + 1.0) / (theta + 1.0);
    return s >= 0.0 ? a : a;  // G is even for odd g
  };
  n.theta = theta;
  n.name = "power";
  return n;
}

Nonlinearity Nonlinearity::negative_power(double a) {
  if (!(a > 0.0) || !(a < 1.0))
    throw std::invalid_argument("negative_power: exponent must lie in (0,1)");
  Nonlinearity n;
  n.g = [a](double s) {
    if (!(s > 0.0)) throw std::domain_error("negative_power nonlinearity needs s > 0");
    return -std::pow(s, -a);
  };
  n.G = [a](double s) { return std::pow(s, 1.0 - a) / (1.0 - a); };  // = -int_0^s g
  n.name = "negative-power";
  return n;
}

Nonlinearity Nonlinearity::constant(double value) {
  Nonlinearity n;
  n.g = [value](double) { return value; };
  n.G = [value](double s) { return -value * s; };
  n.name = "constant";
  return n;
}

std::string to_string(SolitonClass c) {
  switch (c) {
    case SolitonClass::Localized: return "localized";
    case SolitonClass::UDominantBlowup: return "u-dominant-blowup";
    case SolitonClass::VSignExit: return "v-sign-exit";
    case SolitonClass::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

constexpr double kSeriesStart = 1e-6;

struct ShotResult {
  SolitonClass cls = SolitonClass::Inconclusive;
  int nodes_v = 0, nodes_u = 0;
  DenseTrajectory traj;
  double r_stop = 0.0;
};

/// Integrates a radial 2-system with the soliton event rules: count interior
/// sign changes of v (component 1) and u (component 0), stop on decay below
/// decay_tol, blowup above blowup_factor * scale, or the v node budget.
ShotResult shoot(const Rhs2& rhs, double r_start, std::array<double, 2> y0, double rmax,
                 double scale, const ShootingOptions& opts, int budget) {
  ShotResult out;
  OdeOptions oopts;
  oopts.rel_tol = opts.rel_tol;
  oopts.abs_tol = 1e-4 * opts.decay_tol * std::max(1.0, scale);
  oopts.h_init = 1e-6;
  oopts.h_max = std::max(1.0, rmax / 200.0);

  double last_u = y0[0], last_v = y0[1];
  bool decayed = false, blewup = false, budget_hit = false;

  auto res = integrate_ode(
      rhs, r_start, y0, rmax, oopts,
      [&](const DenseStep& step, const std::array<double, 2>& y_end) {
        out.traj.steps.push_back(step);
        // Sign-change scan on a refinement of the step.
        std::array<double, 2> y{};
        for (int j = 1; j <= 8; ++j) {
          double t = step.t0 + step.h * j / 8.0;
          if (j == 8) {
            y = y_end;
          } else {
            step.eval(t, y);
          }
          if (last_u * y[0] < 0.0 &&
              std::max(std::abs(last_u), std::abs(y[0])) > opts.grazing_tol)
            ++out.nodes_u;
          if (last_v * y[1] < 0.0 &&
              std::max(std::abs(last_v), std::abs(y[1])) > opts.grazing_tol) {
            ++out.nodes_v;
            if (out.nodes_v >= budget) {
              budget_hit = true;
              return false;
            }
          }
          if (std::abs(last_u) > opts.grazing_tol) last_u = y[0];
          else last_u = (std::abs(y[0]) > std::abs(last_u)) ? y[0] : last_u;
          if (std::abs(last_v) > opts.grazing_tol) last_v = y[1];
          else last_v = (std::abs(y[1]) > std::abs(last_v)) ? y[1] : last_v;
        }
        double amp = std::abs(y_end[0]) + std::abs(y_end[1]);
        if (!std::isfinite(amp) || amp > opts.blowup_factor * scale) {
          blewup = true;
          return false;
        }
        if (amp < opts.decay_tol) {
          decayed = true;
          return false;
        }
        return true;
      });

  out.traj.status = res.status;
  out.traj.t_end = res.t_end;
  out.traj.y_end = res.y_end;
  out.r_stop = res.t_end;
  if (decayed)
    out.cls = SolitonClass::Localized;
  else if (budget_hit)
    out.cls = SolitonClass::VSignExit;
  else if (blewup)
    out.cls = SolitonClass::UDominantBlowup;
  else
    out.cls = SolitonClass::Inconclusive;
  return out;
}

Rhs2 soler_rhs(double omega, const Nonlinearity& nl) {
  auto g = nl.g;
  return [omega, g](double r, const std::array<double, 2>& y, std::array<double, 2>& dy) {
    const double u = y[0], v = y[1];
    const double gs = g(v * v - u * u);
    dy[0] = -2.0 * u / r + v * (gs - (1.0 - omega));
    dy[1] = u * (gs - (1.0 + omega));
  };
}

std::array<double, 2> soler_start(double omega, double x0, const Nonlinearity& nl) {
  // Regular series at the origin: u(h) = (x0/3)(g(x0^2) - (1 - omega)) h,
  // v(h) = x0 + O(h^2), from balancing u' + 2u/r against the v equation.
  const double h = kSeriesStart;
  return {x0 / 3.0 * (nl.g(x0 * x0) - (1.0 - omega)) * h, x0};
}

double auto_rmax(double omega, const ShootingOptions& opts) {
  if (opts.rmax > 0.0) return opts.rmax;
  double mu = std::sqrt(std::max(1.0 - omega * omega, 1e-8));
  return std::max(60.0, 45.0 / mu);
}

/// Samples a dense trajectory at step boundaries and midpoints, appending to
/// the profile arrays in increasing radius; works for trajectories recorded
/// in either direction.  `scale` multiplies the state (matched tails).
void append_samples(const DenseTrajectory& traj, double r_from, double r_to, double scale,
                    std::vector<double>& r, std::vector<double>& u, std::vector<double>& v) {
  std::vector<double> ts;
  ts.reserve(2 * traj.steps.size() + 1);
  for (const auto& s : traj.steps) {
    ts.push_back(s.t0);
    ts.push_back(s.t0 + 0.5 * s.h);
  }
  if (!traj.steps.empty()) {
    const auto& s = traj.steps.back();
    ts.push_back(s.t0 + s.h);
  }
  std::sort(ts.begin(), ts.end());
  std::array<double, 2> y{};
  for (double t : ts) {
    if (t < r_from - 1e-14 || t > r_to + 1e-14) continue;
    if (!r.empty() && t <= r.back() + 1e-13 * std::max(1.0, std::abs(t))) continue;
    traj.eval(t, y);
    r.push_back(t);
    u.push_back(scale * y[0]);
    v.push_back(scale * y[1]);
  }
}

double residual_of(const DenseTrajectory& traj, const Rhs2& rhs, double scale_state,
                   double scale_ref, std::size_t skip_last = 0) {
  double worst = 0.0;
  std::array<double, 2> y{}, dy{}, f{};
  std::size_t count = traj.steps.size() > skip_last ? traj.steps.size() - skip_last : 0;
  for (std::size_t si = 0; si < count; ++si) {
    const auto& s = traj.steps[si];
    for (double th : {0.31, 0.73}) {
      double t = s.t0 + th * s.h;
      s.eval(t, y);
      s.eval_deriv(t, dy);
      y[0] *= scale_state;
      y[1] *= scale_state;
      dy[0] *= scale_state;
      dy[1] *= scale_state;
      rhs(t, y, f);
      double defect = std::max(std::abs(dy[0] - f[0]), std::abs(dy[1] - f[1]));
      double ref = std::abs(y[0]) + std::abs(y[1]) + scale_ref;
      worst = std::max(worst, defect / ref);
    }
  }
  return worst;
}

int count_sign_changes(const std::vector<double>& x, double grazing) {
  int count = 0;
  double last = 0.0;
  for (double xi : x) {
    if (std::abs(xi) <= grazing) continue;
    if (last != 0.0 && last * xi < 0.0) ++count;
    last = xi;
  }
  return count;
}

double fit_decay_rate(const std::vector<double>& r, const std::vector<double>& v, double amp_lo,
                      double amp_hi, double r_min = 0.0) {
  // The far field carries the modified-Bessel 1/r prefactor, so fit
  // log(r |v|) = const - rate * r on the window amp_lo <= |v| <= amp_hi.
  double s1 = 0, sx = 0, sxx = 0, sy = 0, sxy = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    double a = std::abs(v[i]);
    if (a < amp_lo || a > amp_hi || r[i] < r_min || r[i] <= 0.0) continue;
    double x = r[i], y = std::log(a * r[i]);
    s1 += 1;
    sx += x;
    sxx += x * x;
    sy += y;
    sxy += x * y;
  }
  if (s1 < 3) return std::numeric_limits<double>::quiet_NaN();
  return -(s1 * sxy - sx * sy) / (s1 * sxx - sx * sx);
}

double last_sign_change_radius(const std::vector<double>& r, const std::vector<double>& x,
                               double grazing) {
  double last = 0.0, where = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) <= grazing) continue;
    if (last != 0.0 && last * x[i] < 0.0) where = r[i];
    last = x[i];
  }
  return where;
}

enum class Side { Under, Over, Exact };

/// Shooting dichotomy for branch n.  Below x_n the trajectory is captured by
/// a center (0, +-v*) with fewer than n sign changes of v and drifts there
/// until rmax; at or above x_n it either records its n-th crossing or blows
/// up.  "Over" is therefore (nodes_v >= n) or blowup, "Under" is capture.
Side side_of(SolitonClass c) {
  switch (c) {
    case SolitonClass::UDominantBlowup: return Side::Over;
    case SolitonClass::VSignExit: return Side::Over;
    case SolitonClass::Localized: return Side::Exact;
    default: return Side::Under;
  }
}

}  // namespace

SolitonProfile integrate_soler(double omega, double x0, const Nonlinearity& nl, double rmax,
                               const ShootingOptions& opts) {
  if (!(omega > 0.0) || !(omega < 1.0))
    throw std::invalid_argument("integrate_soler: omega must lie in (0, 1)");
  if (x0 < 0.0) throw std::invalid_argument("integrate_soler: x0 must be nonnegative");

  SolitonProfile prof;
  prof.omega = omega;
  prof.x0 = x0;
  prof.decay_tol_used = opts.decay_tol;
  prof.blowup_factor_used = opts.blowup_factor;
  if (rmax <= 0.0) rmax = auto_rmax(omega, opts);

  if (x0 == 0.0) {  // trivial zero solution
    prof.r = {0.0, rmax};
    prof.u = {0.0, 0.0};
    prof.v = {0.0, 0.0};
    prof.classification = SolitonClass::Localized;
    return prof;
  }

  Rhs2 rhs = soler_rhs(omega, nl);
  ShotResult shot = shoot(rhs, kSeriesStart, soler_start(omega, x0, nl), rmax, x0, opts,
                          opts.node_budget);
  prof.classification = shot.cls;
  prof.nodes_u = shot.nodes_u;
  prof.nodes_v = shot.nodes_v;
  append_samples(shot.traj, kSeriesStart, shot.r_stop, 1.0, prof.r, prof.u, prof.v);
  std::size_t skip = (shot.cls == SolitonClass::UDominantBlowup) ? 2 : 0;
  prof.residual_max_scaled = residual_of(shot.traj, rhs, 1.0, x0, skip);
  if (shot.cls == SolitonClass::Localized) {
    double peak = 0.0;
    for (std::size_t i = 0; i < prof.r.size(); ++i)
      peak = std::max(peak, std::abs(prof.v[i]));
    double r_fit = last_sign_change_radius(prof.r, prof.v, opts.grazing_tol) + 2.0;
    prof.decay_rate = fit_decay_rate(prof.r, prof.v, 1e-7 * peak, 1e-2 * peak, r_fit);
  }
  return prof;
}

namespace {

/// Bisection on x0 between an Under and an Over outcome for branch `n`,
/// followed by a matched backward tail.  Shared by the flat and the
/// Schwarzschild searches; `make_start` produces the initial state.
SolitonProfile shoot_branch(const Rhs2& rhs, double r_start,
                            const std::function<std::array<double, 2>(double)>& make_start,
                            double omega, int n, double rmax, const ShootingOptions& opts,
                            double tail_rate, double tail_ratio_u) {
  auto outcome = [&](double x0) -> Side {
    ShotResult s = shoot(rhs, r_start, make_start(x0), rmax, x0, opts, n);
    return side_of(s.cls);
  };

  // Log-spaced scan for an adjacent (Under, Over) pair.
  double lo = 0.0, hi = 0.0;
  Side prev = Side::Over;
  double prev_x = 0.0;
  bool found = false;
  for (int i = 0; i < opts.scan_points && !found; ++i) {
    double x = opts.scan_lo *
               std::pow(opts.scan_hi / opts.scan_lo, double(i) / (opts.scan_points - 1));
    Side s = outcome(x);
    if (prev == Side::Under && s == Side::Over) {
      lo = prev_x;
      hi = x;
      found = true;
    }
    prev = s;
    prev_x = x;
  }
  if (!found)
    throw BracketNotFound("soliton branch " + std::to_string(n) +
                          ": no undershoot/overshoot transition in the x0 scan range");

  for (int it = 0; it < 200 && (hi - lo) > 1e-15 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    Side s = outcome(mid);
    if (s == Side::Exact) {
      lo = hi = mid;
      break;
    }
    if (s == Side::Over)
      hi = mid;
    else
      lo = mid;
  }
  double x_best = 0.5 * (lo + hi);

  // Forward run without the node budget: follow the near-soliton trajectory
  // until the shooting error takes over.
  ShootingOptions fopts = opts;
  fopts.node_budget = std::numeric_limits<int>::max();
  ShotResult fwd = shoot(rhs, r_start, make_start(x_best), rmax, x_best, fopts,
                         std::numeric_limits<int>::max());

  SolitonProfile prof;
  prof.omega = omega;
  prof.x0 = x_best;
  prof.decay_tol_used = opts.decay_tol;
  prof.blowup_factor_used = opts.blowup_factor;

  // Amplitude along the forward trajectory.
  std::vector<double> rr, uu, vv;
  append_samples(fwd.traj, r_start, fwd.r_stop, 1.0, rr, uu, vv);
  double peak = 0.0;
  std::size_t ipeak = 0;
  for (std::size_t i = 0; i < rr.size(); ++i) {
    double a = std::abs(uu[i]) + std::abs(vv[i]);
    if (a > peak) {
      peak = a;
      ipeak = i;
    }
  }
  double amp_min = peak;
  for (std::size_t i = ipeak; i < rr.size(); ++i)
    amp_min = std::min(amp_min, std::abs(uu[i]) + std::abs(vv[i]));

  double amp_switch = std::max({1e-5 * peak, 1e3 * amp_min, opts.decay_tol});
  amp_switch = std::min(amp_switch, 1e-2 * peak);
  std::size_t imatch = rr.size() - 1;
  for (std::size_t i = ipeak; i < rr.size(); ++i) {
    if (std::abs(uu[i]) + std::abs(vv[i]) <= amp_switch) {
      imatch = i;
      break;
    }
  }
  double r_match = rr[imatch];
  double v_match = vv[imatch];
  double amp_match = std::abs(uu[imatch]) + std::abs(vv[imatch]);

  // Backward tail on the decaying branch: (u, v) ~ (ratio_u, 1) e^{-rate r}.
  double eps_far = 1e-12 * std::max(1.0, x_best);
  double r_far = r_match + std::log(std::max(amp_match / eps_far, 10.0)) / tail_rate;
  double sgn = (v_match >= 0.0) ? 1.0 : -1.0;
  std::array<double, 2> y_far = {sgn * eps_far * tail_ratio_u / (1.0 + tail_ratio_u),
                                 sgn * eps_far / (1.0 + tail_ratio_u)};
  OdeOptions bopts;
  bopts.rel_tol = opts.rel_tol;
  bopts.abs_tol = 1e-20 * std::max(1.0, x_best);
  bopts.h_init = 1e-3;
  bopts.h_max = std::max(1.0, r_far / 200.0);
  DenseTrajectory bwd = integrate_dense(rhs, r_far, y_far, r_match, bopts);

  std::array<double, 2> yb{};
  bwd.eval(r_match, yb);
  if (std::abs(yb[1]) < 1e-300)
    throw NumericalError("soliton tail matching failed (degenerate backward solution)");
  double scale = v_match / yb[1];

  prof.r.assign(rr.begin(), rr.begin() + imatch + 1);
  prof.u.assign(uu.begin(), uu.begin() + imatch + 1);
  prof.v.assign(vv.begin(), vv.begin() + imatch + 1);
  {
    std::vector<double> rt, ut, vt;
    append_samples(bwd, r_match, r_far, scale, rt, ut, vt);  // bwd runs right to left
    std::vector<std::size_t> order(rt.size());
    for (std::size_t i = 0; i < rt.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rt[a] < rt[b]; });
    for (std::size_t i : order) {
      if (rt[i] <= prof.r.back() + 1e-12) continue;
      prof.r.push_back(rt[i]);
      prof.u.push_back(ut[i]);
      prof.v.push_back(vt[i]);
    }
  }

  prof.nodes_u = count_sign_changes(prof.u, opts.grazing_tol);
  prof.nodes_v = count_sign_changes(prof.v, opts.grazing_tol);
  double r_fit = last_sign_change_radius(prof.r, prof.v, opts.grazing_tol) + 2.0;
  prof.decay_rate =
      fit_decay_rate(prof.r, prof.v, 0.3 * eps_far, 1e-2 * peak, std::max(r_fit, r_match));
  prof.residual_max_scaled = std::max(
      residual_of(fwd.traj, rhs, 1.0, x_best, 1),  // forward part, capture step excluded
      residual_of(bwd, rhs, scale, x_best));       // matched tail
  prof.classification = SolitonClass::Localized;
  return prof;
}

void check_les4_hypotheses(double omega, const Nonlinearity& nl) {
  if (std::abs(nl.g(0.0)) > 1e-12)
    throw HypothesisUnmet("nonlinearity: g(0) != 0");
  double smax = 10.0 * std::pow(1.0 + omega, 1.0 / (std::isnan(nl.theta) ? 1.0 : nl.theta));
  double prev = 0.0;
  bool exceeds = false;
  for (int i = 1; i <= 64; ++i) {
    double s = smax * i / 64.0;
    double gs = nl.g(s);
    if (gs < prev - 1e-12 * std::abs(prev))
      throw HypothesisUnmet("nonlinearity: g not nondecreasing on the sampled range");
    prev = gs;
    if (gs > 1.0 + omega) exceeds = true;
  }
  if (!exceeds)
    throw HypothesisUnmet("nonlinearity: g does not exceed 1 + omega on the sampled range");
  for (int i = 1; i <= 8; ++i) {
    if (nl.g(-smax * i / 8.0) > 1e-12)
      throw HypothesisUnmet("nonlinearity: g positive at negative arguments");
  }
}

}  // namespace

SolitonProfile find_ground(double omega, const Nonlinearity& nl, const ShootingOptions& opts) {
  return find_excited(omega, nl, 1, opts);
}

SolitonProfile find_excited(double omega, const Nonlinearity& nl, int n,
                            const ShootingOptions& opts) {
  if (!(omega > 0.0) || !(omega < 1.0))
    throw std::invalid_argument("find_excited: omega must lie in (0, 1)");
  if (n < 1) throw std::invalid_argument("find_excited: branch index must be >= 1");
  check_les4_hypotheses(omega, nl);
  double rmax = auto_rmax(omega, opts);
  double mu = std::sqrt(1.0 - omega * omega);
  double ratio_u = (1.0 - omega) / mu;  // decaying-mode slope of u against v
  Rhs2 rhs = soler_rhs(omega, nl);
  auto start = [&](double x0) { return soler_start(omega, x0, nl); };
  return shoot_branch(rhs, kSeriesStart, start, omega, n, rmax, opts, mu, ratio_u);
}

CompactSupportResult compact_support_criterion(const Nonlinearity& nl) {
  // Hypotheses: g < 0 and nondecreasing on the sampled range (0, 1).
  double prev = -std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 256; ++i) {
    double s = double(i) / 256.0;
    double gs = nl.g(s);
    if (!(gs < 0.0))
      throw HypothesisUnmet("compact_support_criterion: g must be negative on (0, 1)");
    if (gs < prev - 1e-12 * std::abs(prev))
      throw HypothesisUnmet("compact_support_criterion: g must be nondecreasing on (0, 1)");
    prev = gs;
  }

  // G(s) = -int_0^s g via double-exponential quadrature (the integrand may
  // carry an integrable singularity at the origin), then int_0^1 ds / G over
  // dyadic segments [2^-k-1, 2^-k] from the right.
  auto G_of = [&](double s) {
    // Near the origin evaluate g at the cancellation-free endpoint distance.
    return integrate_tanh_sinh(
        std::function<double(double, double)>(
            [&](double x, double d) { return -nl.g(x < 0.5 * s ? d : x); }),
        0.0, s, 1e-14);
  };

  CompactSupportResult res;
  double total = 0.0;
  double prev_seg = std::numeric_limits<double>::infinity();
  int flat_run = 0;
  const int kMaxDyads = 600;
  double seg = 0.0;
  for (int k = 0; k < kMaxDyads; ++k) {
    double b = std::pow(2.0, -k), a = 0.5 * b;
    seg = integrate_gauss([&](double s) { return 1.0 / G_of(s); }, a, b, 16);
    total += seg;
    if (seg >= 0.98 * prev_seg) {
      if (++flat_run >= 8 && k >= 16) return res;  // divergent: unbounded support
    } else {
      flat_run = 0;
    }
    if (seg < 1e-13 * std::max(total, 1.0) && k >= 8) {
      // Convergent; extrapolate the geometric tail.
      double q = seg / prev_seg;
      if (q < 0.95) total += seg * q / (1.0 - q);
      res.bounded = true;
      res.integral = total;
      return res;
    }
    prev_seg = seg;
  }
  // Slowly converging but decreasing tail: extrapolate.
  double q = seg / prev_seg;
  if (q < 0.98) {
    res.bounded = true;
    res.integral = total + seg * q / (1.0 - q);
  }
  return res;
}

SolitonProfile integrate_schwarzschild(const SchwarzschildSetup& setup, double x0, double rmax,
                                       const ShootingOptions& opts) {
  if (!(setup.r0 > 1.0))
    throw std::invalid_argument("schwarzschild: r0 must exceed the horizon radius 1");
  if (!(x0 > 0.0)) throw std::invalid_argument("schwarzschild: x0 must be positive");
  const double omega = setup.omega, lambda = setup.lambda;
  Rhs2 rhs = [omega, lambda](double r, const std::array<double, 2>& y,
                             std::array<double, 2>& dy) {
    const double u = y[0], v = y[1];
    const double f = 1.0 - 1.0 / r, sf = std::sqrt(f);
    const double gs = lambda * (v * v - u * u);
    dy[0] = (v * (gs - (sf - omega)) - (u / r) * (f + sf)) / f;
    dy[1] = (u * (gs - (sf + omega)) - (v / r) * (f - sf)) / f;
  };

  SolitonProfile prof;
  prof.omega = omega;
  prof.x0 = x0;
  prof.decay_tol_used = opts.decay_tol;
  prof.blowup_factor_used = opts.blowup_factor;
  if (rmax <= 0.0) rmax = setup.r0 + auto_rmax(omega, opts);

  ShotResult shot = shoot(rhs, setup.r0, {-x0, x0}, rmax, x0, opts, opts.node_budget);
  prof.classification = shot.cls;
  prof.nodes_u = shot.nodes_u;
  prof.nodes_v = shot.nodes_v;
  append_samples(shot.traj, setup.r0, shot.r_stop, 1.0, prof.r, prof.u, prof.v);
  prof.residual_max_scaled = residual_of(shot.traj, rhs, 1.0, x0);
  return prof;
}

SolitonProfile find_schwarzschild_branch(const SchwarzschildSetup& setup,
                                         const ShootingOptions& opts) {
  if (!(setup.r0 > 1.0))
    throw std::invalid_argument("schwarzschild: r0 must exceed the horizon radius 1");
  const double omega = setup.omega, lambda = setup.lambda;
  Rhs2 rhs = [omega, lambda](double r, const std::array<double, 2>& y,
                             std::array<double, 2>& dy) {
    const double u = y[0], v = y[1];
    const double f = 1.0 - 1.0 / r, sf = std::sqrt(f);
    const double gs = lambda * (v * v - u * u);
    dy[0] = (v * (gs - (sf - omega)) - (u / r) * (f + sf)) / f;
    dy[1] = (u * (gs - (sf + omega)) - (v / r) * (f - sf)) / f;
  };
  double rmax = setup.r0 + auto_rmax(omega, opts);
  double mu = std::sqrt(std::max(1.0 - omega * omega, 1e-8));
  double ratio_u = (1.0 - omega) / mu;
  auto start = [&](double x0) { return std::array<double, 2>{-x0, x0}; };
  return shoot_branch(rhs, setup.r0, start, omega, 1, rmax, opts, mu, ratio_u);
}

SolitonProfile integrate_flat_from(double omega, const Nonlinearity& nl, double r0, double u0,
                                   double v0, double rmax, const ShootingOptions& opts) {
  Rhs2 rhs = soler_rhs(omega, nl);
  SolitonProfile prof;
  prof.omega = omega;
  prof.x0 = std::abs(v0);
  prof.decay_tol_used = opts.decay_tol;
  prof.blowup_factor_used = opts.blowup_factor;
  ShotResult shot = shoot(rhs, r0, {u0, v0}, rmax, std::max(std::abs(v0), 1e-12), opts,
                          opts.node_budget);
  prof.classification = shot.cls;
  prof.nodes_u = shot.nodes_u;
  prof.nodes_v = shot.nodes_v;
  append_samples(shot.traj, r0, shot.r_stop, 1.0, prof.r, prof.u, prof.v);
  prof.residual_max_scaled = residual_of(shot.traj, rhs, 1.0, prof.x0);
  return prof;
}

NlsProfile nls_ground_state(const Nonlinearity& nl, const ShootingOptions& opts) {
  // -1/2 (phi'' + 2 phi'/r) + phi - g(phi^2) phi = 0 as a first-order system.
  auto g = nl.g;
  Rhs2 rhs = [g](double r, const std::array<double, 2>& y, std::array<double, 2>& dy) {
    dy[0] = y[1];
    dy[1] = 2.0 * (y[0] - g(y[0] * y[0]) * y[0]) - 2.0 * y[1] / r;
  };
  const double rmax = (opts.rmax > 0.0) ? opts.rmax : 60.0;

  auto start = [&](double eta) {
    double q0 = 2.0 * (eta - g(eta * eta) * eta);
    return std::array<double, 2>{eta, q0 * kSeriesStart / 3.0};
  };

  // Shot outcome: Over when phi crosses zero, Under when phi turns back up.
  auto outcome = [&](double eta, DenseTrajectory* keep) -> Side {
    Side side = Side::Under;  // no event: captured by the phi = 1 center
    OdeOptions oopts;
    oopts.rel_tol = opts.rel_tol;
    oopts.abs_tol = 1e-18 * std::max(1.0, eta);
    oopts.h_init = 1e-6;
    oopts.h_max = 0.5;
    auto res = integrate_ode(rhs, kSeriesStart, start(eta), rmax, oopts,
                             [&](const DenseStep& s, const std::array<double, 2>& y) {
                               if (keep) keep->steps.push_back(s);
                               if (y[0] <= 0.0) {
                                 side = Side::Over;
                                 return false;
                               }
                               if (y[1] > 1e-12 * eta && y[0] < 0.9 * eta) {
                                 side = Side::Under;
                                 return false;
                               }
                               if (y[0] + std::abs(y[1]) < opts.decay_tol) {
                                 side = Side::Exact;
                                 return false;
                               }
                               return true;
                             });
    if (keep) {
      keep->status = res.status;
      keep->t_end = res.t_end;
      keep->y_end = res.y_end;
    }
    return side;
  };

  double lo = 0.0, hi = 0.0;
  Side prev = Side::Over;
  double prev_x = 0.0;
  bool found = false;
  for (int i = 0; i < opts.scan_points && !found; ++i) {
    double x = 0.2 * std::pow(500.0, double(i) / (opts.scan_points - 1));
    Side s = outcome(x, nullptr);
    if (prev == Side::Under && s == Side::Over) {
      lo = prev_x;
      hi = x;
      found = true;
    }
    prev = s;
    prev_x = x;
  }
  if (!found) throw BracketNotFound("nls_ground_state: no shooting bracket found");
  for (int it = 0; it < 200 && (hi - lo) > 1e-15 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    Side s = outcome(mid, nullptr);
    if (s == Side::Over)
      hi = mid;
    else
      lo = mid;
  }
  double eta = 0.5 * (lo + hi);

  DenseTrajectory fwd;
  outcome(eta, &fwd);

  NlsProfile prof;
  prof.phi0 = eta;
  std::vector<double> rr, pp, dd;
  {
    std::array<double, 2> y{};
    for (const auto& s : fwd.steps) {
      for (double th : {0.0, 0.5}) {
        double t = s.t0 + th * s.h;
        s.eval(t, y);
        rr.push_back(t);
        pp.push_back(y[0]);
        dd.push_back(y[1]);
      }
    }
  }
  // Keep the clean monotone part, then attach the exponential tail.
  double amp_min = eta;
  std::size_t imin = 0;
  for (std::size_t i = 0; i < rr.size(); ++i) {
    if (std::abs(pp[i]) < amp_min) {
      amp_min = std::abs(pp[i]);
      imin = i;
    }
  }
  double amp_switch = std::min(1e-2 * eta, std::max({1e-5 * eta, 1e3 * amp_min, 1e-14}));
  std::size_t imatch = imin;
  for (std::size_t i = 0; i < rr.size(); ++i) {
    if (std::abs(pp[i]) <= amp_switch) {
      imatch = i;
      break;
    }
  }
  double r_match = rr[imatch];
  const double root2 = std::sqrt(2.0);
  double eps_far = 1e-13 * eta;
  double r_far = r_match + std::log(std::max(std::abs(pp[imatch]) / eps_far, 10.0)) / root2;
  OdeOptions bopts;
  bopts.rel_tol = opts.rel_tol;
  bopts.abs_tol = 1e-20 * eta;
  bopts.h_init = 1e-3;
  bopts.h_max = 1.0;
  DenseTrajectory bwd = integrate_dense(
      rhs, r_far, {eps_far, -(root2 + 1.0 / r_far) * eps_far}, r_match, bopts);
  std::array<double, 2> yb{};
  bwd.eval(r_match, yb);
  double scale = pp[imatch] / yb[0];

  prof.r.assign(rr.begin(), rr.begin() + imatch + 1);
  prof.phi.assign(pp.begin(), pp.begin() + imatch + 1);
  prof.dphi.assign(dd.begin(), dd.begin() + imatch + 1);
  {
    std::vector<std::pair<double, std::array<double, 2>>> tail;
    std::array<double, 2> y{};
    for (const auto& s : bwd.steps) {
      for (double th : {0.0, 0.5}) {
        double t = s.t0 + th * s.h;
        if (t <= r_match + 1e-12) continue;
        s.eval(t, y);
        tail.push_back({t, {scale * y[0], scale * y[1]}});
      }
    }
    std::sort(tail.begin(), tail.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [t, y2] : tail) {
      if (t <= prof.r.back() + 1e-12) continue;
      prof.r.push_back(t);
      prof.phi.push_back(y2[0]);
      prof.dphi.push_back(y2[1]);
    }
  }
  prof.decay_rate = fit_decay_rate(prof.r, prof.phi, 1e-7 * eta, 1e-2 * eta);
  return prof;
}

namespace {

/// Cubic Hermite interpolation on sample arrays with derivatives.
double hermite_eval(const std::vector<double>& x, const std::vector<double>& y,
                    const std::vector<double>& dy, double t) {
  if (t <= x.front()) return y.front();
  if (t >= x.back()) return y.back();
  auto it = std::upper_bound(x.begin(), x.end(), t);
  std::size_t hi = static_cast<std::size_t>(it - x.begin());
  std::size_t lo = hi - 1;
  double h = x[hi] - x[lo];
  double s = (t - x[lo]) / h;
  double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  double h10 = s * (1 - s) * (1 - s);
  double h01 = s * s * (3 - 2 * s);
  double h11 = s * s * (s - 1);
  return h00 * y[lo] + h10 * h * dy[lo] + h01 * y[hi] + h11 * h * dy[hi];
}

}  // namespace

RescaleReport nonrel_rescale_check(double eps, const Nonlinearity& nl,
                                   const ShootingOptions& opts) {
  if (!(eps > 1e-12))
    throw std::invalid_argument("nonrel_rescale_check: eps must be positive (omega < 1)");
  if (!(eps <= 0.05))
    throw std::invalid_argument("nonrel_rescale_check: eps must be <= 0.05 (omega near 1)");
  double theta = std::isnan(nl.theta) ? 1.0 : nl.theta;
  if (!(theta > 0.0) || !(theta <= 1.0))
    throw std::invalid_argument("nonrel_rescale_check: theta must lie in (0, 1]");

  const double omega = 1.0 - eps;
  SolitonProfile dirac = find_ground(omega, nl, opts);
  NlsProfile nls = nls_ground_state(nl, opts);

  // Scales: radii by lambda = sqrt(eps), upper by a = eps^{1/(2 theta)},
  // lower by b = a lambda.
  const double lam = std::sqrt(eps);
  const double a = std::pow(eps, 1.0 / (2.0 * theta));
  const double b = a * lam;

  // Derivative samples of (u, v) from the system itself.
  std::vector<double> du(dirac.r.size()), dv(dirac.r.size());
  for (std::size_t i = 0; i < dirac.r.size(); ++i) {
    double u = dirac.u[i], v = dirac.v[i], r = std::max(dirac.r[i], 1e-300);
    double gs = nl.g(v * v - u * u);
    du[i] = -2.0 * u / r + v * (gs - (1.0 - omega));
    dv[i] = u * (gs - (1.0 + omega));
  }

  RescaleReport rep;
  rep.eps = eps;
  rep.amplitude_ratio = dirac.x0 / (a * nls.phi0);

  // L2 distance of the rescaled upper component to the NLS ground state.
  double ybar_max = std::min(lam * dirac.r.back(), nls.r.back());
  const GaussRule& rule = gauss_legendre(6);
  const int cells = 1200;
  double dist2 = 0.0, resid2 = 0.0;
  for (int cell = 0; cell < cells; ++cell) {
    double a1 = ybar_max * cell / cells, b1 = ybar_max * (cell + 1) / cells;
    double mid = 0.5 * (a1 + b1), half = 0.5 * (b1 - a1);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      double yb = mid + half * rule.nodes[q];
      double w = half * rule.weights[q] * yb * yb;
      double r_at = yb / lam;
      double u_at = hermite_eval(dirac.r, dirac.u, du, r_at);
      double v_at = hermite_eval(dirac.r, dirac.v, dv, r_at);
      double fbar = v_at / a;
      double phib = hermite_eval(nls.r, nls.phi, nls.dphi, yb);
      dist2 += w * (fbar - phib) * (fbar - phib);
      // chibar + (i/2) sigma.grad phibar in radial form: ubar + fbar'/2,
      // with v' taken from the system itself at the interpolated state.
      double vprime = u_at * (nl.g(v_at * v_at - u_at * u_at) - (1.0 + omega));
      double ubar = u_at / b;
      double fbar_prime = vprime / (a * lam);
      double z = ubar + 0.5 * fbar_prime;
      resid2 += w * z * z;
    }
  }
  rep.l2_distance = std::sqrt(dist2);
  rep.chi_residual = std::sqrt(resid2);
  return rep;
}

}  // namespace diracgap
