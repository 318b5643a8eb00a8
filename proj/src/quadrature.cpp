#include "diracgap/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace diracgap {

namespace {

GaussRule compute_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Legendre value and derivative at x via the three-term recurrence.
  auto legendre = [n](double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    p = p1;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
  };
  // Roots of P_n by Newton from the Chebyshev initial guess.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      legendre(x, p, dp);
      double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(x, p, dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1 || n > 512) throw std::invalid_argument("gauss_legendre: order out of range");
  static std::map<int, GaussRule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
  return it->second;
}

double integrate_gauss(const std::function<double(double)>& f, double a, double b, int n) {
  const GaussRule& rule = gauss_legendre(n);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

namespace {

double adaptive_impl(const std::function<double(double)>& f, double a, double b,
                     double whole, double rel_tol, double budget, int depth, int max_depth) {
  double mid = 0.5 * (a + b);
  double left = integrate_gauss(f, a, mid, 15);
  double right = integrate_gauss(f, mid, b, 15);
  double err = std::abs(left + right - whole);
  if (depth >= max_depth) return left + right;
  // Accept on the local relative test or on the share of the global budget
  // proportional to the interval length; the latter keeps regions that are
  // negligible for the total from being subdivided forever.
  if (err <= budget || err <= rel_tol * std::abs(left + right)) return left + right;
  return adaptive_impl(f, a, mid, left, rel_tol, 0.5 * budget, depth + 1, max_depth) +
         adaptive_impl(f, mid, b, right, rel_tol, 0.5 * budget, depth + 1, max_depth);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  double whole = integrate_gauss(f, a, b, 15);
  double budget = std::max(abs_tol, 0.25 * rel_tol * std::abs(whole));
  return adaptive_impl(f, a, b, whole, rel_tol, budget, 0, max_depth);
}

std::vector<double> graded_points(double a, double b, double h0, int cells) {
  if (!(b > a)) throw std::invalid_argument("graded_points: empty interval");
  if (cells < 1) throw std::invalid_argument("graded_points: need at least one cell");
  double span = b - a;
  if (h0 >= span / cells) {
    // Uniform already satisfies the first-cell request.
    std::vector<double> pts(cells + 1);
    for (int i = 0; i <= cells; ++i) pts[i] = a + span * i / cells;
    pts.front() = a;
    pts.back() = b;
    return pts;
  }
  // Solve h0 * (q^cells - 1) / (q - 1) = span for the growth ratio q > 1.
  double lo = 1.0 + 1e-12, hi = 2.0;
  auto total = [&](double q) { return h0 * std::expm1(cells * std::log(q)) / (q - 1.0); };
  while (total(hi) < span) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (total(mid) < span ? lo : hi) = mid;
  }
  double q = 0.5 * (lo + hi);
  std::vector<double> pts(cells + 1);
  pts[0] = a;
  double h = h0;
  for (int i = 1; i < cells; ++i) {
    pts[i] = pts[i - 1] + h;
    h *= q;
  }
  pts[cells] = b;
  return pts;
}

double integrate_graded_left(const std::function<double(double)>& f, double a, double b,
                             double h0, int cells, int points_per_cell) {
  auto pts = graded_points(a, b, h0, cells);
  double sum = 0.0;
  for (int i = 0; i < cells; ++i) sum += integrate_gauss(f, pts[i], pts[i + 1], points_per_cell);
  return sum;
}

double integrate_tanh_sinh(const std::function<double(double, double)>& f, double a, double b,
                           double rel_tol, int max_level) {
  // x = mid + half tanh((pi/2) sinh t); trapezoid in t, halving h per level.
  // The distance to the nearer endpoint, half (1 -+ tanh u), is evaluated as
  // half * 2 / (e^{2|u|} + 1) to avoid cancellation near the endpoints.
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  const double tmax = 6.5;

  auto eval = [&](double t) -> double {
    double u = 0.5 * M_PI * std::sinh(t);
    double au = std::abs(u);
    double d = (au > 350.0) ? 0.0 : half * 2.0 / (std::exp(2.0 * au) + 1.0);
    if (d <= 0.0) return 0.0;
    double x = (t >= 0.0) ? b - d : a + d;
    double sech = (au > 350.0) ? 0.0 : 1.0 / std::cosh(u);
    double w = half * 0.5 * M_PI * std::cosh(t) * sech * sech;
    if (w == 0.0) return 0.0;
    double fx = f(x, d);
    return std::isfinite(fx) ? fx * w : 0.0;
  };

  double h = tmax;
  double sum = h * eval(0.0);
  double prev = std::numeric_limits<double>::infinity();
  int settled = 0;
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    double add = 0.0;
    for (double t = h; t <= tmax; t += 2.0 * h) add += eval(t) + eval(-t);
    sum = 0.5 * sum + h * add;
    if (std::abs(sum - prev) <= rel_tol * std::abs(sum)) {
      if (++settled >= 2 && level >= 5) break;
    } else {
      settled = 0;
    }
    prev = sum;
  }
  return sum;
}

double integrate_tanh_sinh(const std::function<double(double)>& f, double a, double b,
                           double rel_tol, int max_level) {
  return integrate_tanh_sinh(
      std::function<double(double, double)>([&](double x, double) { return f(x); }), a, b,
      rel_tol, max_level);
}

}  // namespace diracgap
