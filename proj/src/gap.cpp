#include "diracgap/gap.hpp"

#include <algorithm>
#include <cmath>

#include "diracgap/errors.hpp"
#include "diracgap/radial.hpp"

namespace diracgap {

std::vector<double> radial_sigma_grad(int kappa, const std::vector<double>& f,
                                      const std::vector<double>& df,
                                      const std::vector<double>& r) {
  if (f.size() != df.size() || f.size() != r.size())
    throw std::invalid_argument("radial_sigma_grad: mismatched sample arrays");
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    out[i] = radial_sigma_grad(kappa, f[i], df[i], r[i]);
  return out;
}

GapAssembler::GapAssembler(const SplineBasis& basis, const Potential& V,
                           const PhysicalParams& params, const AngularChannel& channel)
    : n_(basis.size()), deg_(basis.degree()), c_(params.c), k2_(V.K2()), kappa_(channel.kappa) {
  const BasisQuadrature& q = basis.quadrature();
  const std::size_t nn = q.x.size();
  r_.resize(nn);
  w_.resize(nn);
  v_.resize(nn);
  first_ = q.first;
  val_ = q.val;
  dk_.resize(deg_ + 1, nn);
  for (std::size_t j = 0; j < nn; ++j) {
    const double r = q.x[j];
    r_[j] = r;
    w_[j] = q.w[j] * r * r;
    v_[j] = V(r);
    for (int a = 0; a <= deg_; ++a)
      dk_(a, j) = radial_sigma_grad(kappa_, q.val(a, j), q.der(a, j), r);
  }
}

double GapAssembler::bracket_floor() const { return k2_ - c_ * c_; }

double GapAssembler::min_denominator(double lambda) const {
  double m = std::numeric_limits<double>::infinity();
  const double c2 = c_ * c_;
  for (std::size_t j = 0; j < r_.size(); ++j) m = std::min(m, lambda + c2 - v_[j]);
  return m;
}

Eigen::MatrixXd GapAssembler::matrix(double lambda) const {
  const double c2 = c_ * c_;
  if (min_denominator(lambda) <= 0.0)
    throw GapCollapse("assemble_gap_matrix: lambda + c^2 - V(r) <= 0 at a quadrature node");
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n_, n_);
  for (std::size_t j = 0; j < r_.size(); ++j) {
    const double denom = lambda + c2 - v_[j];
    const double wk = w_[j] * c2 / denom;
    const double wm = w_[j] * (v_[j] + c2 - lambda);
    const int f = first_[j];
    for (int a = 0; a <= deg_; ++a) {
      const int ia = f + a;
      if (ia < 0 || ia >= n_) continue;
      for (int b = a; b <= deg_; ++b) {
        const int ib = f + b;
        if (ib < 0 || ib >= n_) continue;
        const double contrib = wk * dk_(a, j) * dk_(b, j) + wm * val_(a, j) * val_(b, j);
        A(ia, ib) += contrib;
        if (ib != ia) A(ib, ia) += contrib;
      }
    }
  }
  return A;
}

double GapAssembler::form(double lambda, const Eigen::VectorXd& y) const {
  const double c2 = c_ * c_;
  double sum = 0.0;
  for (std::size_t j = 0; j < r_.size(); ++j) {
    const double denom = lambda + c2 - v_[j];
    if (denom <= 0.0)
      throw GapCollapse("gap form: lambda + c^2 - V(r) <= 0 at a quadrature node");
    const int f = first_[j];
    double fv = 0.0, fd = 0.0;
    for (int a = 0; a <= deg_; ++a) {
      const int ia = f + a;
      if (ia < 0 || ia >= n_) continue;
      fv += y[ia] * val_(a, j);
      fd += y[ia] * dk_(a, j);
    }
    sum += w_[j] * (c2 * fd * fd / denom + (v_[j] + c2 - lambda) * fv * fv);
  }
  return sum;
}

double GapAssembler::form_dlambda(double lambda, const Eigen::VectorXd& y) const {
  const double c2 = c_ * c_;
  double sum = 0.0;
  for (std::size_t j = 0; j < r_.size(); ++j) {
    const double denom = lambda + c2 - v_[j];
    const int f = first_[j];
    double fv = 0.0, fd = 0.0;
    for (int a = 0; a <= deg_; ++a) {
      const int ia = f + a;
      if (ia < 0 || ia >= n_) continue;
      fv += y[ia] * val_(a, j);
      fd += y[ia] * dk_(a, j);
    }
    sum -= w_[j] * (c2 * fd * fd / (denom * denom) + fv * fv);
  }
  return sum;
}

Eigen::VectorXd GapAssembler::apply(double lambda, const Eigen::VectorXd& y) const {
  const double c2 = c_ * c_;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n_);
  for (std::size_t j = 0; j < r_.size(); ++j) {
    const double denom = lambda + c2 - v_[j];
    const int f = first_[j];
    double fv = 0.0, fd = 0.0;
    for (int a = 0; a <= deg_; ++a) {
      const int ia = f + a;
      if (ia < 0 || ia >= n_) continue;
      fv += y[ia] * val_(a, j);
      fd += y[ia] * dk_(a, j);
    }
    const double wk = w_[j] * c2 * fd / denom;
    const double wm = w_[j] * (v_[j] + c2 - lambda) * fv;
    for (int a = 0; a <= deg_; ++a) {
      const int ia = f + a;
      if (ia < 0 || ia >= n_) continue;
      out[ia] += wk * dk_(a, j) + wm * val_(a, j);
    }
  }
  return out;
}

void GapAssembler::profile_on_nodes(const Eigen::VectorXd& y, std::vector<double>& f,
                                    std::vector<double>& dkf) const {
  f.assign(r_.size(), 0.0);
  dkf.assign(r_.size(), 0.0);
  for (std::size_t j = 0; j < r_.size(); ++j) {
    const int fi = first_[j];
    for (int a = 0; a <= deg_; ++a) {
      const int ia = fi + a;
      if (ia < 0 || ia >= n_) continue;
      f[j] += y[ia] * val_(a, j);
      dkf[j] += y[ia] * dk_(a, j);
    }
  }
}

GapMatrix assemble_gap_matrix(double lambda, const SplineBasis& basis, const Potential& V,
                              const PhysicalParams& params, const AngularChannel& channel) {
  GapAssembler assembler(basis, V, params, channel);
  GapMatrix m;
  m.lambda = lambda;
  m.kappa = channel.kappa;
  m.entries = assembler.matrix(lambda);
  return m;
}

double kth_matrix_eigenvalue(const Eigen::MatrixXd& A, int k) {
  if (A.rows() != A.cols()) throw std::invalid_argument("kth_matrix_eigenvalue: square matrix required");
  if (k < 1 || k > A.rows()) throw std::out_of_range("kth_matrix_eigenvalue: k out of range");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[k - 1];
}

namespace {

struct MuEval {
  double mu = 0.0;
  double gap_to_neighbor = 0.0;
  Eigen::VectorXd vec;
};

MuEval eval_mu(const GapAssembler& assembler, double lambda, int k) {
  Eigen::MatrixXd A = assembler.matrix(lambda);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  MuEval out;
  out.mu = es.eigenvalues()[k - 1];
  double gap = std::numeric_limits<double>::infinity();
  if (k - 2 >= 0) gap = std::min(gap, std::abs(out.mu - es.eigenvalues()[k - 2]));
  if (k < A.rows()) gap = std::min(gap, std::abs(es.eigenvalues()[k] - out.mu));
  out.gap_to_neighbor = gap;
  out.vec = es.eigenvectors().col(k - 1);
  return out;
}

}  // namespace

GapLevelResult solve_level(int k, const SplineBasis& basis, const Potential& V,
                           const PhysicalParams& params, const AngularChannel& channel,
                           const LevelOptions& opts) {
  if (k < 1 || k > basis.size()) throw std::out_of_range("solve_level: level index out of range");
  GapAssembler assembler(basis, V, params, channel);
  const double c2 = params.c * params.c;

  GapLevelResult res;
  res.k = k;
  res.n = basis.size();
  res.kappa = channel.kappa;

  double lo = assembler.bracket_floor() + opts.bracket_eps;
  double hi = c2 - opts.bracket_eps;
  if (!(lo < hi)) throw NoRootInGap("solve_level: empty bracket (K2 too close to c^2)");
  res.bracket_lo = lo;
  res.bracket_hi = hi;

  MuEval at_lo = eval_mu(assembler, lo, k);
  MuEval at_hi = eval_mu(assembler, hi, k);
  if (opts.record_history) {
    res.history.emplace_back(lo, at_lo.mu);
    res.history.emplace_back(hi, at_hi.mu);
  }
  // mu_k is strictly decreasing in lambda; a root needs a sign change.
  if (at_lo.mu < 0.0)
    throw NoRootInGap("solve_level: mu_k already negative at the lower bracket end");
  if (at_hi.mu > 0.0)
    throw NoRootInGap("solve_level: mu_k positive on the whole gap (no bound level)");

  const double degeneracy_tol = 1e-12;
  bool degenerate_seen = false;

  // Bisection to width 1e-8 * c^2 (or tol if tighter brackets are needed).
  double coarse_width = std::min(1e-8 * c2, std::max(opts.tol, 1e-13));
  MuEval mid_eval;
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < opts.max_bisect && (hi - lo) > coarse_width; ++it) {
    mid = 0.5 * (lo + hi);
    mid_eval = eval_mu(assembler, mid, k);
    if (opts.record_history) res.history.emplace_back(mid, mid_eval.mu);
    if (mid_eval.gap_to_neighbor < degeneracy_tol) degenerate_seen = true;
    if (mid_eval.mu > 0.0)
      lo = mid;
    else
      hi = mid;
  }

  // Newton polish with the Hellmann-Feynman slope d mu_k / d lambda.
  double lambda = 0.5 * (lo + hi);
  MuEval cur = eval_mu(assembler, lambda, k);
  if (cur.gap_to_neighbor >= degeneracy_tol) {
    for (int step = 0; step < 3; ++step) {
      double slope = assembler.form_dlambda(lambda, cur.vec);
      if (!(slope < 0.0)) break;
      double next = lambda - cur.mu / slope;
      if (next <= res.bracket_lo || next >= res.bracket_hi) break;
      lambda = next;
      cur = eval_mu(assembler, lambda, k);
      if (opts.record_history) res.history.emplace_back(lambda, cur.mu);
      if (std::abs(cur.mu / slope) < 0.1 * opts.tol) break;
    }
  } else {
    degenerate_seen = true;
  }

  // Fall back to bisection when Newton did not reach the requested accuracy.
  double slope = assembler.form_dlambda(lambda, cur.vec);
  if (slope < 0.0 && std::abs(cur.mu / slope) > opts.tol) {
    if (cur.mu > 0.0)
      lo = std::max(lo, lambda);
    else
      hi = std::min(hi, lambda);
    for (int it = 0; it < opts.max_bisect && (hi - lo) > opts.tol; ++it) {
      mid = 0.5 * (lo + hi);
      MuEval e = eval_mu(assembler, mid, k);
      if (opts.record_history) res.history.emplace_back(mid, e.mu);
      if (e.mu > 0.0)
        lo = mid;
      else
        hi = mid;
    }
    lambda = 0.5 * (lo + hi);
    cur = eval_mu(assembler, lambda, k);
  }

  res.lambda = lambda;
  res.mu_residual = cur.mu;
  res.degenerate = degenerate_seen;
  res.coefficients = cur.vec;
  return res;
}

ConvergenceResult converge_levels(int k, const std::vector<SplineBasis>& bases,
                                  const Potential& V, const PhysicalParams& params,
                                  const AngularChannel& channel, const LevelOptions& opts) {
  if (bases.empty()) throw std::invalid_argument("converge_levels: empty basis list");
  for (std::size_t i = 1; i < bases.size(); ++i)
    if (!bases[i].is_refinement_of(bases[i - 1]))
      throw std::invalid_argument("converge_levels: bases must be nested (each refines the previous)");
  ConvergenceResult out;
  for (const auto& b : bases) {
    GapLevelResult r = solve_level(k, b, V, params, channel, opts);
    out.sizes.push_back(b.size());
    out.lambdas.push_back(r.lambda);
  }
  if (out.lambdas.size() >= 2)
    out.error_estimate = out.lambdas[out.lambdas.size() - 2] - out.lambdas.back();
  return out;
}

double coulomb_dirac_level(double nu, double c, int kappa, int k) {
  if (!(nu > 0.0) || !(nu < c * std::abs(double(kappa))))
    throw std::invalid_argument("coulomb_dirac_level: need 0 < nu < c |kappa|");
  if (k < 1) throw std::invalid_argument("coulomb_dirac_level: k must be >= 1");
  const double x = nu / c;
  const double gamma = std::sqrt(double(kappa) * kappa - x * x);
  // Radial quantum number of the k-th level in the channel: kappa < 0 admits
  // n_r = 0, kappa > 0 starts at n_r = 1.
  const int nr = (kappa < 0) ? k - 1 : k;
  const double denom = nr + gamma;
  return c * c / std::sqrt(1.0 + x * x / (denom * denom));
}

double suggest_rmax(const Potential& V, const PhysicalParams& params,
                    const AngularChannel& channel, int k) {
  const double c = params.c;
  double lambda_est;
  if (V.kind() == PotentialKind::Coulomb && V.nu() < c * std::abs(double(channel.kappa))) {
    lambda_est = coulomb_dirac_level(V.nu(), c, channel.kappa, k);
  } else {
    // Hydrogenic estimate from the nonrelativistic principal quantum number.
    const int nr = (channel.kappa < 0) ? k - 1 : k;
    const int npr = nr + std::abs(channel.kappa);
    const double nu = std::max(V.nu(), 1e-3);
    double mu = -0.5 * nu * nu / (npr * npr);
    lambda_est = c * c + mu;
  }
  const double rate = std::sqrt(std::max(c * c * c * c - lambda_est * lambda_est, 1e-12)) / c;
  return std::ceil(30.0 / rate);
}

NonrelSweepResult nonrel_sweep(const std::vector<double>& cs, const Potential& V,
                               const AngularChannel& channel, int k, const NonrelOptions& opts) {
  if (cs.empty()) throw std::invalid_argument("nonrel_sweep: empty c list");
  for (std::size_t i = 1; i < cs.size(); ++i)
    if (!(cs[i] > cs[i - 1])) throw std::invalid_argument("nonrel_sweep: c values must increase");
  if (!(V.nu() < cs.front()))
    throw std::invalid_argument("nonrel_sweep: requires nu < min(c)");

  NonrelSweepResult out;
  for (double c : cs) {
    PhysicalParams params(c);
    double rmax = suggest_rmax(V, params, channel, k);
    SplineBasis basis = graded_radial_basis(opts.n, rmax, opts.degree, opts.h0_frac);
    GapLevelResult r = solve_level(k, basis, V, params, channel, opts.level);
    out.points.push_back({c, r.lambda, r.lambda - c * c});
  }

  // Least squares fit mu(c) = mu_inf + slope / c^2.
  double s1 = 0, sx = 0, sxx = 0, sy = 0, sxy = 0;
  for (const auto& p : out.points) {
    double x = 1.0 / (p.c * p.c);
    s1 += 1.0;
    sx += x;
    sxx += x * x;
    sy += p.mu;
    sxy += x * p.mu;
  }
  double det = s1 * sxx - sx * sx;
  out.mu_inf = (sxx * sy - sx * sxy) / det;
  out.slope = (s1 * sxy - sx * sy) / det;
  return out;
}

}  // namespace diracgap
