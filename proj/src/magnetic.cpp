#include "diracgap/magnetic.hpp"

#include <cmath>

#include "diracgap/bfgs.hpp"
#include "diracgap/errors.hpp"
#include "diracgap/quadrature.hpp"
#include "scalar_root.hpp"

namespace diracgap {

double a_B0(double z, double B) {
  if (!(B > 0.0)) throw std::invalid_argument("a_B0: B must be positive");
  // Substituting s = u sqrt(2/B):  a = 2 int_0^inf u e^{-u^2} / sqrt(2u^2/B + z^2) du.
  // The integrand is analytic; a graded composite Gauss rule reaches 1e-13
  // relative with the e^{-u^2} tail cut at u = 7.
  z = std::abs(z);
  const double two_over_B = 2.0 / B;
  auto integrand = [&](double u) {
    return 2.0 * u * std::exp(-u * u) / std::sqrt(two_over_B * u * u + z * z);
  };
  static const std::vector<double> cells = graded_points(0.0, 7.0, 1e-7, 72);
  const GaussRule& rule = gauss_legendre(12);
  double total = 0.0;
  for (std::size_t c = 0; c + 1 < cells.size(); ++c) {
    double mid = 0.5 * (cells[c] + cells[c + 1]), half = 0.5 * (cells[c + 1] - cells[c]);
    for (std::size_t g = 0; g < rule.nodes.size(); ++g)
      total += half * rule.weights[g] * integrand(mid + half * rule.nodes[g]);
  }
  return total;
}

namespace {

/// Per-node data of the 1D functional over a symmetric z-basis; the shared
/// SampledEquation applies with c = 1 and V(z) = -nu a_B0(z).
class LineAssembler {
public:
  LineAssembler(const SplineBasis& basis, double coupling, double B)
      : n_(basis.size()), deg_(basis.degree()) {
    const BasisQuadrature& q = basis.quadrature();
    const std::size_t nn = q.x.size();
    w_ = q.w;
    first_ = q.first;
    val_ = q.val;
    der_ = q.der;
    v_.resize(nn);
    for (std::size_t j = 0; j < nn; ++j) v_[j] = -coupling * a_B0(q.x[j], B);
  }

  int size() const { return n_; }

  detail::SampledEquation equation(const Eigen::VectorXd& y) const {
    detail::SampledEquation eq;
    eq.c2 = 1.0;
    eq.k2 = 0.0;  // the kernel potential is negative, sup V = 0
    eq.w = w_;
    eq.v = v_;
    eq.phi2.resize(w_.size());
    eq.dphi2.resize(w_.size());
    for (std::size_t j = 0; j < w_.size(); ++j) {
      double f = 0.0, d = 0.0;
      for (int a = 0; a <= deg_; ++a) {
        int ia = first_[j] + a;
        if (ia < 0 || ia >= n_) continue;
        f += y[ia] * val_(a, j);
        d += y[ia] * der_(a, j);
      }
      eq.phi2[j] = f * f;
      eq.dphi2[j] = d * d;
    }
    return eq;
  }

  Eigen::MatrixXd matrix(double lambda) const {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n_, n_);
    for (std::size_t j = 0; j < w_.size(); ++j) {
      double denom = lambda + 1.0 - v_[j];
      if (denom <= 0.0)
        throw GapCollapse("magnetic matrix: 1 + lambda + nu a_B0 <= 0 at a node");
      double wk = w_[j] / denom;
      double wm = w_[j] * (v_[j] + 1.0 - lambda);
      for (int a = 0; a <= deg_; ++a) {
        int ia = first_[j] + a;
        if (ia < 0 || ia >= n_) continue;
        for (int b = a; b <= deg_; ++b) {
          int ib = first_[j] + b;
          if (ib < 0 || ib >= n_) continue;
          double contrib = wk * der_(a, j) * der_(b, j) + wm * val_(a, j) * val_(b, j);
          A(ia, ib) += contrib;
          if (ib != ia) A(ib, ia) += contrib;
        }
      }
    }
    return A;
  }

  Eigen::VectorXd apply(double lambda, const Eigen::VectorXd& y) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n_);
    for (std::size_t j = 0; j < w_.size(); ++j) {
      double denom = lambda + 1.0 - v_[j];
      double f = 0.0, d = 0.0;
      for (int a = 0; a <= deg_; ++a) {
        int ia = first_[j] + a;
        if (ia < 0 || ia >= n_) continue;
        f += y[ia] * val_(a, j);
        d += y[ia] * der_(a, j);
      }
      double wk = w_[j] * d / denom;
      double wm = w_[j] * (v_[j] + 1.0 - lambda) * f;
      for (int a = 0; a <= deg_; ++a) {
        int ia = first_[j] + a;
        if (ia < 0 || ia >= n_) continue;
        out[ia] += wk * der_(a, j) + wm * val_(a, j);
      }
    }
    return out;
  }

  double form_dlambda(double lambda, const Eigen::VectorXd& y) const {
    double sum = 0.0;
    for (std::size_t j = 0; j < w_.size(); ++j) {
      double denom = lambda + 1.0 - v_[j];
      double f = 0.0, d = 0.0;
      for (int a = 0; a <= deg_; ++a) {
        int ia = first_[j] + a;
        if (ia < 0 || ia >= n_) continue;
        f += y[ia] * val_(a, j);
        d += y[ia] * der_(a, j);
      }
      sum -= w_[j] * (d * d / (denom * denom) + f * f);
    }
    return sum;
  }

private:
  int n_, deg_;
  std::vector<double> w_, v_;
  std::vector<int> first_;
  Eigen::MatrixXd val_, der_;
};

}  // namespace

LambdaB0Result lambda_B0(const std::function<double(double)>& f,
                         const std::function<double(double)>& df, double zmax,
                         const MagneticParams& params, double tol) {
  detail::SampledEquation eq;
  eq.c2 = 1.0;
  eq.k2 = 0.0;
  auto half_cells = graded_points(0.0, zmax, 1e-6 * zmax, 200);
  const GaussRule& rule = gauss_legendre(10);
  for (std::size_t c = 0; c + 1 < half_cells.size(); ++c) {
    double mid = 0.5 * (half_cells[c] + half_cells[c + 1]);
    double half = 0.5 * (half_cells[c + 1] - half_cells[c]);
    for (std::size_t g = 0; g < rule.nodes.size(); ++g) {
      double z = mid + half * rule.nodes[g];
      for (double sign : {-1.0, 1.0}) {
        double fz = f(sign * z), dz = df(sign * z);
        eq.w.push_back(half * rule.weights[g]);
        eq.phi2.push_back(fz * fz);
        eq.dphi2.push_back(dz * dz);
        eq.v.push_back(-params.nu * a_B0(z, params.B));
      }
    }
  }
  auto r = detail::solve_scalar_root(eq, tol);
  return {r.value, r.iterations, r.residual};
}

LambdaB0Result lambda_B0(const SplineBasis& zbasis, const Eigen::VectorXd& coeffs,
                         const MagneticParams& params, double tol) {
  LineAssembler assembler(zbasis, params.nu, params.B);
  auto r = detail::solve_scalar_root(assembler.equation(coeffs), tol);
  return {r.value, r.iterations, r.residual};
}

SplineBasis default_z_basis(double B, int n, int degree) {
  double zmax = 40.0 / std::sqrt(std::min(B, 1.0));
  double h0 = std::min(0.25 / std::sqrt(B), 1e-3 * zmax);
  return graded_line_basis(n, zmax, degree, h0 / zmax);
}

namespace {

Landau1DResult minimize_c0_coupling(double coupling, double B, const SplineBasis& zbasis,
                                    const C0Options& opts) {
  LineAssembler assembler(zbasis, coupling, B);
  const int n = assembler.size();

  auto lambda_of = [&](const Eigen::VectorXd& y) {
    return detail::solve_scalar_root(assembler.equation(y), opts.inner_tol).value;
  };
  auto value = [&](const Eigen::VectorXd& y) -> double {
    if (y.squaredNorm() < 1e-300) return std::numeric_limits<double>::infinity();
    try {
      return lambda_of(y);
    } catch (const std::exception&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  auto gradient = [&](const Eigen::VectorXd& y) -> Eigen::VectorXd {
    double lam = lambda_of(y);
    return (-2.0 / assembler.form_dlambda(lam, y)) * assembler.apply(lam, y);
  };

  // Even Gaussian start concentrated where the kernel peaks.
  Eigen::VectorXd y0 = Eigen::VectorXd::Zero(n);
  {
    const BasisQuadrature& q = zbasis.quadrature();
    double width = std::max(1.0, 4.0 / std::sqrt(std::min(B, 1.0)));
    for (std::size_t j = 0; j < q.x.size(); ++j) {
      double target = std::exp(-q.x[j] * q.x[j] / (2.0 * width * width));
      for (int a = 0; a <= zbasis.degree(); ++a) {
        int idx = q.first[j] + a;
        if (idx >= 0 && idx < n) y0[idx] += q.w[j] * q.val(a, j) * target;
      }
    }
    y0.normalize();
  }

  BfgsOptions bopts;
  bopts.grad_tol = 0.25 * opts.grad_tol_rel;  // leave headroom for the |c0|-relative check
  bopts.grad_tol_scale = std::max(std::abs(value(y0)), 0.01);
  bopts.max_iter = opts.max_iter;
  bopts.initial_step = 0.1;
  BfgsResult r = bfgs_minimize(value, gradient, y0, bopts);

  Landau1DResult out;
  out.c0 = r.value;
  out.coefficients = r.x;
  out.grad_norm = r.grad_norm;
  out.iterations = r.iterations;
  out.converged = r.grad_norm <= opts.grad_tol_rel * std::max(std::abs(r.value), 1e-3);

  // Tail mass of the minimizer in the outer 10% of the domain.
  const BasisQuadrature& q = zbasis.quadrature();
  double total = 0.0, tail = 0.0;
  double edge = 0.9 * zbasis.right();
  for (std::size_t j = 0; j < q.x.size(); ++j) {
    double f = 0.0;
    for (int a = 0; a <= zbasis.degree(); ++a) {
      int ia = q.first[j] + a;
      if (ia >= 0 && ia < n) f += r.x[ia] * q.val(a, j);
    }
    double m = q.w[j] * f * f;
    total += m;
    if (std::abs(q.x[j]) > edge) tail += m;
  }
  out.tail_mass = tail / total;
  return out;
}

/// True iff the lowest level of the 1D problem has passed below -1 + delta,
/// detected from the sign of mu_1(A(-1 + delta)) without any minimization.
bool level_below_gap(double coupling, double B, int n_basis, double delta = 1e-9) {
  SplineBasis basis = default_z_basis(B, n_basis);
  return landau_min_matrix_eigenvalue(coupling, B, basis, -1.0 + delta) <= 0.0;
}

double critical_B_for_coupling(double coupling, const CriticalFieldOptions& opts) {
  double lo = 0.0, hi = 1.0;
  if (level_below_gap(coupling, hi, opts.n_basis)) {
    // Already out of the gap at B = 1: search downward.
    lo = 1e-6;
    while (level_below_gap(coupling, lo, opts.n_basis)) {
      hi = lo;
      lo *= 0.1;
      if (lo < 1e-12) return 0.0;
    }
  } else {
    lo = 1.0;
    hi = 2.0;
    while (!level_below_gap(coupling, hi, opts.n_basis)) {
      lo = hi;
      hi *= 2.0;
      if (hi > opts.B_max)
        throw NumericalError("critical_field: c0 stays inside the gap up to B_max");
    }
  }
  while (std::log(hi / lo) > opts.rel_tol) {
    double mid = std::sqrt(lo * hi);
    (level_below_gap(coupling, mid, opts.n_basis) ? hi : lo) = mid;
  }
  return std::sqrt(lo * hi);
}

}  // namespace

Landau1DResult minimize_c0(const MagneticParams& params, const SplineBasis& zbasis,
                           const C0Options& opts) {
  return minimize_c0_coupling(params.nu, params.B, zbasis, opts);
}

double landau_min_matrix_eigenvalue(double coupling, double B, const SplineBasis& zbasis,
                                    double lambda) {
  LineAssembler assembler(zbasis, coupling, B);
  Eigen::MatrixXd A = assembler.matrix(lambda);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

CriticalFieldResult critical_field(double nu, const CriticalFieldOptions& opts) {
  if (!(nu > 0.0) || !(nu < 1.0))
    throw std::invalid_argument("critical_field: nu must lie in (0, 1)");
  CriticalFieldResult res;
  res.B_upper = critical_B_for_coupling(nu, opts);
  res.B_lower = critical_B_for_coupling(nu + std::pow(nu, 1.5), opts);
  res.headline = res.B_upper;
  return res;
}

}  // namespace diracgap
