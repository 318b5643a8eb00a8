#include "diracgap/lambda_t.hpp"

#include <cmath>

#include "diracgap/bfgs.hpp"
#include "diracgap/errors.hpp"
#include "diracgap/gap.hpp"
#include "diracgap/quadrature.hpp"
#include "diracgap/radial.hpp"
#include "scalar_root.hpp"

namespace diracgap {

namespace {

using detail::SampledEquation;

LambdaTResult as_lambda_t(const detail::ScalarRootResult& r) {
  LambdaTResult out;
  out.value = r.value;
  out.iterations = r.iterations;
  out.residual = r.residual;
  return out;
}

}  // namespace

LambdaTResult lambda_T(const RadialProfile& phi, const Potential& V,
                       const PhysicalParams& params, const AngularChannel& channel,
                       double rmax, double tol) {
  if (!(rmax > 0.0)) throw std::invalid_argument("lambda_T: rmax must be positive");
  SampledEquation eq;
  eq.c2 = params.c * params.c;
  eq.k2 = V.K2();
  // Strongly graded grid so that r^{gamma-1}-type profiles integrate cleanly.
  auto cells = graded_points(0.0, rmax, 1e-12 * rmax, 420);
  const GaussRule& rule = gauss_legendre(12);
  for (std::size_t cell = 0; cell + 1 < cells.size(); ++cell) {
    double mid = 0.5 * (cells[cell] + cells[cell + 1]);
    double half = 0.5 * (cells[cell + 1] - cells[cell]);
    for (std::size_t g = 0; g < rule.nodes.size(); ++g) {
      double r = mid + half * rule.nodes[g];
      double f = phi.f(r);
      double d = radial_sigma_grad(channel.kappa, f, phi.df(r), r);
      eq.w.push_back(half * rule.weights[g] * r * r);
      eq.phi2.push_back(f * f);
      eq.dphi2.push_back(d * d);
      eq.v.push_back(V(r));
    }
  }
  return as_lambda_t(detail::solve_scalar_root(eq, tol));
}

LambdaTResult lambda_T(const SplineBasis& basis, const Eigen::VectorXd& coeffs,
                       const Potential& V, const PhysicalParams& params,
                       const AngularChannel& channel, double tol) {
  GapAssembler assembler(basis, V, params, channel);
  SampledEquation eq;
  eq.c2 = params.c * params.c;
  eq.k2 = V.K2();
  std::vector<double> f, dkf;
  assembler.profile_on_nodes(coeffs, f, dkf);
  eq.w = assembler.node_w();
  eq.v = assembler.node_V();
  eq.phi2.resize(f.size());
  eq.dphi2.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    eq.phi2[i] = f[i] * f[i];
    eq.dphi2[i] = dkf[i] * dkf[i];
  }
  return as_lambda_t(detail::solve_scalar_root(eq, tol));
}

MinLambdaTResult min_lambda_T(const Potential& V, const PhysicalParams& params,
                              const AngularChannel& channel, const SplineBasis& basis,
                              const MinLambdaTOptions& opts) {
  GapAssembler assembler(basis, V, params, channel);
  const int n = basis.size();

  auto lambda_of = [&](const Eigen::VectorXd& y) -> double {
    SampledEquation eq;
    eq.c2 = params.c * params.c;
    eq.k2 = V.K2();
    std::vector<double> f, dkf;
    assembler.profile_on_nodes(y, f, dkf);
    eq.w = assembler.node_w();
    eq.v = assembler.node_V();
    eq.phi2.resize(f.size());
    eq.dphi2.resize(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      eq.phi2[i] = f[i] * f[i];
      eq.dphi2[i] = dkf[i] * dkf[i];
    }
    return detail::solve_scalar_root(eq, opts.inner_tol).value;
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
    double denom = assembler.form_dlambda(lam, y);
    return (-2.0 / denom) * assembler.apply(lam, y);
  };

  // Ground-shaped start: projection of exp(-rate r) onto the basis.
  double rate = std::max(V.nu(), 5.0 / basis.right());
  Eigen::VectorXd y0 = Eigen::VectorXd::Zero(n);
  {
    const BasisQuadrature& q = basis.quadrature();
    for (std::size_t j = 0; j < q.x.size(); ++j) {
      double target = std::exp(-rate * q.x[j]);
      double w = q.w[j] * q.x[j] * q.x[j];
      for (int a = 0; a <= basis.degree(); ++a) {
        int idx = q.first[j] + a;
        if (idx >= 0 && idx < n) y0[idx] += w * q.val(a, j) * target;
      }
    }
    y0.normalize();
  }

  BfgsOptions bopts;
  bopts.grad_tol = opts.grad_tol;
  bopts.max_iter = opts.max_iter;
  bopts.initial_step = 0.1;
  BfgsResult r = bfgs_minimize(value, gradient, y0, bopts);

  MinLambdaTResult out;
  out.value = r.value;
  out.coefficients = r.x;
  out.grad_norm = r.grad_norm;
  out.iterations = r.iterations;
  out.converged = r.converged;
  return out;
}

}  // namespace diracgap
