#pragma once

#include <Eigen/Dense>
#include <optional>
#include <utility>
#include <vector>

#include "diracgap/bspline.hpp"
#include "diracgap/params.hpp"
#include "diracgap/potential.hpp"

namespace diracgap {

/// The lambda-dependent Galerkin matrix of the reduced problem, with entries
///   A_ij(lambda) = int [ c^2 (d_k phi_i)(d_k phi_j) / (lambda + c^2 - V)
///                        + (V + c^2 - lambda) phi_i phi_j ] r^2 dr.
/// Symmetric, banded (half bandwidth = spline degree), and Loewner
/// nonincreasing in lambda.
struct GapMatrix {
  double lambda = 0.0;
  int kappa = -1;
  Eigen::MatrixXd entries;
};

/// Precomputed per-node data for fast reassembly at many trial energies.
class GapAssembler {
public:
  GapAssembler(const SplineBasis& basis, const Potential& V, const PhysicalParams& params,
               const AngularChannel& channel);

  int size() const { return n_; }
  double c() const { return c_; }
  double bracket_floor() const;  // K2 - c^2

  /// Smallest value of lambda + c^2 - V over the quadrature nodes.
  double min_denominator(double lambda) const;

  Eigen::MatrixXd matrix(double lambda) const;          // throws GapCollapse
  double form(double lambda, const Eigen::VectorXd& y) const;        // y^T A(lambda) y
  double form_dlambda(double lambda, const Eigen::VectorXd& y) const;  // y^T A'(lambda) y
  Eigen::VectorXd apply(double lambda, const Eigen::VectorXd& y) const;

  /// Profile values of a coefficient vector on the quadrature nodes.
  void profile_on_nodes(const Eigen::VectorXd& y, std::vector<double>& f,
                        std::vector<double>& dkf) const;

  const std::vector<double>& node_r() const { return r_; }
  const std::vector<double>& node_w() const { return w_; }  // includes r^2
  const std::vector<double>& node_V() const { return v_; }

private:
  int n_ = 0, deg_ = 0;
  double c_ = 1.0, k2_ = 0.0;
  int kappa_ = -1;
  std::vector<double> r_, w_, v_;
  std::vector<int> first_;
  Eigen::MatrixXd val_, dk_;  // (deg+1) x nodes; dk_ holds d_kappa of the basis
};

GapMatrix assemble_gap_matrix(double lambda, const SplineBasis& basis, const Potential& V,
                              const PhysicalParams& params, const AngularChannel& channel);

/// k-th smallest eigenvalue of a symmetric matrix (k is 1-based).
double kth_matrix_eigenvalue(const Eigen::MatrixXd& A, int k);

struct LevelOptions {
  double tol = 1e-9;            // absolute tolerance on lambda
  double bracket_eps = 1e-8;    // offset from K2 - c^2 and c^2
  int max_bisect = 200;
  bool record_history = true;
};

struct GapLevelResult {
  int k = 0;
  int n = 0;
  int kappa = -1;
  double lambda = 0.0;
  double mu_residual = 0.0;
  bool degenerate = false;
  double bracket_lo = 0.0, bracket_hi = 0.0;
  std::vector<std::pair<double, double>> history;  // (lambda, mu_k)
  Eigen::VectorXd coefficients;
};

/// Solves mu_{k,n}(lambda) = 0 by bisection (monotonicity makes the root
/// unique) followed by Newton polishing with the Hellmann-Feynman slope.
/// Throws NoRootInGap when mu_k has constant sign on the bracket.
GapLevelResult solve_level(int k, const SplineBasis& basis, const Potential& V,
                           const PhysicalParams& params, const AngularChannel& channel,
                           const LevelOptions& opts = {});

struct ConvergenceResult {
  std::vector<int> sizes;
  std::vector<double> lambdas;
  double error_estimate = 0.0;  // lambda_{k,n} - lambda_{k,last}
};

/// Runs solve_level over a strictly nested basis sequence and reports the
/// nonincreasing eigenvalue sequence with the a-posteriori estimate
/// lambda_{k,n} - lambda_{k,2n} from the last pair.
ConvergenceResult converge_levels(int k, const std::vector<SplineBasis>& bases,
                                  const Potential& V, const PhysicalParams& params,
                                  const AngularChannel& channel, const LevelOptions& opts = {});

/// Exact Dirac-Coulomb level (point nucleus, coupling nu, channel kappa,
/// k-th level of the channel); used for grid sizing and as a reference.
double coulomb_dirac_level(double nu, double c, int kappa, int k);

/// Radius beyond which the k-th bound profile is below ~1e-13 of its scale.
double suggest_rmax(const Potential& V, const PhysicalParams& params,
                    const AngularChannel& channel, int k);

struct SweepPoint {
  double c = 0.0;
  double lambda = 0.0;
  double mu = 0.0;  // lambda - c^2
};

struct NonrelSweepResult {
  std::vector<SweepPoint> points;
  double mu_inf = 0.0;  // fit mu(c) = mu_inf + slope / c^2
  double slope = 0.0;
};

struct NonrelOptions {
  int n = 240;
  int degree = 4;
  double h0_frac = 1e-6;
  LevelOptions level;
};

/// Shifted-eigenvalue sweep lambda_k(c) - c^2 over increasing speeds of
/// light, with the 1/c^2 Richardson fit of the nonrelativistic limit.
NonrelSweepResult nonrel_sweep(const std::vector<double>& cs, const Potential& V,
                               const AngularChannel& channel, int k,
                               const NonrelOptions& opts = {});

}  // namespace diracgap
