#include "diracgap/bessel_transform.hpp"

#include <cmath>
#include <stdexcept>

namespace diracgap {

namespace {

constexpr int kN = 11;  // Chebyshev nodes per cell

/// Chebyshev interpolation on [-1,1] converted to monomial coefficients.
/// Degree 10 keeps the basis-change amplification harmless in double
/// precision while the trig-moment recurrence stays stable.
void fit_monomial(const std::array<double, kN>& values, std::array<double, kN>& mono) {
  // Chebyshev coefficients by the discrete cosine transform on the nodes.
  std::array<double, kN> cheb{};
  for (int k = 0; k < kN; ++k) {
    double sum = 0.0;
    for (int j = 0; j < kN; ++j)
      sum += values[j] * std::cos(k * M_PI * (j + 0.5) / kN);
    cheb[k] = 2.0 / kN * sum;
  }
  cheb[0] *= 0.5;
  // T_k monomial expansion via the recurrence T_{k+1} = 2 t T_k - T_{k-1}.
  double Tprev[kN] = {1.0};    // T_0
  double Tcur[kN] = {0.0, 1.0};  // T_1
  mono.fill(0.0);
  mono[0] += cheb[0];
  for (int i = 0; i < kN; ++i) mono[i] += cheb[1] * Tcur[i];
  for (int k = 2; k < kN; ++k) {
    double Tnext[kN] = {0.0};
    for (int i = 0; i + 1 < kN; ++i) Tnext[i + 1] = 2.0 * Tcur[i];
    for (int i = 0; i < kN; ++i) Tnext[i] -= Tprev[i];
    for (int i = 0; i < kN; ++i) {
      mono[i] += cheb[k] * Tnext[i];
      Tprev[i] = Tcur[i];
      Tcur[i] = Tnext[i];
    }
  }
}

}  // namespace

void sincos_moments(double theta, int kmax, double* S, double* C) {
  if (theta < 0.0) {  // odd/even symmetry
    sincos_moments(-theta, kmax, S, C);
    for (int k = 0; k <= kmax; ++k) S[k] = -S[k];
    return;
  }
  if (theta < 2.0) {
    // Taylor series: sin(theta t) = sum (-1)^m theta^{2m+1} t^{2m+1}/(2m+1)!.
    for (int k = 0; k <= kmax; ++k) {
      double s = 0.0, c = 0.0;
      double term = theta;  // theta^{2m+1}/(2m+1)! at m=0
      double termc = 1.0;   // theta^{2m}/(2m)! at m=0
      for (int m = 0; m < 24; ++m) {
        int js = k + 2 * m + 1;  // power of t multiplying sin term
        int jc = k + 2 * m;
        double sign = (m % 2 == 0) ? 1.0 : -1.0;
        if (js % 2 == 1) {
          // odd power integrates to zero; contributes only to the other parity
        } else {
          s += sign * term * 2.0 / (js + 1);
        }
        if (jc % 2 == 0) c += sign * termc * 2.0 / (jc + 1);
        term *= theta * theta / ((2 * m + 2) * (2 * m + 3));
        termc *= theta * theta / ((2 * m + 1) * (2 * m + 2));
        if (term < 1e-20 && termc < 1e-20 && m > 2) break;
      }
      S[k] = s;
      C[k] = c;
    }
    return;
  }
  // Upward recurrence from the k = 0 moments.
  double st = std::sin(theta), ct = std::cos(theta);
  S[0] = 0.0;                    // odd integrand
  C[0] = 2.0 * st / theta;
  if (kmax >= 1) {
    // S_1 = int t sin = 2 (sin - theta cos)/theta^2
    S[1] = 2.0 * (st - theta * ct) / (theta * theta);
    C[1] = 0.0;
  }
  for (int k = 2; k <= kmax; ++k) {
    // C_k = [t^k sin/theta] - (k/theta) S_{k-1}; S_k = [-t^k cos/theta] + (k/theta) C_{k-1}
    if (k % 2 == 0) {
      C[k] = 2.0 * st / theta - (k / theta) * S[k - 1];
      S[k] = 0.0;
    } else {
      S[k] = -2.0 * ct / theta + (k / theta) * C[k - 1];
      C[k] = 0.0;
    }
  }
}

RadialFilonTable::RadialFilonTable(const std::function<double(double)>& f,
                                   std::vector<double> breakpoints) {
  if (breakpoints.size() < 2)
    throw std::invalid_argument("RadialFilonTable: need at least one cell");
  rmax_ = breakpoints.back();
  std::array<double, kN> nodes;
  for (int j = 0; j < kN; ++j) nodes[j] = std::cos(M_PI * (j + 0.5) / kN);

  cells_.reserve(breakpoints.size() - 1);
  moments_.fill(0.0);
  for (std::size_t c = 0; c + 1 < breakpoints.size(); ++c) {
    Cell cell;
    cell.m = 0.5 * (breakpoints[c] + breakpoints[c + 1]);
    cell.s = 0.5 * (breakpoints[c + 1] - breakpoints[c]);
    std::array<double, kN> vf, vfr, vfr2;
    for (int j = 0; j < kN; ++j) {
      double r = cell.m + cell.s * nodes[j];
      double fv = f(r);
      vf[j] = fv;
      vfr[j] = fv * r;
      vfr2[j] = fv * r * r;
    }
    fit_monomial(vf, cell.poly_f);
    fit_monomial(vfr, cell.poly_fr);
    fit_monomial(vfr2, cell.poly_fr2);
    // Plain power moments, used by the small-p series.
    for (int k = 0; k <= 12; ++k) {
      // int_cell f r^k dr via the monomial fit of f: expand (m + s t)^k.
      double sum = 0.0;
      for (int i = 0; i < kN; ++i) {
        // int_{-1}^{1} t^i (m + s t)^k dt by binomial expansion
        double acc = 0.0;
        double binom = 1.0;
        for (int j = 0; j <= k; ++j) {
          int pw = i + j;
          if (pw % 2 == 0)
            acc += binom * std::pow(cell.s, j) * std::pow(cell.m, k - j) * 2.0 / (pw + 1);
          binom *= double(k - j) / (j + 1);
        }
        sum += cell.poly_f[i] * acc;
      }
      moments_[k] += cell.s * sum;
    }
    cells_.push_back(cell);
  }
}

double RadialFilonTable::power_moment(int k) const {
  if (k < 0 || k > 12) throw std::out_of_range("power_moment: k out of range");
  return moments_[k];
}

double RadialFilonTable::transform_series(int l, double p) const {
  // j_0(x) = 1 - x^2/6 + x^4/120 - x^6/5040 + x^8/362880
  // j_1(x) = x/3 - x^3/30 + x^5/840 - x^7/45360
  const double norm = std::sqrt(2.0 / M_PI);
  const double p2 = p * p, p4 = p2 * p2, p6 = p4 * p2, p8 = p4 * p4;
  if (l == 0) {
    double s = moments_[2] - p2 / 6.0 * moments_[4] + p4 / 120.0 * moments_[6] -
               p6 / 5040.0 * moments_[8] + p8 / 362880.0 * moments_[10] -
               p8 * p2 / 39916800.0 * moments_[12];
    return norm * s;
  }
  double s = p / 3.0 * moments_[3] - p * p2 / 30.0 * moments_[5] + p * p4 / 840.0 * moments_[7] -
             p * p6 / 45360.0 * moments_[9] + p * p8 / 3991680.0 * moments_[11];
  return norm * s;
}

double RadialFilonTable::transform(int l, double p) const {
  if (l != 0 && l != 1) throw std::invalid_argument("RadialFilonTable: l must be 0 or 1");
  if (!(p >= 0.0)) throw std::invalid_argument("RadialFilonTable: p must be nonnegative");
  if (p * rmax_ < 0.5) return transform_series(l, p);

  const double norm = std::sqrt(2.0 / M_PI);
  double total = 0.0;
  double S[kN], C[kN];
  for (const Cell& cell : cells_) {
    const double theta = p * cell.s;
    sincos_moments(theta, kN - 1, S, C);
    const double pm = p * cell.m;
    const double sp = std::sin(pm), cp = std::cos(pm);
    // int_cell P(t) sin(p r) dr = s * sum_k a_k [ sp C_k + cp S_k ]
    // int_cell P(t) cos(p r) dr = s * sum_k a_k [ cp C_k - sp S_k ]
    if (l == 0) {
      // int f j0(pr) r^2 dr = (1/p) int f r sin(pr) dr
      double acc = 0.0;
      for (int k = 0; k < kN; ++k) acc += cell.poly_fr[k] * (sp * C[k] + cp * S[k]);
      total += cell.s * acc / p;
    } else {
      // int f j1(pr) r^2 dr = (1/p^2) int f sin(pr) dr - (1/p) int f r cos(pr) dr
      double acc_s = 0.0, acc_c = 0.0;
      for (int k = 0; k < kN; ++k) {
        acc_s += cell.poly_f[k] * (sp * C[k] + cp * S[k]);
        acc_c += cell.poly_fr[k] * (cp * C[k] - sp * S[k]);
      }
      total += cell.s * (acc_s / (p * p) - acc_c / p);
    }
  }
  return norm * total;
}

}  // namespace diracgap
