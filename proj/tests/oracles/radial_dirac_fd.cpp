#include "oracles/radial_dirac_fd.hpp"

#include <cmath>
#include <stdexcept>

namespace oracle {

namespace {

/// Assembles the interleaved tridiagonal (diag, off) for a given grid count.
/// Ordering: Q_{1/2}, P_1, Q_{3/2}, P_2, ..., P_{N-1}, Q_{N-1/2}; size 2N-1.
void assemble(const RadialDiracFD& op, int N, std::vector<double>& diag,
              std::vector<double>& off) {
  const double h = op.R / N;
  const double c = op.c, c2 = c * c;
  const int size = 2 * N - 1;
  diag.assign(size, 0.0);
  off.assign(size - 1, 0.0);

  // Q node i+1/2 sits at interleaved index 2i; P node i at index 2i-1.
  for (int i = 0; i < N; ++i) {
    double rq = (i + 0.5) * h;
    diag[2 * i] = -c2 + op.V(rq);
  }
  for (int i = 1; i < N; ++i) {
    double rp = i * h;
    diag[2 * i - 1] = c2 + op.V(rp);
  }
  // K_{i+1/2, i}   = c(-1/h + kappa/(2 r_{i+1/2}))  couples Q_{i+1/2} to P_i
  // K_{i+1/2, i+1} = c(+1/h + kappa/(2 r_{i+1/2}))  couples Q_{i+1/2} to P_{i+1}
  for (int i = 0; i < N; ++i) {
    double rq = (i + 0.5) * h;
    double kl = c * (-1.0 / h + op.kappa / (2.0 * rq));
    double kr = c * (1.0 / h + op.kappa / (2.0 * rq));
    if (i >= 1) off[2 * i - 1] = kl;      // (P_i, Q_{i+1/2}) pair
    if (i + 1 <= N - 1) off[2 * i] = kr;  // (Q_{i+1/2}, P_{i+1}) pair
  }
}

/// Sturm count: eigenvalues of the tridiagonal below sigma.
int sturm_count(const std::vector<double>& diag, const std::vector<double>& off, double sigma) {
  int count = 0;
  double d = diag[0] - sigma;
  if (d < 0.0) ++count;
  for (std::size_t i = 1; i < diag.size(); ++i) {
    double b = off[i - 1];
    if (d == 0.0) d = 1e-300;
    d = (diag[i] - sigma) - b * b / d;
    if (d < 0.0) ++count;
  }
  return count;
}

std::vector<double> eigenvalues_in_grid(const RadialDiracFD& op, int N, double lo, double hi,
                                        int max_count, double tol) {
  std::vector<double> diag, off;
  assemble(op, N, diag, off);
  int below_lo = sturm_count(diag, off, lo);
  int below_hi = sturm_count(diag, off, hi);
  int count = std::min(below_hi - below_lo, max_count);
  std::vector<double> out;
  for (int k = 1; k <= count; ++k) {
    double a = lo, b = hi;
    // k-th eigenvalue above lo: find sigma with count(sigma) - below_lo >= k.
    while (b - a > tol) {
      double mid = 0.5 * (a + b);
      if (sturm_count(diag, off, mid) - below_lo >= k)
        b = mid;
      else
        a = mid;
    }
    out.push_back(0.5 * (a + b));
  }
  return out;
}

}  // namespace

std::vector<double> RadialDiracFD::eigenvalues_in(double lo, double hi, int max_count,
                                                  double tol) const {
  return eigenvalues_in_grid(*this, N, lo, hi, max_count, tol);
}

int RadialDiracFD::count_below(double lambda) const {
  std::vector<double> diag, off;
  assemble(*this, N, diag, off);
  double floor = -c * c + 1e-9;
  return sturm_count(diag, off, lambda) - sturm_count(diag, off, floor);
}

double RadialDiracFD::level_richardson(int k) const {
  double lo = -c * c + 1e-9, hi = c * c - 1e-9;
  auto coarse = eigenvalues_in_grid(*this, N / 2, lo, hi, k, 1e-12);
  auto fine = eigenvalues_in_grid(*this, N, lo, hi, k, 1e-12);
  if (int(coarse.size()) < k || int(fine.size()) < k)
    throw std::runtime_error("radial Dirac oracle: fewer levels than requested");
  double lc = coarse[k - 1], lf = fine[k - 1];
  return lf + (lf - lc) / 3.0;  // O(h^2) extrapolation
}

double schrodinger_ground_fd(const std::function<double(double)>& V, int l, double R, int N) {
  auto ground = [&](int n) {
    double h = R / n;
    std::vector<double> diag(n - 1), off(n - 2, -0.5 / (h * h));
    for (int i = 1; i < n; ++i) {
      double r = i * h;
      diag[i - 1] = 1.0 / (h * h) + V(r) + 0.5 * l * (l + 1) / (r * r);
    }
    // Lowest eigenvalue by Sturm bisection.
    double a = -10.0, b = 0.5;
    auto count = [&](double sigma) {
      int cnt = 0;
      double d = diag[0] - sigma;
      if (d < 0) ++cnt;
      for (int i = 1; i < n - 1; ++i) {
        if (d == 0.0) d = 1e-300;
        d = (diag[i] - sigma) - off[i - 1] * off[i - 1] / d;
        if (d < 0) ++cnt;
      }
      return cnt;
    };
    while (count(a) > 0) a *= 2.0;
    for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
      double mid = 0.5 * (a + b);
      (count(mid) >= 1 ? b : a) = mid;
    }
    return 0.5 * (a + b);
  };
  double ec = ground(N / 2), ef = ground(N);
  return ef + (ef - ec) / 3.0;
}

int inertia_count_below(const std::vector<std::vector<double>>& A, double sigma) {
  // LDL^T without pivoting on A - sigma I; negative pivots count eigenvalues
  // below sigma (Sylvester).  Adequate for the small well-separated test
  // matrices this oracle serves.
  std::size_t n = A.size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = A[i][j] - (i == j ? sigma : 0.0);
  int count = 0;
  for (std::size_t k = 0; k < n; ++k) {
    double pivot = m[k][k];
    if (pivot == 0.0) pivot = 1e-300;
    if (pivot < 0.0) ++count;
    for (std::size_t i = k + 1; i < n; ++i) {
      double f = m[i][k] / pivot;
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return count;
}

}  // namespace oracle
