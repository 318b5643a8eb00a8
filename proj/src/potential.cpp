#include "diracgap/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace diracgap {

Potential Potential::coulomb(double nu) {
  if (!(nu > 0.0)) throw std::invalid_argument("coulomb: nu must be positive");
  Potential p;
  p.kind_ = PotentialKind::Coulomb;
  p.nu_ = nu;
  p.K1_ = 0.0;
  p.K2_ = 0.0;
  return p;
}

Potential Potential::regularized_coulomb(double nu, double delta) {
  if (!(nu > 0.0)) throw std::invalid_argument("regularized_coulomb: nu must be positive");
  if (!(delta > 0.0)) throw std::invalid_argument("regularized_coulomb: delta must be positive");
  Potential p;
  p.kind_ = PotentialKind::RegularizedCoulomb;
  p.nu_ = nu;
  p.delta_ = delta;
  p.K1_ = 0.0;
  p.K2_ = 0.0;
  return p;
}

Potential Potential::tabulated(std::vector<double> radii, std::vector<double> values) {
  if (radii.size() != values.size() || radii.size() < 2)
    throw std::invalid_argument("tabulated: need at least two (r, v) samples");
  for (std::size_t i = 0; i + 1 < radii.size(); ++i)
    if (!(radii[i] < radii[i + 1]))
      throw std::invalid_argument("tabulated: radii must be strictly increasing");
  if (radii.front() < 0.0) throw std::invalid_argument("tabulated: radii must be nonnegative");

  Potential p;
  p.kind_ = PotentialKind::Tabulated;
  p.radii_ = std::move(radii);
  p.values_ = std::move(values);

  // (V2) metadata inferred from the samples: the smallest Coulomb envelope
  // -nu/r below the data, the residual lower defect K1 and the upper bound K2.
  double nu = 0.0, k2 = 0.0;
  for (std::size_t i = 0; i < p.radii_.size(); ++i) {
    if (p.radii_[i] > 0.0) nu = std::max(nu, -p.values_[i] * p.radii_[i]);
    k2 = std::max(k2, p.values_[i]);
  }
  p.nu_ = nu;
  p.K2_ = std::max(0.0, k2);
  double k1 = 0.0;
  for (std::size_t i = 0; i < p.radii_.size(); ++i) {
    double floor = p.radii_[i] > 0.0 ? -nu / p.radii_[i] : p.values_[i];
    k1 = std::max(k1, floor - p.values_[i]);
  }
  p.K1_ = std::max(0.0, k1);
  p.tail_coeff_ = p.values_.back() * p.radii_.back();
  return p;
}

Potential Potential::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open potential file: " + path);
  std::vector<double> r, v;
  std::string line;
  while (std::getline(in, line)) {
    auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    std::istringstream ss(line);
    double ri, vi;
    if (!(ss >> ri >> vi))
      throw std::invalid_argument("malformed line in potential file: " + line);
    r.push_back(ri);
    v.push_back(vi);
  }
  return tabulated(std::move(r), std::move(v));
}

double Potential::operator()(double r) const {
  if (r < 0.0) throw std::invalid_argument("potential evaluated at negative radius");
  switch (kind_) {
    case PotentialKind::Coulomb:
      if (r == 0.0)
        throw SingularEvaluation("Coulomb potential evaluated at r = 0");
      return -nu_ / r;
    case PotentialKind::RegularizedCoulomb:
      return -nu_ / std::max(r, delta_);
    case PotentialKind::Tabulated: {
      if (r <= radii_.front()) return values_.front();
      if (r >= radii_.back()) return tail_coeff_ / r;
      auto it = std::upper_bound(radii_.begin(), radii_.end(), r);
      std::size_t hi = static_cast<std::size_t>(it - radii_.begin());
      std::size_t lo = hi - 1;
      double t = (r - radii_[lo]) / (radii_[hi] - radii_[lo]);
      return (1.0 - t) * values_[lo] + t * values_[hi];
    }
  }
  return 0.0;
}

std::string Potential::describe() const {
  std::ostringstream ss;
  switch (kind_) {
    case PotentialKind::Coulomb:
      ss << "coulomb(nu=" << nu_ << ")";
      break;
    case PotentialKind::RegularizedCoulomb:
      ss << "regularized-coulomb(nu=" << nu_ << ",delta=" << delta_ << ")";
      break;
    case PotentialKind::Tabulated:
      ss << "tabulated(" << radii_.size() << " samples, nu=" << nu_ << ")";
      break;
  }
  return ss.str();
}

}  // namespace diracgap
