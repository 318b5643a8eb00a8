#pragma once

#include <string>
#include <vector>

#include "diracgap/errors.hpp"

namespace diracgap {

enum class PotentialKind { Coulomb, RegularizedCoulomb, Tabulated };

/// Radial electrostatic potential V(r).  The admissible shapes all vanish at
/// infinity and obey -nu/r - K1 <= V <= K2 on the grid used by the solver.
class Potential {
public:
  static Potential coulomb(double nu);
  static Potential regularized_coulomb(double nu, double delta);

  /// Tabulated potential on strictly increasing radii.  Linear interpolation
  /// between samples; constant continuation on the left, a -nu_tail/r tail on
  /// the right so that the value decays to zero.
  static Potential tabulated(std::vector<double> radii, std::vector<double> values);

  /// Reads a two-column whitespace-delimited (radius, value) text file.
  /// Lines starting with '#' are ignored.
  static Potential from_file(const std::string& path);

  double operator()(double r) const;

  PotentialKind kind() const { return kind_; }
  double nu() const { return nu_; }
  double K1() const { return K1_; }
  double K2() const { return K2_; }
  std::string describe() const;

private:
  Potential() = default;

  PotentialKind kind_ = PotentialKind::Coulomb;
  double nu_ = 0.0;
  double delta_ = 0.0;
  double K1_ = 0.0;
  double K2_ = 0.0;
  std::vector<double> radii_, values_;
  double tail_coeff_ = 0.0;  // v(r) ~ tail_coeff / r beyond the last sample
};

}  // namespace diracgap
