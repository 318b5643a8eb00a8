#pragma once

#include <stdexcept>
#include <string>

namespace diracgap {

/// Base class for failures occurring inside a numerical routine (as opposed
/// to malformed input, which throws std::invalid_argument).
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Potential evaluated at a point where it is singular (Coulomb at r=0).
class SingularEvaluation : public NumericalError {
public:
  explicit SingularEvaluation(const std::string& msg) : NumericalError(msg) {}
};

/// The trial energy makes lambda + c^2 - V(r) nonpositive at a quadrature
/// node, so the matrix of the reduced problem is no longer defined.
class GapCollapse : public NumericalError {
public:
  explicit GapCollapse(const std::string& msg) : NumericalError(msg) {}
};

/// The level equation mu_{k,n}(lambda) = 0 has no root inside the bracket.
class NoRootInGap : public NumericalError {
public:
  explicit NoRootInGap(const std::string& msg) : NumericalError(msg) {}
};

/// A scan failed to bracket the quantity being searched for.
class BracketNotFound : public NumericalError {
public:
  explicit BracketNotFound(const std::string& msg) : NumericalError(msg) {}
};

/// Input data violates the hypotheses of the statement being checked; the
/// computation is skipped rather than failed.
class HypothesisUnmet : public std::runtime_error {
public:
  explicit HypothesisUnmet(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace diracgap
