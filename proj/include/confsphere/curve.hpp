#pragma once

#include <vector>

#include "confsphere/jet.hpp"
#include "confsphere/vec.hpp"

namespace confsphere {

/// Position and derivatives of a curve in R^n at one parameter value:
/// derivs[0] = X, derivs[1] = U, derivs[2] = A, derivs[3] = A', derivs[4] = A'', ...
struct CurveJet {
  double t = 0.0;
  std::vector<Vec> derivs;

  CurveJet() = default;
  CurveJet(double t_, std::vector<Vec> d);
  static CurveJet from_position_jet(const JetVec& x, double t);

  int dim() const { return derivs.front().dim(); }
  /// Highest stored derivative order.
  int levels() const { return static_cast<int>(derivs.size()) - 1; }
  /// Throws JetOrderError unless X through X^(k) are stored.
  void require(int k, const char* what) const;

  const Vec& X() const { return derivs[0]; }
  const Vec& U() const { return at(1); }
  const Vec& A() const { return at(2); }
  const Vec& A1() const { return at(3); }
  const Vec& A2() const { return at(4); }
  const Vec& at(int k) const;

  double u_sq() const;
  /// Taylor jet of X(t + s) in s with all stored levels.
  JetVec position_jet() const;
};

}  // namespace confsphere
