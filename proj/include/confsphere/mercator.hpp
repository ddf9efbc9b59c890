#pragma once

#include <functional>
#include <string>
#include <vector>

#include "confsphere/curve.hpp"
#include "confsphere/errors.hpp"
#include "confsphere/jet.hpp"
#include "confsphere/vec.hpp"

namespace confsphere {

/// Point of the 4n-dimensional phase space: position X, velocity U and their
/// conjugate momenta P and R.
struct PhasePoint {
  Vec X, U, P, R;

  int dim() const { return X.dim(); }
  /// (X, U, P, R) flattened.
  Vec coords() const;
  static PhasePoint from_coords(const Vec& y);
  friend bool operator==(const PhasePoint&, const PhasePoint&) = default;
};

struct Trajectory {
  std::vector<double> t;
  std::vector<PhasePoint> points;
  double step = 0.0;
  std::string method = "rk4";
};

/// The flow hit u^2 below the degeneracy threshold; partial() holds the
/// samples stored before that.
class TrajectoryDegeneracy : public DegeneracyError {
 public:
  TrajectoryDegeneracy(double t, Trajectory partial);
  const Trajectory& partial() const noexcept { return partial_; }

 private:
  Trajectory partial_;
};

inline constexpr double kDegeneracyThreshold = 1e-12;
inline constexpr double kDefaultStep = 1e-3;
inline constexpr int kDefaultStride = 10;

/// Left-hand side C of the Mercator equation dC/dt = 0.
Vec mercator_C(const CurveJet& jet);
/// C as a jet in t, from the position jet (order drops by three).
JetVec mercator_C_jet(const JetVec& position);
/// dC/dt written out as a polynomial in U, A, A', A'' and powers of u.
Vec mercator_expansion(const CurveJet& jet);

struct Lagrangians {
  double L;
  double L1;
};
Lagrangians lagrangians(const CurveJet& jet);

/// A' - 3u^-2 <A,U> A + (3/2) u^-2 |A|^2 U, which vanishes on conformal circles.
Vec circle_residual(const CurveJet& jet);

PhasePoint phase_from_jet(const CurveJet& jet);

struct Acceleration {
  Vec A;
  Vec A1;
};
Acceleration accel_from_phase(const PhasePoint& p);

double hamiltonian(const PhasePoint& p);
/// Hamilton's equations; the result is a tangent vector stored as a PhasePoint.
PhasePoint hamilton_rhs(const PhasePoint& p);

/// Classical RK4 with fixed step h over [0, t_end], storing every stride-th
/// step (and the endpoint).  Throws TrajectoryDegeneracy when u^2 < 1e-12.
Trajectory integrate(const PhasePoint& p0, double t_end, double h = kDefaultStep,
                     int stride = kDefaultStride);

/// Curve jet through the given order along the Hamiltonian flow from p,
/// obtained by Taylor-mode expansion of Hamilton's equations.
CurveJet curve_jet_from_phase(const PhasePoint& p, int order);

using PhaseFunction = std::function<double(const PhasePoint&)>;
/// Canonical Poisson bracket with central differences of step h(1 + |y_i|).
double poisson_bracket_fd(const PhaseFunction& f, const PhaseFunction& g, const PhasePoint& p,
                          double h = 1e-5);

}  // namespace confsphere
