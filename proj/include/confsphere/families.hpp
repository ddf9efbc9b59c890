#pragma once

#include <string>
#include <variant>

#include "confsphere/curve.hpp"
#include "confsphere/jet.hpp"
#include "confsphere/symmetries.hpp"
#include "confsphere/vec.hpp"

namespace confsphere {

/// Projectively parametrized circle X0 + (t U0 + t^2 A0) / (1 + t^2 |A0|^2),
/// |U0| = 1, <U0, A0> = 0.
struct Circle {
  Vec X0, U0, A0;
};

/// e^t cos(ct) P0 + e^t sin(ct) Q0 + R0 with <P0, Q0> = 0 and |P0| = |Q0|.
struct LogSpiral {
  double c;
  Vec P0, Q0, R0;
};

/// Image of a spiral under the special conformal map with parameter B:
/// (Y - |Y|^2 B) / (1 - 2<Y,B> + |B|^2 |Y|^2).
struct TransformedSpiral {
  LogSpiral base;
  Vec B;
};

using SolutionFamily = std::variant<Circle, LogSpiral, TransformedSpiral>;

/// Validating constructors.  Inputs within 1e-12 of the constraints are
/// projected onto them; anything further off throws DomainError.
Circle make_circle(Vec X0, Vec U0, Vec A0);
LogSpiral make_log_spiral(double c, Vec P0, Vec Q0, Vec R0);
TransformedSpiral make_transformed_spiral(LogSpiral base, Vec B);

const char* family_name(const SolutionFamily& f);
int family_dim(const SolutionFamily& f);
double transformed_denominator(const TransformedSpiral& ts, double t);

JetVec eval_position_jet(const SolutionFamily& f, double t, int order = kDefaultJetOrder);
CurveJet eval_jet(const SolutionFamily& f, double t, int order = kDefaultJetOrder);

struct SpiralDerivatives {
  Vec U, A, A1;
};
/// U, A, A' of the spiral from their trigonometric closed forms.
SpiralDerivatives spiral_closed_derivatives(const LogSpiral& s, double t);
/// Acceleration tractor of the spiral from its closed form.
Vec spiral_acceleration_tractor(const LogSpiral& s, double t);

struct TransformedConserved {
  Vec C;
  Vec Y;
  double F_T, F_R, F_D, F_S;
};
/// Closed-form constants of the transformed spiral for the given generators.
TransformedConserved transformed_conserved_report(const TransformedSpiral& ts, const Vec& T,
                                                  const Rotation& R, double a, const Vec& S);

}  // namespace confsphere
