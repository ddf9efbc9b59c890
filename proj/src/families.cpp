#include "confsphere/families.hpp"

#include <cmath>
#include <initializer_list>
#include <string>
#include <type_traits>

#include "confsphere/errors.hpp"

namespace confsphere {

namespace {

constexpr double kProjectionTol = 1e-12;

void check_dims(std::initializer_list<const Vec*> vs, const char* what) {
  const int n = (*vs.begin())->dim();
  if (n < 2) throw DimensionError(std::string(what) + ": dimension must be >= 2");
  for (const Vec* v : vs) {
    if (v->dim() != n) throw DimensionError(std::string(what) + ": parameter dimensions differ");
    if (!v->all_finite()) throw DomainError(std::string(what) + ": non-finite parameter");
  }
}

}  // namespace

Circle make_circle(Vec X0, Vec U0, Vec A0) {
  check_dims({&X0, &U0, &A0}, "circle");
  const double u = norm(U0);
  if (std::abs(u - 1.0) > kProjectionTol) throw DomainError("circle: |U0| must be 1");
  U0 /= u;
  const double ua = dot(U0, A0);
  if (std::abs(ua) > kProjectionTol) throw DomainError("circle: <U0, A0> must vanish");
  A0 -= ua * U0;
  return {std::move(X0), std::move(U0), std::move(A0)};
}

LogSpiral make_log_spiral(double c, Vec P0, Vec Q0, Vec R0) {
  check_dims({&P0, &Q0, &R0}, "spiral");
  if (!std::isfinite(c)) throw DomainError("spiral: c must be finite");
  const double p2 = norm_sq(P0);
  if (!(p2 > 0.0)) throw DomainError("spiral: P0 must be nonzero");
  if (std::abs(dot(P0, Q0)) > kProjectionTol * p2) throw DomainError("spiral: <P0, Q0> must vanish");
  if (std::abs(norm_sq(Q0) - p2) > kProjectionTol * p2)
    throw DomainError("spiral: |P0| and |Q0| must agree");
  Q0 -= (dot(P0, Q0) / p2) * P0;
  Q0 *= std::sqrt(p2 / norm_sq(Q0));
  return {c, std::move(P0), std::move(Q0), std::move(R0)};
}

TransformedSpiral make_transformed_spiral(LogSpiral base, Vec B) {
  if (B.dim() != base.P0.dim()) throw DimensionError("transformed spiral: B dimension differs");
  if (!B.all_finite()) throw DomainError("transformed spiral: non-finite B");
  return {std::move(base), std::move(B)};
}

const char* family_name(const SolutionFamily& f) {
  static const char* names[] = {"circle", "spiral", "transformed"};
  return names[f.index()];
}

int family_dim(const SolutionFamily& f) {
  return std::visit(
      [](const auto& g) {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, Circle>)
          return g.X0.dim();
        else if constexpr (std::is_same_v<G, LogSpiral>)
          return g.P0.dim();
        else
          return g.B.dim();
      },
      f);
}

namespace {

JetVec spiral_jet(const LogSpiral& s, double t, int order) {
  const Jet tt = Jet::variable(t, order);
  const Jet e = exp(tt);
  const Jet ec = e * cos(s.c * tt);
  const Jet es = e * sin(s.c * tt);
  const int n = s.P0.dim();
  JetVec x(n, order);
  for (int i = 0; i < n; ++i) x[i] = s.P0[i] * ec + s.Q0[i] * es + s.R0[i];
  return x;
}

}  // namespace

double transformed_denominator(const TransformedSpiral& ts, double t) {
  const Vec y = spiral_jet(ts.base, t, 0).value();
  return 1.0 - 2.0 * dot(y, ts.B) + norm_sq(ts.B) * norm_sq(y);
}

JetVec eval_position_jet(const SolutionFamily& f, double t, int order) {
  if (order < 0 || order > 12) throw JetOrderError("family jets support orders 0..12");
  if (const auto* c = std::get_if<Circle>(&f)) {
    const Jet s = Jet::variable(t, order);
    const Jet den = 1.0 + norm_sq(c->A0) * (s * s);
    const int n = c->X0.dim();
    JetVec x(n, order);
    for (int i = 0; i < n; ++i) x[i] = c->X0[i] + (c->U0[i] * s + c->A0[i] * (s * s)) / den;
    return x;
  }
  if (const auto* s = std::get_if<LogSpiral>(&f)) return spiral_jet(*s, t, order);
  const auto& ts = std::get<TransformedSpiral>(f);
  const JetVec y = spiral_jet(ts.base, t, order);
  const Jet yy = dot(y, y);
  const Jet den = 1.0 - 2.0 * dot(y, ts.B) + norm_sq(ts.B) * yy;
  if (std::abs(den.value()) < 1e-12)
    throw DomainError("transformed spiral: denominator vanishes at t = " + std::to_string(t));
  const int n = y.dim();
  JetVec x(n, order);
  for (int i = 0; i < n; ++i) x[i] = (y[i] - ts.B[i] * yy) / den;
  return x;
}

CurveJet eval_jet(const SolutionFamily& f, double t, int order) {
  return CurveJet::from_position_jet(eval_position_jet(f, t, order), t);
}

SpiralDerivatives spiral_closed_derivatives(const LogSpiral& s, double t) {
  const double c = s.c, e = std::exp(t), co = std::cos(c * t), si = std::sin(c * t);
  const Vec &P = s.P0, &Q = s.Q0;
  return {e * ((co - c * si) * P + (si + c * co) * Q),
          e * (((1.0 - c * c) * co - 2.0 * c * si) * P + ((1.0 - c * c) * si + 2.0 * c * co) * Q),
          e * (((c * c * c - 3.0 * c) * si + (1.0 - 3.0 * c * c) * co) * P -
               ((c * c * c - 3.0 * c) * co + (3.0 * c * c - 1.0) * si) * Q)};
}

Vec spiral_acceleration_tractor(const LogSpiral& s, double t) {
  const int n = s.P0.dim();
  const double p = norm(s.P0);
  const double r = std::sqrt(s.c * s.c + 1.0);
  const double co = std::cos(s.c * t), si = std::sin(s.c * t);
  Vec a(static_cast<std::size_t>(n + 2));
  a[0] = std::exp(-t) / (p * r);
  for (int i = 0; i < n; ++i) a[1 + i] = -r * (co * s.P0[i] + si * s.Q0[i]) / p;
  a[n + 1] = -std::exp(t) * p * r;
  return a;
}

TransformedConserved transformed_conserved_report(const TransformedSpiral& ts, const Vec& T,
                                                  const Rotation& R, double a, const Vec& S) {
  const LogSpiral& s = ts.base;
  const Vec &P = s.P0, &Q = s.Q0, &R0 = s.R0, &B = ts.B;
  const double c = s.c;
  const double p2 = norm_sq(P), b2 = norm_sq(B);
  const Vec w = b2 * R0 - B;
  const double PR = dot(P, R0), QR = dot(Q, R0), PB = dot(P, B), QB = dot(Q, B);

  Vec C = (2.0 / p2) * ((c * dot(Q, w)) * P - (c * dot(P, w)) * Q - (b2 * p2) * R0 +
                        (2.0 * c * PR * QB - 2.0 * c * QR * PB + (2.0 * dot(R0, B) - 1.0) * p2) * B);
  auto br = [&](const Vec& x, const Vec& y) { return dot(x, R.R() * y); };
  const double FR = c / p2 * br(P, Q) - 2.0 * br(B, R0) + 2.0 * c / p2 * (br(Q, B) * PR - br(P, B) * QR);
  const double FD = -a * (1.0 - 2.0 * dot(R0, B) + 2.0 * c / p2 * (PB * QR - QB * PR));
  Vec Y = (-c * QR / p2) * P + (c * PR / p2) * Q + R0;
  const double FT = -dot(C, T);
  const double FS = 2.0 * dot(S, Y);
  return {std::move(C), std::move(Y), FT, FR, FD, FS};
}

}  // namespace confsphere
