#include "confsphere/mercator.hpp"

#include <cmath>
#include <string>

namespace confsphere {

Vec PhasePoint::coords() const {
  const int n = dim();
  Vec y(static_cast<std::size_t>(4 * n));
  for (int i = 0; i < n; ++i) {
    y[i] = X[i];
    y[n + i] = U[i];
    y[2 * n + i] = P[i];
    y[3 * n + i] = R[i];
  }
  return y;
}

PhasePoint PhasePoint::from_coords(const Vec& y) {
  if (y.dim() % 4 != 0 || y.dim() < 8) throw DimensionError("phase coordinates need length 4n, n >= 2");
  const int n = y.dim() / 4;
  PhasePoint p{Vec(static_cast<std::size_t>(n)), Vec(static_cast<std::size_t>(n)),
               Vec(static_cast<std::size_t>(n)), Vec(static_cast<std::size_t>(n))};
  for (int i = 0; i < n; ++i) {
    p.X[i] = y[i];
    p.U[i] = y[n + i];
    p.P[i] = y[2 * n + i];
    p.R[i] = y[3 * n + i];
  }
  return p;
}

TrajectoryDegeneracy::TrajectoryDegeneracy(double t, Trajectory partial)
    : DegeneracyError(t, "velocity degenerates (u^2 < " + std::to_string(kDegeneracyThreshold) +
                             ") at t = " + std::to_string(t)),
      partial_(std::move(partial)) {}

namespace {

double checked_u2(const Vec& U) {
  const double u2 = norm_sq(U);
  if (!(u2 > 0.0)) throw DomainError("velocity vanishes (u = 0)");
  return u2;
}

}  // namespace

Vec mercator_C(const CurveJet& jet) {
  jet.require(3, "mercator_C");
  const Vec& U = jet.U();
  const Vec& A = jet.A();
  const Vec& A1 = jet.A1();
  const double u2 = checked_u2(U);
  const double UA = dot(U, A);
  return (1.0 / u2) * (A1 - (norm_sq(A) / u2) * U - (2.0 * UA / u2) * A +
                       (4.0 * UA * UA / (u2 * u2)) * U - (2.0 * dot(A1, U) / u2) * U);
}

JetVec mercator_C_jet(const JetVec& position) {
  if (position.order() < 3) throw JetOrderError("C as a jet needs a position jet of order >= 3");
  const JetVec Uf = shift(position);
  const JetVec Af = shift(Uf);
  const JetVec A1 = shift(Af);
  const int o = A1.order();
  const JetVec U = Uf.truncated(o);
  const JetVec A = Af.truncated(o);
  const Jet u2 = dot(U, U);
  if (!(u2.value() > 0.0)) throw DomainError("velocity vanishes (u = 0)");
  const Jet iu2 = recip(u2);
  const Jet UA = dot(U, A);
  const JetVec inner = A1 - (dot(A, A) * iu2) * U - (2.0 * UA * iu2) * A +
                       (4.0 * UA * UA * iu2 * iu2) * U - (2.0 * dot(A1, U) * iu2) * U;
  return iu2 * inner;
}

Vec mercator_expansion(const CurveJet& jet) {
  jet.require(4, "mercator_expansion");
  const Vec& U = jet.U();
  const Vec& A = jet.A();
  const Vec& A1 = jet.A1();
  const Vec& A2 = jet.A2();
  const double u2 = checked_u2(U), u4 = u2 * u2, u6 = u4 * u2, u8 = u4 * u4;
  const double UA = dot(U, A), AA = dot(A, A), UA1 = dot(U, A1), AA1 = dot(A, A1), UA2 = dot(U, A2);
  return (-24.0 * UA * UA * UA / u8 + 16.0 * UA * UA1 / u6 + 12.0 * UA * AA / u6 -
          2.0 * UA2 / u4 - 4.0 * AA1 / u4) * U +
         (12.0 * UA * UA / u6 - 4.0 * UA1 / u4 - 3.0 * AA / u4) * A - (4.0 * UA / u4) * A1 +
         (1.0 / u2) * A2;
}

Lagrangians lagrangians(const CurveJet& jet) {
  jet.require(3, "lagrangians");
  const Vec& U = jet.U();
  const Vec& A = jet.A();
  const double u2 = checked_u2(U);
  const double UA = dot(U, A), AA = dot(A, A);
  const double L1 = 0.5 * AA / u2 - UA * UA / (u2 * u2);
  const double total = (AA + dot(U, jet.A1())) / u2 - 2.0 * UA * UA / (u2 * u2);
  return {total + L1, L1};
}

Vec circle_residual(const CurveJet& jet) {
  jet.require(3, "circle_residual");
  const Vec& U = jet.U();
  const Vec& A = jet.A();
  const double u2 = checked_u2(U);
  return jet.A1() - (3.0 * dot(A, U) / u2) * A + (1.5 * norm_sq(A) / u2) * U;
}

PhasePoint phase_from_jet(const CurveJet& jet) {
  const Vec C = mercator_C(jet);
  const Vec& U = jet.U();
  const Vec& A = jet.A();
  const double u2 = norm_sq(U);
  return {jet.X(), U, -C, (1.0 / u2) * A - (2.0 * dot(U, A) / (u2 * u2)) * U};
}

Acceleration accel_from_phase(const PhasePoint& p) {
  const double u2 = checked_u2(p.U);
  const double UR = dot(p.U, p.R);
  Vec A = u2 * p.R - (2.0 * UR) * p.U;
  Vec A1 = (2.0 * dot(p.U, p.P) + 4.0 * UR * UR - u2 * norm_sq(p.R)) * p.U - (2.0 * u2 * UR) * p.R -
           u2 * p.P;
  return {std::move(A), std::move(A1)};
}

double hamiltonian(const PhasePoint& p) {
  const double UR = dot(p.U, p.R);
  return dot(p.P, p.U) - UR * UR + 0.5 * norm_sq(p.U) * norm_sq(p.R);
}

PhasePoint hamilton_rhs(const PhasePoint& p) {
  const double u2 = norm_sq(p.U);
  const double UR = dot(p.U, p.R);
  return {p.U, u2 * p.R - (2.0 * UR) * p.U, Vec(p.P.size()),
          (2.0 * UR) * p.R - norm_sq(p.R) * p.U - p.P};
}

Trajectory integrate(const PhasePoint& p0, double t_end, double h, int stride) {
  if (!(h > 0.0)) throw DomainError("step must be positive");
  if (!(t_end > 0.0)) throw DomainError("end time must be positive");
  if (stride < 1) throw DomainError("stride must be >= 1");
  const double ratio = t_end / h;
  const long steps = std::lround(ratio);
  if (steps < 1 || std::abs(ratio - static_cast<double>(steps)) > 1e-9 * ratio)
    throw DomainError("end time must be an integer multiple of the step");
  if (norm_sq(p0.U) < kDegeneracyThreshold) throw TrajectoryDegeneracy(0.0, Trajectory{{}, {}, h});

  auto f = [](const Vec& y) { return hamilton_rhs(PhasePoint::from_coords(y)).coords(); };
  Trajectory tr;
  tr.step = h;
  tr.t.push_back(0.0);
  tr.points.push_back(p0);
  Vec y = p0.coords();
  Vec carry(y.size());  // compensated summation of the increments
  const int n = p0.dim();
  for (long k = 1; k <= steps; ++k) {
    const Vec k1 = f(y);
    const Vec k2 = f(y + (0.5 * h) * k1);
    const Vec k3 = f(y + (0.5 * h) * k2);
    const Vec k4 = f(y + h * k3);
    const Vec dy = (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double inc = dy[i] - carry[i];
      const double sum = y[i] + inc;
      carry[i] = (sum - y[i]) - inc;
      y[i] = sum;
    }
    const double t = static_cast<double>(k) * h;
    double u2 = 0.0;
    for (int i = 0; i < n; ++i) u2 += y[n + i] * y[n + i];
    if (!(u2 >= kDegeneracyThreshold)) throw TrajectoryDegeneracy(t, std::move(tr));
    if (k % stride == 0 || k == steps) {
      tr.t.push_back(t);
      tr.points.push_back(PhasePoint::from_coords(y));
    }
  }
  return tr;
}

CurveJet curve_jet_from_phase(const PhasePoint& p, int order) {
  if (order < 1) throw JetOrderError("phase jet order must be >= 1");
  checked_u2(p.U);
  const int n = p.dim();
  // coefficient arrays for X, U, P, R
  std::vector<std::vector<std::vector<double>>> c(4, std::vector<std::vector<double>>(n));
  const Vec* init[] = {&p.X, &p.U, &p.P, &p.R};
  for (int b = 0; b < 4; ++b)
    for (int i = 0; i < n; ++i) c[b][i].push_back((*init[b])[i]);

  auto jets = [&](int b) {
    std::vector<Jet> comps;
    for (int i = 0; i < n; ++i) comps.emplace_back(c[b][i]);
    return JetVec(std::move(comps));
  };
  for (int k = 0; k < order; ++k) {
    const JetVec U = jets(1), P = jets(2), R = jets(3);
    const Jet u2 = dot(U, U);
    const Jet UR = dot(U, R);
    const JetVec dU = u2 * R - (2.0 * UR) * U;
    const JetVec dR = (2.0 * UR) * R - dot(R, R) * U - P;
    for (int i = 0; i < n; ++i) {
      c[0][i].push_back(U[i][k] / (k + 1));
      c[1][i].push_back(dU[i][k] / (k + 1));
      c[2][i].push_back(0.0);
      c[3][i].push_back(dR[i][k] / (k + 1));
    }
  }
  return CurveJet::from_position_jet(jets(0), 0.0);
}

double poisson_bracket_fd(const PhaseFunction& f, const PhaseFunction& g, const PhasePoint& p, double h) {
  if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
  const Vec y = p.coords();
  const int m = y.dim();
  const int n = m / 4;
  auto grad = [&](const PhaseFunction& fn) {
    Vec d(static_cast<std::size_t>(m));
    Vec z = y;
    for (int i = 0; i < m; ++i) {
      const double hi = h * (1.0 + std::abs(y[i]));
      z[i] = y[i] + hi;
      const double fp = fn(PhasePoint::from_coords(z));
      z[i] = y[i] - hi;
      const double fm = fn(PhasePoint::from_coords(z));
      z[i] = y[i];
      d[i] = (fp - fm) / (2.0 * hi);
    }
    return d;
  };
  const Vec df = grad(f);
  const Vec dg = grad(g);
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    s += df[i] * dg[2 * n + i] - df[2 * n + i] * dg[i];
    s += df[n + i] * dg[3 * n + i] - df[3 * n + i] * dg[n + i];
  }
  return s;
}

}  // namespace confsphere
