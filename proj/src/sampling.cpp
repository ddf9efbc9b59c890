#include "confsphere/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "confsphere/errors.hpp"

namespace confsphere {

double Sampler::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

Vec Sampler::uniform_vec(int n, double lo, double hi) {
  Vec v(static_cast<std::size_t>(n));
  for (double& x : v) x = uniform(lo, hi);
  return v;
}

PhasePoint Sampler::phase_point(int n) {
  while (true) {
    PhasePoint p{uniform_vec(n), uniform_vec(n), uniform_vec(n), uniform_vec(n)};
    if (norm_sq(p.U) >= kMinSampleSpeedSq) return p;
  }
}

CurveJet Sampler::curve_jet(int n, int levels) {
  while (true) {
    std::vector<Vec> d;
    for (int k = 0; k <= levels; ++k) d.push_back(uniform_vec(n));
    if (levels < 1 || norm_sq(d[1]) >= kMinSampleSpeedSq) return CurveJet(0.0, std::move(d));
  }
}

KillingField Sampler::killing_field(int kind, int n) {
  switch (kind) {
    case 0:
      return Translation{uniform_vec(n)};
    case 1: {
      Matrix R(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          R(i, j) = uniform(-1.0, 1.0);
          R(j, i) = -R(i, j);
        }
      return Rotation(R);
    }
    case 2:
      return Dilatation{uniform(-1.0, 1.0)};
    case 3:
      return SpecialConformal{uniform_vec(n)};
    default:
      throw DomainError("Killing field kind must be 0..3");
  }
}

Circle Sampler::circle(int n) {
  Vec X0 = uniform_vec(n);
  Vec U0;
  do U0 = uniform_vec(n);
  while (norm_sq(U0) < kMinSampleSpeedSq);
  U0 /= norm(U0);
  Vec A0 = uniform_vec(n);
  A0 -= dot(U0, A0) * U0;
  return make_circle(std::move(X0), std::move(U0), std::move(A0));
}

LogSpiral Sampler::spiral(int n) {
  const double c = uniform(0.5, 2.0);
  Vec P;
  do P = uniform_vec(n);
  while (norm_sq(P) < kMinSampleSpeedSq);
  Vec Q;
  do {
    Q = uniform_vec(n);
    Q -= (dot(P, Q) / norm_sq(P)) * P;
  } while (norm_sq(Q) < 1e-2);
  Q *= norm(P) / norm(Q);
  return make_log_spiral(c, std::move(P), std::move(Q), uniform_vec(n));
}

TransformedSpiral Sampler::transformed_spiral(int n, double max_b, double t0, double t1) {
  return transform(spiral(n), max_b, t0, t1);
}

TransformedSpiral Sampler::transform(const LogSpiral& base, double max_b, double t0, double t1) {
  const int n = base.P0.dim();
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Vec B = uniform_vec(n);
    const double b = norm(B);
    if (b > 1.0 || b == 0.0) continue;
    B *= max_b;
    TransformedSpiral ts = make_transformed_spiral(base, B);
    double lo = 1e300;
    for (int k = 0; k <= 200; ++k)
      lo = std::min(lo, std::abs(transformed_denominator(ts, t0 + (t1 - t0) * k / 200.0)));
    if (lo >= 0.1) return ts;
  }
  throw DomainError("no admissible special conformal parameter found");
}

}  // namespace confsphere
