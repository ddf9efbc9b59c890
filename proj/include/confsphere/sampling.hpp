#pragma once

#include <cstdint>
#include <random>

#include "confsphere/curve.hpp"
#include "confsphere/families.hpp"
#include "confsphere/mercator.hpp"
#include "confsphere/symmetries.hpp"

namespace confsphere {

inline constexpr double kMinSampleSpeedSq = 0.1;

/// Seeded source of random test data.  Coordinates are uniform in [-1, 1]
/// unless stated otherwise, and velocities with u^2 < 0.1 are rejected.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi);
  Vec uniform_vec(int n, double lo = -1.0, double hi = 1.0);

  PhasePoint phase_point(int n);
  /// X through X^(levels), each level uniform.
  CurveJet curve_jet(int n, int levels);
  KillingField killing_field(int kind, int n);
  Circle circle(int n);
  /// c uniform in [0.5, 2].
  LogSpiral spiral(int n);
  /// |B| <= max_b, resampled until the denominator stays >= 0.1 on [t0, t1].
  TransformedSpiral transformed_spiral(int n, double max_b, double t0, double t1);
  /// Same resampling for B with the base spiral fixed.
  TransformedSpiral transform(const LogSpiral& base, double max_b, double t0, double t1);

  std::mt19937_64& engine() noexcept { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace confsphere
