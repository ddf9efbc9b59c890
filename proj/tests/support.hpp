#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "confsphere/vec.hpp"

namespace testing {

using confsphere::Vec;

/// max|a - b| / max(1, max|b|)
inline double rel(const Vec& a, const Vec& b) {
  return confsphere::max_abs_diff(a, b) / std::max(1.0, confsphere::max_abs(b));
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace testing
