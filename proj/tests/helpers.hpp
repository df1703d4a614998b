#pragma once

#include <cmath>

#include "bilip/interval.hpp"
#include "doctest.h"

namespace testing {

// The oracle constants are decimal literals; allow a few ulps of slack for
// their own rounding to double.
inline bool encloses(const bilip::Interval& x, double v, double rel = 4e-16) {
  const double pad = std::abs(v) * rel;
  return x.lo() <= v + pad && v - pad <= x.hi();
}

}  // namespace testing
