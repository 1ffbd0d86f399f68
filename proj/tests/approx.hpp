#pragma once

#include <doctest.h>

#include <limits>

// Purely relative comparison; doctest's default scale of 1 makes the
// tolerance absolute for small values.
inline doctest::Approx rel(double value) {
  return doctest::Approx(value).scale(std::numeric_limits<double>::min());
}
