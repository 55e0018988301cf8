#pragma once

#include <doctest.h>

#include <cmath>
#include <numbers>

namespace heatdist::test {

inline constexpr double kPi = std::numbers::pi;

// |a - b| <= tol
inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// |a - b| <= rel * max(|a|, |b|)
inline bool rel_near(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace heatdist::test
