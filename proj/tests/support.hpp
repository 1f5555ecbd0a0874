#pragma once

#include <cmath>
#include <random>

#include "pt_horizon/model.hpp"

namespace test_support {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Uniform point in the default sampling box.
inline pt_horizon::CouplingPoint box_point(std::mt19937_64& rng) {
  return {uniform(rng, -3.6, 3.6), uniform(rng, -2.3, 2.3), uniform(rng, -3.6, 3.6)};
}

inline double rel_err(double x, double y) {
  return std::abs(x - y) / std::max(1.0, std::max(std::abs(x), std::abs(y)));
}

}  // namespace test_support
