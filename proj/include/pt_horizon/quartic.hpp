#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <cstddef>

namespace pt_horizon {

// Dense univariate polynomial of degree <= 4; coefficient k multiplies t^k.
// Arithmetic is closed as long as products stay within degree 4, which is
// the case for every coupling-space discriminant restricted to a line.
class Quartic {
 public:
  static constexpr std::size_t kSize = 5;

  constexpr Quartic() = default;
  constexpr Quartic(double constant) { c_[0] = constant; }  // NOLINT

  static constexpr Quartic linear(double offset, double slope) {
    Quartic q;
    q.c_[0] = offset;
    q.c_[1] = slope;
    return q;
  }

  constexpr double operator[](std::size_t k) const { return c_[k]; }
  constexpr double& operator[](std::size_t k) { return c_[k]; }
  const std::array<double, kSize>& coefficients() const { return c_; }

  double operator()(double t) const {
    double r = c_[4];
    for (int k = 3; k >= 0; --k) r = r * t + c_[k];
    return r;
  }

  Quartic derivative() const {
    Quartic d;
    for (std::size_t k = 1; k < kSize; ++k) d.c_[k - 1] = double(k) * c_[k];
    return d;
  }

  friend Quartic operator+(const Quartic& x, const Quartic& y) {
    Quartic r;
    for (std::size_t k = 0; k < kSize; ++k) r.c_[k] = x.c_[k] + y.c_[k];
    return r;
  }
  friend Quartic operator-(const Quartic& x, const Quartic& y) {
    Quartic r;
    for (std::size_t k = 0; k < kSize; ++k) r.c_[k] = x.c_[k] - y.c_[k];
    return r;
  }
  friend Quartic operator-(const Quartic& x) { return Quartic(0.0) - x; }
  friend Quartic operator*(const Quartic& x, const Quartic& y) {
    Quartic r;
    for (std::size_t i = 0; i < kSize; ++i) {
      if (x.c_[i] == 0.0) continue;
      for (std::size_t j = 0; j < kSize; ++j) {
        if (i + j < kSize) {
          r.c_[i + j] += x.c_[i] * y.c_[j];
        } else {
          assert(y.c_[j] == 0.0 && "degree overflow in Quartic product");
        }
      }
    }
    return r;
  }

 private:
  std::array<double, kSize> c_{};
};

// Minimum of f over [0, 1]. Critical points are isolated by splitting [0, 1]
// at the roots of f'' and bisecting each monotone piece of f'.
double min_on_unit_interval(const Quartic& f);

}  // namespace pt_horizon
