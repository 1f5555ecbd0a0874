#include "pt_horizon/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace pt_horizon {

std::string_view to_string(SpectrumClass cls) {
  switch (cls) {
    case SpectrumClass::kRealSimple:
      return "real-simple";
    case SpectrumClass::kRealDegenerate:
      return "real-degenerate";
    case SpectrumClass::kComplex:
      return "complex";
  }
  return "unknown";
}

Spectrum classify_spectrum(const std::array<Complex, 4>& values, double radius) {
  Spectrum s;
  s.values = values;
  const double tol_im = 1e-9 * (1.0 + radius);
  const double tol_gap = 1e-8 * (1.0 + radius);

  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      gap = std::min(gap, std::abs(values[i] - values[j]));
    }
  }
  s.min_gap = gap;

  const bool complex = std::any_of(values.begin(), values.end(), [&](Complex v) {
    return std::abs(v.imag()) > tol_im;
  });
  if (complex) {
    s.classification = SpectrumClass::kComplex;
  } else if (gap < tol_gap) {
    s.classification = SpectrumClass::kRealDegenerate;
  } else {
    s.classification = SpectrumClass::kRealSimple;
  }
  return s;
}

std::array<Complex, 4> sorted_by_modulus(const std::array<Complex, 4>& values) {
  auto sorted = values;
  std::sort(sorted.begin(), sorted.end(), [](Complex x, Complex y) {
    return std::make_tuple(std::abs(x.real()), std::abs(x.imag()), x.real(),
                           x.imag()) <
           std::make_tuple(std::abs(y.real()), std::abs(y.imag()), y.real(),
                           y.imag());
  });
  return sorted;
}

double matched_distance(const std::array<Complex, 4>& x,
                        const std::array<Complex, 4>& y) {
  std::array<int, 4> perm = {0, 1, 2, 3};
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(x[i] - y[perm[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace pt_horizon
