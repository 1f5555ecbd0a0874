#pragma once

#include <array>
#include <complex>
#include <string_view>

namespace pt_horizon {

using Complex = std::complex<double>;

enum class SpectrumClass {
  kRealSimple,
  kRealDegenerate,
  kComplex,
};

std::string_view to_string(SpectrumClass cls);

struct Spectrum {
  std::array<Complex, 4> values{};
  SpectrumClass classification = SpectrumClass::kRealSimple;
  double min_gap = 0.0;  // smallest pairwise distance among values
};

// Imaginary-part and gap thresholds both scale with (1 + radius):
//   Complex          if any |Im| > 1e-9 (1 + radius)
//   RealDegenerate   else if min_gap < 1e-8 (1 + radius)
//   RealSimple       otherwise.
// The radius argument is the spectral radius estimate of the matrix.
Spectrum classify_spectrum(const std::array<Complex, 4>& values, double radius);

// Eigenvalues sorted by (|Re|, |Im|, Re, Im). Places +E next to -E.
std::array<Complex, 4> sorted_by_modulus(const std::array<Complex, 4>& values);

// Largest distance between two multisets of four values under the best
// one-to-one matching.
double matched_distance(const std::array<Complex, 4>& x,
                        const std::array<Complex, 4>& y);

}  // namespace pt_horizon
