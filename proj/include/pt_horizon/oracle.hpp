#pragma once

#include <array>

#include "pt_horizon/model.hpp"
#include "pt_horizon/spectrum.hpp"

// Ground truth for the spectrum of a real 4x4 matrix. Nothing in here uses the
// closed-form secular quadratic, its roots or the discriminants.

namespace pt_horizon::oracle {

/// det(E I - H) = E^4 + c3 E^3 + c2 E^2 + c1 E + c0. coefficients[k] is the
/// coefficient of E^k; coefficients[4] == 1.
struct QuarticPoly {
  std::array<double, 5> coefficients{};

  double operator()(double e) const;
};

QuarticPoly char_poly(const Hamiltonian4& h);

// Determinant of a 4x4 matrix by cofactor expansion.
double determinant(const Matrix4& m);

// Hessenberg reduction followed by Francis double-shift QR. At most 100 QR
// sweeps per deflation; throws kNumericalFailure past that.
Spectrum eigenvalues(const Hamiltonian4& h);

// max_i |H v_i - lambda_i v_i| / |v_i| over eigenvectors obtained by inverse
// iteration on each computed eigenvalue.
double max_eigen_residual(const Hamiltonian4& h, const Spectrum& spectrum);

bool in_domain_oracle(const CouplingPoint& p);

}  // namespace pt_horizon::oracle
