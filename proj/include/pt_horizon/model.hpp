#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "pt_horizon/spectrum.hpp"

namespace pt_horizon {

/// A point (a, b, c) of real coupling space.
struct CouplingPoint {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double norm() const;
  bool finite() const;

  friend bool operator==(const CouplingPoint&, const CouplingPoint&) = default;
};

enum class Factor { kW, kQ, kP };

inline constexpr std::array<Factor, 3> kAllFactors = {Factor::kW, Factor::kQ,
                                                      Factor::kP};

std::string_view to_string(Factor f);

using Matrix4 = std::array<std::array<double, 4>, 4>;

/// Real 4x4 Hamiltonian. Indices are zero-based.
struct Hamiltonian4 {
  Matrix4 entries{};

  double operator()(std::size_t i, std::size_t j) const { return entries[i][j]; }
  double& operator()(std::size_t i, std::size_t j) { return entries[i][j]; }

  friend bool operator==(const Hamiltonian4&, const Hamiltonian4&) = default;
};

/// Dense row-major square matrix of arbitrary order.
struct SquareMatrix {
  std::size_t order = 0;
  std::vector<double> data;

  double operator()(std::size_t i, std::size_t j) const {
    return data[i * order + j];
  }
};

struct DiscriminantTriple {
  double w = 0.0;
  double q = 0.0;
  double p = 0.0;

  double operator[](Factor f) const;
  bool all_positive(double margin = 0.0) const {
    return w > margin && q > margin && p > margin;
  }
};

/// S(s) = s^2 + q1 s + q0, the characteristic polynomial in s = E^2.
struct SecularQuadratic {
  double q1 = 0.0;
  double q0 = 0.0;

  double operator()(double s) const { return (s + q1) * s + q0; }
};

struct SRoots {
  Complex s_plus;
  Complex s_minus;
};

struct StripCoordinates {
  double tau = 0.0;
  double phi = 0.0;  // in (-pi/2, pi/2)
};

// Circular lattice: diagonal (-3, -1, 1, 3), nearest-neighbour couplings b, c,
// b with antisymmetric signs, and the corner coupling a closing the ring.
Hamiltonian4 build_circular(const CouplingPoint& p);
// Open straight-line lattice; identical to build_circular with a = 0.
Hamiltonian4 build_straight(double b, double c);

// diag(1, -1, 1, -1, ...).
SquareMatrix parity_matrix(std::size_t n);

// parity_matrix(4) * H, computed entrywise.
Matrix4 parity_times(const Hamiltonian4& h);

DiscriminantTriple eval_discriminants(const CouplingPoint& p);
double eval_w_expanded(const CouplingPoint& p);

SecularQuadratic secular_coeffs(const CouplingPoint& p);
SRoots s_roots(const CouplingPoint& p);

// {+sqrt(s+), -sqrt(s+), +sqrt(s-), -sqrt(s-)} with the principal complex root.
Spectrum energies(const CouplingPoint& p);

// Tolerance used for "p lies on the zero set of a discriminant".
double boundary_tolerance(const CouplingPoint& p);

// Closed-form energies in the limit where the named discriminant vanishes.
// W: {+e, +e, -e, -e} with e = sqrt(P/2); Q: {0, 0, +sqrt(P), -sqrt(P)};
// P: {0, 0, 0, 0}.
std::vector<double> limit_energies(const CouplingPoint& p, Factor boundary);

// nullopt when |a + c| >= 4.
std::optional<StripCoordinates> strip_coords(double a, double c);
bool w_positive_via_strip(const CouplingPoint& p);

// Half-width in b of the W > 0 region on the c = 0 plane:
// |8 - a^2| / (2 sqrt(16 - a^2)).
double c0_bound(double a);

// The same bound with the prefactor 1/4 in place of 1/2. Kept only so the
// identity suite can show that it disagrees with the sign of W.
double c0_bound_quarter_prefactor(double a);

}  // namespace pt_horizon
