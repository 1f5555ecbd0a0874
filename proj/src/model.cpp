#include "pt_horizon/model.hpp"

#include <cmath>
#include <string>

#include "pt_horizon/errors.hpp"
#include "pt_horizon/formulas.hpp"

namespace pt_horizon {
namespace {

void require_finite(const CouplingPoint& p) {
  if (!p.finite()) {
    fail(ErrorKind::kInvalidInput, "coupling point has a non-finite component");
  }
}

}  // namespace

double CouplingPoint::norm() const { return std::sqrt(a * a + b * b + c * c); }

bool CouplingPoint::finite() const {
  return std::isfinite(a) && std::isfinite(b) && std::isfinite(c);
}

std::string_view to_string(Factor f) {
  switch (f) {
    case Factor::kW:
      return "W";
    case Factor::kQ:
      return "Q";
    case Factor::kP:
      return "P";
  }
  return "?";
}

double DiscriminantTriple::operator[](Factor f) const {
  switch (f) {
    case Factor::kW:
      return w;
    case Factor::kQ:
      return q;
    case Factor::kP:
      return p;
  }
  return 0.0;
}

Hamiltonian4 build_circular(const CouplingPoint& p) {
  require_finite(p);
  Hamiltonian4 h;
  h(0, 0) = -3.0;
  h(1, 1) = -1.0;
  h(2, 2) = 1.0;
  h(3, 3) = 3.0;
  h(0, 1) = p.b;
  h(1, 0) = -p.b;
  h(1, 2) = p.c;
  h(2, 1) = -p.c;
  h(2, 3) = p.b;
  h(3, 2) = -p.b;
  h(0, 3) = -p.a;
  h(3, 0) = p.a;
  return h;
}

Hamiltonian4 build_straight(double b, double c) {
  return build_circular({0.0, b, c});
}

SquareMatrix parity_matrix(std::size_t n) {
  if (n == 0) fail(ErrorKind::kInvalidInput, "parity matrix order must be >= 1");
  SquareMatrix m{n, std::vector<double>(n * n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) m.data[i * n + i] = (i % 2 == 0) ? 1.0 : -1.0;
  return m;
}

Matrix4 parity_times(const Hamiltonian4& h) {
  const SquareMatrix parity = parity_matrix(4);
  Matrix4 out{};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) out[i][j] = parity(i, i) * h(i, j);
  }
  return out;
}

DiscriminantTriple eval_discriminants(const CouplingPoint& p) {
  require_finite(p);
  return {formulas::w_compact(p.a, p.b, p.c), formulas::q_factored(p.a, p.b, p.c),
          formulas::p_value(p.a, p.b, p.c)};
}

double eval_w_expanded(const CouplingPoint& p) {
  require_finite(p);
  return formulas::w_expanded(p.a, p.b, p.c);
}

SecularQuadratic secular_coeffs(const CouplingPoint& p) {
  require_finite(p);
  return {formulas::secular_linear(p.a, p.b, p.c),
          formulas::secular_constant(p.a, p.b, p.c)};
}

SRoots s_roots(const CouplingPoint& p) {
  const DiscriminantTriple d = eval_discriminants(p);
  if (d.w < 0.0) {
    const double im = 0.5 * std::sqrt(-d.w);
    return {Complex(0.5 * d.p, im), Complex(0.5 * d.p, -im)};
  }
  // Larger-magnitude root first, the other from the product Q.
  const double r = std::sqrt(d.w);
  if (d.p >= 0.0) {
    const double plus = 0.5 * (d.p + r);
    const double minus = plus != 0.0 ? d.q / plus : 0.5 * (d.p - r);
    return {Complex(plus), Complex(minus)};
  }
  const double minus = 0.5 * (d.p - r);
  const double plus = minus != 0.0 ? d.q / minus : 0.5 * (d.p + r);
  return {Complex(plus), Complex(minus)};
}

Spectrum energies(const CouplingPoint& p) {
  const SRoots s = s_roots(p);
  const Complex e_plus = std::sqrt(s.s_plus);
  const Complex e_minus = std::sqrt(s.s_minus);
  const std::array<Complex, 4> values = {e_plus, -e_plus, e_minus, -e_minus};
  const double radius = std::max(std::abs(e_plus), std::abs(e_minus));
  return classify_spectrum(values, radius);
}

double boundary_tolerance(const CouplingPoint& p) {
  const double n = p.norm();
  return 1e-9 * (1.0 + n * n * n * n);
}

std::vector<double> limit_energies(const CouplingPoint& p, Factor boundary) {
  const DiscriminantTriple d = eval_discriminants(p);
  const double tol = boundary_tolerance(p);
  if (std::abs(d[boundary]) > tol) {
    fail(ErrorKind::kPrecondition,
         std::string(to_string(boundary)) + " does not vanish at this point");
  }
  switch (boundary) {
    case Factor::kW: {
      if (!(d.p > 0.0)) fail(ErrorKind::kDomain, "W boundary requires P > 0");
      const double e = std::sqrt(0.5 * d.p);
      return {e, e, -e, -e};
    }
    case Factor::kQ: {
      if (d.p < -tol) fail(ErrorKind::kDomain, "Q boundary requires P >= 0");
      const double e = std::sqrt(std::max(d.p, 0.0));
      return {0.0, 0.0, e, -e};
    }
    case Factor::kP:
      return {0.0, 0.0, 0.0, 0.0};
  }
  return {};
}

std::optional<StripCoordinates> strip_coords(double a, double c) {
  if (!std::isfinite(a) || !std::isfinite(c)) {
    fail(ErrorKind::kInvalidInput, "strip coordinates need finite input");
  }
  if (std::abs(a + c) >= 4.0) return std::nullopt;
  return StripCoordinates{0.5 * (c - a), std::asin(0.25 * (c + a))};
}

bool w_positive_via_strip(const CouplingPoint& p) {
  require_finite(p);
  const auto strip = strip_coords(p.a, p.c);
  if (!strip) {
    // W = (8 + c^2 - a^2)^2 + 4 ((a + c)^2 - 16) b^2 >= 0 here; it can only
    // vanish when both terms do.
    const double base = 8.0 + p.c * p.c - p.a * p.a;
    if (base == 0.0 && (p.b == 0.0 || std::abs(p.a + p.c) == 4.0)) {
      return formulas::w_compact(p.a, p.b, p.c) > 0.0;
    }
    return true;
  }
  const double s = std::sin(strip->phi);
  return std::abs(p.b) < std::abs(1.0 + strip->tau * s) / std::cos(strip->phi);
}

double c0_bound(double a) {
  if (!std::isfinite(a) || a * a >= 16.0) {
    fail(ErrorKind::kDomain, "c = 0 bound needs a^2 < 16");
  }
  return std::abs(8.0 - a * a) / (2.0 * std::sqrt(16.0 - a * a));
}

double c0_bound_quarter_prefactor(double a) { return 0.5 * c0_bound(a); }

}  // namespace pt_horizon
