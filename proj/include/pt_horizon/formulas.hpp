#pragma once

// Closed-form polynomials of the circular four-site model, written once over a
// generic ring element T. They are instantiated for double (evaluation),
// std::int64_t (exact identity proofs) and Quartic (restriction to a line).

namespace pt_horizon::formulas {

template <class T>
T w_compact(const T& a, const T& b, const T& c) {
  const T base = T(8) + c * c - a * a;
  const T sum = a + c;
  return base * base - T(4) * (T(16) - sum * sum) * b * b;
}

template <class T>
T w_expanded(const T& a, const T& b, const T& c) {
  const T a2 = a * a;
  const T b2 = b * b;
  const T c2 = c * c;
  return T(64) + T(16) * c2 - T(64) * b2 - T(16) * a2 + c2 * c2 +
         T(4) * c2 * b2 - T(2) * c2 * a2 + T(4) * b2 * a2 + a2 * a2 +
         T(8) * c * a * b2;
}

template <class T>
T q_factored(const T& a, const T& b, const T& c) {
  const T b2 = b * b;
  return ((a + T(3)) * (c - T(1)) - b2) * ((a - T(3)) * (c + T(1)) - b2);
}

template <class T>
T p_value(const T& a, const T& b, const T& c) {
  return T(10) - a * a - T(2) * b * b - c * c;
}

// S(s) = s^2 + linear * s + constant.
template <class T>
T secular_linear(const T& a, const T& b, const T& c) {
  return T(-10) + c * c + T(2) * b * b + a * a;
}

template <class T>
T secular_constant(const T& a, const T& b, const T& c) {
  const T a2 = a * a;
  const T b2 = b * b;
  const T c2 = c * c;
  return T(9) + T(6) * b2 - T(9) * c2 + b2 * b2 - T(2) * c * a * b2 - a2 +
         c2 * a2;
}

// Specialisations on the c = 0 plane.
template <class T>
T w_c0(const T& a, const T& b) {
  const T base = T(8) - a * a;
  return base * base - T(4) * (T(16) - a * a) * b * b;
}

template <class T>
T q_c0(const T& a, const T& b) {
  return (T(3) + b * b + a) * (T(3) + b * b - a);
}

template <class T>
T p_c0(const T& a, const T& b) {
  return T(10) - a * a - T(2) * b * b;
}

// W on the b = 1 plane, factored through a + c.
template <class T>
T w_b1_factored(const T& a, const T& c) {
  return (a + c) * (a * a * a - c * a * a - T(12) * a - c * c * a + T(20) * c +
                    c * c * c);
}

// W on the b = 0 plane is a perfect square.
template <class T>
T w_b0_square(const T& a, const T& c) {
  const T base = T(8) + c * c - a * a;
  return base * base;
}

}  // namespace pt_horizon::formulas
