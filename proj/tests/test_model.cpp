#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "pt_horizon/errors.hpp"
#include "pt_horizon/model.hpp"
#include "support.hpp"

using namespace pt_horizon;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::kInvalidInput;
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("circular Hamiltonian entries") {
  const Hamiltonian4 h0 = build_circular({0, 0, 0});
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(h0(i, j) == (i == j ? -3.0 + 2.0 * double(i) : 0.0));
    }
  }

  const Hamiltonian4 h = build_circular({1, 2, 3});
  CHECK(h(0, 3) == -1);
  CHECK(h(3, 0) == 1);
  CHECK(h(0, 1) == 2);
  CHECK(h(1, 0) == -2);
  CHECK(h(1, 2) == 3);
  CHECK(h(2, 1) == -3);
  CHECK(h(2, 3) == 2);
  CHECK(h(3, 2) == -2);
  CHECK(h(0, 2) == 0);
  CHECK(h(1, 3) == 0);
  CHECK(h(2, 2) == 1);
}

TEST_CASE("straight-line model is the a = 0 ring") {
  const Hamiltonian4 h = build_straight(1, 1);
  CHECK(h(0, 1) == 1);
  CHECK(h(1, 0) == -1);
  CHECK(h(1, 2) == 1);
  CHECK(h(2, 1) == -1);
  CHECK(h(2, 3) == 1);
  CHECK(h(3, 2) == -1);
  CHECK(h(0, 3) == 0);
  CHECK(h(3, 0) == 0);
  for (double b : {-1.5, 0.0, 0.3, 2.0}) {
    for (double c : {-0.7, 0.0, 1.25}) CHECK(build_circular({0, b, c}) == build_straight(b, c));
  }
}

TEST_CASE("non-finite couplings are rejected") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(kind_of([&] { build_circular({nan, 0, 0}); }) == ErrorKind::kInvalidInput);
  CHECK(kind_of([&] { build_circular({0, inf, 0}); }) == ErrorKind::kInvalidInput);
  CHECK(kind_of([&] { build_straight(0, -inf); }) == ErrorKind::kInvalidInput);
  CHECK(kind_of([&] { eval_discriminants({0, 0, nan}); }) == ErrorKind::kInvalidInput);
}

TEST_CASE("parity matrix") {
  const SquareMatrix p4 = parity_matrix(4);
  REQUIRE(p4.order == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(p4(i, j) == (i == j ? (i % 2 == 0 ? 1.0 : -1.0) : 0.0));
    }
  }
  const SquareMatrix p2 = parity_matrix(2);
  CHECK(p2(0, 0) == 1);
  CHECK(p2(1, 1) == -1);
  CHECK(p2(0, 1) == 0);
  CHECK(kind_of([] { parity_matrix(0); }) == ErrorKind::kInvalidInput);

  for (const Hamiltonian4& h : {build_circular({1.1, -0.4, 2.0}), build_straight(0.3, 0.7)}) {
    const Matrix4 ph = parity_times(h);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) CHECK(ph[i][j] == ph[j][i]);
    }
  }
}

TEST_CASE("discriminants at reference points") {
  const auto d0 = eval_discriminants({0, 0, 0});
  CHECK(d0.w == 64);
  CHECK(d0.q == 9);
  CHECK(d0.p == 10);

  const auto d1 = eval_discriminants({1, 1, 1});
  CHECK(d1.w == 16);
  CHECK(d1.q == 5);
  CHECK(d1.p == 6);
  CHECK(d1[Factor::kW] == 16);
  CHECK(d1.all_positive());
  CHECK_FALSE(d1.all_positive(6.0));

  // 64 - 320 = -256: W = P^2 - 4Q with P = 0, Q = 64.
  const auto d5 = eval_discriminants({0, std::sqrt(5.0), 0});
  CHECK(d5.w == doctest::Approx(-256).epsilon(1e-12));
  CHECK(d5.q == doctest::Approx(64).epsilon(1e-12));
  CHECK(std::abs(d5.p) < 1e-14);
}

TEST_CASE("expanded W") {
  CHECK(eval_w_expanded({0, 0, 0}) == 64);
  CHECK(eval_w_expanded({1, 1, 1}) == 16);
  for (int a = -3; a <= 3; ++a) {
    for (int b = -3; b <= 3; ++b) {
      for (int c = -3; c <= 3; ++c) {
        const CouplingPoint p{double(a), double(b), double(c)};
        CHECK(eval_w_expanded(p) == eval_discriminants(p).w);
      }
    }
  }
}

TEST_CASE("secular quadratic and its roots") {
  const auto s0 = secular_coeffs({0, 0, 0});
  CHECK(s0.q1 == -10);
  CHECK(s0.q0 == 9);
  const auto s1 = secular_coeffs({1, 1, 1});
  CHECK(s1.q1 == -6);
  CHECK(s1.q0 == 5);
  CHECK(s1(5.0) == 0);
  CHECK(s1(1.0) == 0);

  const auto r0 = s_roots({0, 0, 0});
  CHECK(r0.s_plus == Complex(9, 0));
  CHECK(r0.s_minus == Complex(1, 0));
  const auto r1 = s_roots({1, 1, 1});
  CHECK(r1.s_plus.real() == doctest::Approx(5));
  CHECK(r1.s_minus.real() == doctest::Approx(1));

  // W = -256 at (0, sqrt 5, 0): s = +-8i.
  const auto r5 = s_roots({0, std::sqrt(5.0), 0});
  CHECK(std::abs(r5.s_plus.real()) < 1e-12);
  CHECK(std::abs(r5.s_plus.imag()) == doctest::Approx(8).epsilon(1e-12));
  CHECK(r5.s_plus == std::conj(r5.s_minus));
}

TEST_CASE("closed-form energies") {
  const auto e0 = energies({0, 0, 0});
  CHECK(e0.classification == SpectrumClass::kRealSimple);
  const auto sorted0 = sorted_by_modulus(e0.values);
  CHECK(sorted0[0].real() == -1);
  CHECK(sorted0[1].real() == 1);
  CHECK(sorted0[2].real() == -3);
  CHECK(sorted0[3].real() == 3);

  const auto e1 = sorted_by_modulus(energies({1, 1, 1}).values);
  CHECK(std::abs(e1[1].real() - 1.0) < 1e-14);
  CHECK(std::abs(e1[3].real() - std::sqrt(5.0)) < 1e-14);

  const auto e29 = energies({2.9, 0, 0});
  CHECK(e29.classification == SpectrumClass::kRealSimple);
  const auto s29 = sorted_by_modulus(e29.values);
  CHECK(s29[1].real() == doctest::Approx(std::sqrt(0.59)).epsilon(1e-14));
  CHECK(s29[3].real() == doctest::Approx(1.0).epsilon(1e-14));

  CHECK(energies({std::sqrt(8.0), 0, 0}).classification == SpectrumClass::kRealDegenerate);
  CHECK(energies({0, std::sqrt(5.0), 0}).classification == SpectrumClass::kComplex);
}

TEST_CASE("limit energies") {
  const auto w = limit_energies({std::sqrt(8.0), 0, 0}, Factor::kW);
  REQUIRE(w.size() == 4);
  CHECK(w[0] == doctest::Approx(1));
  CHECK(w[1] == doctest::Approx(1));
  CHECK(w[2] == doctest::Approx(-1));
  CHECK(w[3] == doctest::Approx(-1));

  const auto q = limit_energies({3, 0, 0}, Factor::kQ);
  REQUIRE(q.size() == 4);
  CHECK(q[0] == 0);
  CHECK(q[1] == 0);
  CHECK(q[2] == doctest::Approx(1));
  CHECK(q[3] == doctest::Approx(-1));

  for (double e : limit_energies({3, 0, -1}, Factor::kP)) CHECK(e == 0);

  CHECK(kind_of([] { limit_energies({0, 0, 0}, Factor::kW); }) == ErrorKind::kPrecondition);
  CHECK(kind_of([] { limit_energies({3, 0, 0}, Factor::kP); }) == ErrorKind::kPrecondition);
  // W = 0 with P < 0 beyond the ellipsoid: the pairs are imaginary.
  const double a = std::sqrt(8.0 + 16.0);
  CHECK(kind_of([&] { limit_energies({a, 0, 4}, Factor::kW); }) == ErrorKind::kDomain);
}

TEST_CASE("strip coordinates") {
  const auto s0 = strip_coords(0, 0);
  REQUIRE(s0);
  CHECK(s0->tau == 0);
  CHECK(s0->phi == 0);

  const auto s2 = strip_coords(2, 0);
  REQUIRE(s2);
  CHECK(s2->tau == -1);
  CHECK(s2->phi == doctest::Approx(std::numbers::pi / 6).epsilon(1e-15));

  CHECK_FALSE(strip_coords(3, 2));
  CHECK_FALSE(strip_coords(-2, -2));

  CHECK(w_positive_via_strip({0, 0.5, 0}));
  CHECK_FALSE(w_positive_via_strip({0, 1.5, 0}));
  CHECK(w_positive_via_strip({3, 7.0, 2}));
  CHECK(w_positive_via_strip({3, 0.0, 2}));
}

TEST_CASE("c = 0 bound") {
  CHECK(c0_bound(0) == 1);
  CHECK(std::abs(c0_bound(std::sqrt(8.0))) < 1e-15);
  CHECK(c0_bound(2) == doctest::Approx(4.0 / (2.0 * std::sqrt(12.0))).epsilon(1e-15));
  CHECK(c0_bound_quarter_prefactor(0) == 0.5);
  CHECK(kind_of([] { c0_bound(4); }) == ErrorKind::kDomain);
  CHECK(kind_of([] { c0_bound(-5); }) == ErrorKind::kDomain);

  // At a = 0 the true bound is 1: real at b = 0.7, complex at b = 1.1.
  CHECK(eval_discriminants({0, 0.7, 0}).w > 0);
  CHECK(eval_discriminants({0, 1.1, 0}).w < 0);
  CHECK(eval_discriminants({2, c0_bound(2) * 0.999, 0}).w > 0);
  CHECK(eval_discriminants({2, c0_bound(2) * 1.001, 0}).w < 0);
}

TEST_CASE("boundary tolerance grows quartically") {
  CHECK(boundary_tolerance({0, 0, 0}) == doctest::Approx(1e-9));
  CHECK(boundary_tolerance({2, 0, 0}) == doctest::Approx(17e-9));
}

}  // TEST_SUITE
