#include <doctest.h>

#include <cmath>
#include <random>

#include "pt_horizon/formulas.hpp"
#include "pt_horizon/oracle.hpp"
#include "pt_horizon/topology.hpp"
#include "support.hpp"

using namespace pt_horizon;
using test_support::box_point;
using test_support::rel_err;
using test_support::uniform;

TEST_SUITE("properties") {

TEST_CASE("pseudo-Hermiticity is exact") {
  std::mt19937_64 rng(101);
  for (int k = 0; k < 1000; ++k) {
    const CouplingPoint p{uniform(rng, -50, 50), uniform(rng, -50, 50), uniform(rng, -50, 50)};
    const Matrix4 ph = parity_times(build_circular(p));
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) REQUIRE(ph[i][j] == ph[j][i]);
    }
  }
}

TEST_CASE("spectra come in +- pairs") {
  std::mt19937_64 rng(102);
  for (int k = 0; k < 1000; ++k) {
    const CouplingPoint p = box_point(rng);
    for (const Spectrum& s : {energies(p), oracle::eigenvalues(build_circular(p))}) {
      const auto v = sorted_by_modulus(s.values);
      double scale = 0.0;
      for (const auto& x : v) scale = std::max(scale, std::abs(x));
      // The pair partner of +E is -E or, for complex values, -conj(E).
      for (std::size_t i = 0; i < 4; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < 4; ++j) {
          if (j != i) best = std::min(best, std::abs(v[i] + v[j]));
        }
        REQUIRE(best < 1e-9 * (1.0 + scale));
      }
    }
    const auto poly = oracle::char_poly(build_circular(p));
    const double size = std::abs(poly.coefficients[2]) + std::abs(poly.coefficients[0]) + 1.0;
    CHECK(std::abs(poly.coefficients[3]) < 1e-12 * size);
    CHECK(std::abs(poly.coefficients[1]) < 1e-12 * size);
  }
}

TEST_CASE("determinant equals the secular quadratic in E^2") {
  std::mt19937_64 rng(103);
  for (int k = 0; k < 200; ++k) {
    const CouplingPoint p = box_point(rng);
    const Hamiltonian4 h = build_circular(p);
    const SecularQuadratic s = secular_coeffs(p);
    for (int j = 0; j < 20; ++j) {
      const double e = uniform(rng, -4, 4);
      Matrix4 m{};
      for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) m[r][c] = (r == c ? e : 0.0) - h(r, c);
      }
      const double det = oracle::determinant(m);
      const double e2 = e * e;
      const double scale = e2 * e2 + std::abs(s.q1) * e2 + std::abs(s.q0);
      REQUIRE(std::abs(det - s(e2)) < 1e-10 * scale);
    }
  }
}

TEST_CASE("secular coefficients, Vieta and W = P^2 - 4Q") {
  std::mt19937_64 rng(104);
  for (int k = 0; k < 10000; ++k) {
    const CouplingPoint p = box_point(rng);
    const DiscriminantTriple d = eval_discriminants(p);
    const SecularQuadratic s = secular_coeffs(p);
    REQUIRE(rel_err(s.q1, -d.p) < 1e-13);
    REQUIRE(rel_err(s.q0, d.q) < 1e-12);
    const double scale = d.p * d.p + 4.0 * std::abs(d.q) + 1.0;
    REQUIRE(std::abs(d.w - (d.p * d.p - 4.0 * d.q)) < 1e-12 * scale);

    const SRoots r = s_roots(p);
    REQUIRE(std::abs(r.s_plus + r.s_minus - Complex(d.p)) < 1e-10 * (1.0 + std::abs(d.p)));
    REQUIRE(std::abs(r.s_plus * r.s_minus - Complex(d.q)) < 1e-10 * (1.0 + std::abs(d.q) + d.p * d.p));
  }
  for (std::int64_t a = -6; a <= 6; ++a) {
    for (std::int64_t b = -6; b <= 6; ++b) {
      for (std::int64_t c = -6; c <= 6; ++c) {
        const std::int64_t pv = formulas::p_value(a, b, c);
        REQUIRE(formulas::w_compact(a, b, c) == pv * pv - 4 * formulas::q_factored(a, b, c));
        REQUIRE(formulas::secular_constant(a, b, c) == formulas::q_factored(a, b, c));
      }
    }
  }
}

TEST_CASE("c = 0 specialisations") {
  for (std::int64_t a = -6; a <= 6; ++a) {
    for (std::int64_t b = -6; b <= 6; ++b) {
      const std::int64_t z = 0;
      REQUIRE(formulas::w_c0(a, b) == formulas::w_compact(a, b, z));
      REQUIRE(formulas::q_c0(a, b) == formulas::q_factored(a, b, z));
      REQUIRE(formulas::p_c0(a, b) == formulas::p_value(a, b, z));
    }
  }
}

TEST_CASE("strip coordinates round-trip") {
  std::mt19937_64 rng(105);
  for (int k = 0; k < 10000; ++k) {
    const double a = uniform(rng, -6, 6);
    const double c = uniform(rng, -6, 6);
    const auto s = strip_coords(a, c);
    REQUIRE(s.has_value() == (std::abs(a + c) < 4));
    if (!s) continue;
    REQUIRE(std::abs(s->tau - (c - a) / 2) < 1e-12);
    REQUIRE(std::abs(std::sin(s->phi) - (c + a) / 4) < 1e-12);
    const double b = uniform(rng, -2.3, 2.3);
    const double w = eval_discriminants({a, b, c}).w;
    if (std::abs(w) > 1e-9) REQUIRE(w_positive_via_strip({a, b, c}) == (w > 0));
  }
}

TEST_CASE("membership matches the oracle and the s-root picture") {
  std::mt19937_64 rng(106);
  std::size_t inside = 0;
  for (int k = 0; k < 10000; ++k) {
    const CouplingPoint p = box_point(rng);
    const DiscriminantTriple d = eval_discriminants(p);
    if (std::abs(d.w) <= 1e-6 || std::abs(d.q) <= 1e-6 || std::abs(d.p) <= 1e-6) continue;
    const bool positive = d.all_positive();
    inside += positive;
    REQUIRE(topology::membership(p, 0, topology::Mode::kStrictSimple) == positive);
    REQUIRE(oracle::in_domain_oracle(p) == positive);
    REQUIRE((energies(p).classification == SpectrumClass::kRealSimple) == positive);
    const SRoots r = s_roots(p);
    const bool s_ok = r.s_plus.imag() == 0 && r.s_minus.imag() == 0 &&
                      r.s_plus.real() > 0 && r.s_minus.real() > 0 &&
                      r.s_plus.real() != r.s_minus.real();
    REQUIRE(s_ok == positive);
  }
  CHECK(inside > 500);
}

TEST_CASE("oracle spectra are closed under conjugation and match char_poly") {
  std::mt19937_64 rng(107);
  for (int k = 0; k < 1000; ++k) {
    const Hamiltonian4 h = build_circular(box_point(rng));
    const auto v = oracle::eigenvalues(h).values;
    std::array<Complex, 4> conj;
    for (std::size_t i = 0; i < 4; ++i) conj[i] = std::conj(v[i]);
    REQUIRE(matched_distance(v, conj) < 1e-9);

    // Elementary symmetric functions against the characteristic polynomial.
    Complex e1 = 0, e2 = 0, e3 = 0, e4 = 1;
    for (std::size_t i = 0; i < 4; ++i) {
      e1 += v[i];
      e4 *= v[i];
      for (std::size_t j = i + 1; j < 4; ++j) {
        e2 += v[i] * v[j];
        for (std::size_t l = j + 1; l < 4; ++l) e3 += v[i] * v[j] * v[l];
      }
    }
    const auto c = oracle::char_poly(h).coefficients;
    const double scale = 1.0 + std::abs(c[2]) + std::abs(c[0]);
    REQUIRE(std::abs(e1 + c[3]) < 1e-8 * scale);
    REQUIRE(std::abs(e2 - c[2]) < 1e-8 * scale);
    REQUIRE(std::abs(e3 + c[1]) < 1e-8 * scale);
    REQUIRE(std::abs(e4 - c[0]) < 1e-8 * scale);
  }
}

TEST_CASE("discriminants are symmetric under (a, c) -> (-a, -c) and b -> -b") {
  std::mt19937_64 rng(108);
  for (int k = 0; k < 10000; ++k) {
    const CouplingPoint p = box_point(rng);
    const auto d = eval_discriminants(p);
    const auto flipped = eval_discriminants({-p.a, p.b, -p.c});
    const auto mirrored = eval_discriminants({p.a, -p.b, p.c});
    REQUIRE(d.w == flipped.w);
    REQUIRE(d.q == flipped.q);
    REQUIRE(d.p == flipped.p);
    REQUIRE(d.w == mirrored.w);
    REQUIRE(d.q == mirrored.q);
    REQUIRE(d.p == mirrored.p);
  }
}

TEST_CASE("slice grids are symmetric") {
  for (double b : {0.05, 0.2, 0.6, 1.01}) {
    const auto g = topology::sample_slice(topology::make_slice(topology::Axis::kB, b, 200));
    const auto m = topology::sample_slice(topology::make_slice(topology::Axis::kB, -b, 200));
    REQUIRE(g.membership == m.membership);
    for (std::size_t iv = 0; iv < 200; ++iv) {
      for (std::size_t iu = 0; iu < 200; ++iu) {
        REQUIRE(g.inside(iu, iv) == g.inside(199 - iu, 199 - iv));
      }
    }
  }
}

}  // TEST_SUITE
