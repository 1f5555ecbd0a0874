#include "pt_horizon/identities.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <sstream>

#include "pt_horizon/formulas.hpp"
#include "pt_horizon/oracle.hpp"

namespace pt_horizon::identities {
namespace {

namespace f = formulas;
using I64 = std::int64_t;

// Uniform double in [lo, hi) from the raw 64-bit stream; avoids the
// implementation-defined std::uniform_real_distribution.
class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : engine_(seed) {}
  double operator()(double lo, double hi) {
    const double unit = double(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * unit;
  }

 private:
  std::mt19937_64 engine_;
};

CouplingPoint random_point(Uniform& u) {
  return {u(-3.6, 3.6), u(-2.3, 2.3), u(-3.6, 3.6)};
}

// Grid over the varying coordinates; fixed ones hold the given value.
struct IntegerGrid {
  std::array<bool, 3> vary = {true, true, true};
  std::array<I64, 3> fixed = {0, 0, 0};
};

IdentityResult check_on_grid(const std::string& name, const std::string& relation,
                             const IntPoly3& lhs, const IntPoly3& rhs,
                             const IntegerGrid& grid) {
  IdentityResult r;
  r.name = name;
  r.relation = relation;
  r.status = Status::kProved;
  auto span = [&](int axis) {
    return grid.vary[axis] ? std::pair{kGridMin, kGridMax}
                           : std::pair{grid.fixed[axis], grid.fixed[axis]};
  };
  const auto [a0, a1] = span(0);
  const auto [b0, b1] = span(1);
  const auto [c0, c1] = span(2);
  for (I64 a = a0; a <= a1; ++a) {
    for (I64 b = b0; b <= b1; ++b) {
      for (I64 c = c0; c <= c1; ++c) {
        const I64 diff = lhs(a, b, c) - rhs(a, b, c);
        r.detail = std::max(r.detail, std::abs(double(diff)));
        if (diff != 0 && r.status == Status::kProved) {
          r.status = Status::kFails;
          r.witness = CouplingPoint{double(a), double(b), double(c)};
        }
      }
    }
  }
  return r;
}

std::string count_text(std::size_t n) { return std::to_string(n); }

}  // namespace

std::string to_string(Status status) {
  switch (status) {
    case Status::kProved:
      return "Proved";
    case Status::kHolds:
      return "Holds";
    case Status::kFails:
      return "Fails";
  }
  return "?";
}

IdentityResult check_integer_identity(const std::string& name,
                                      const std::string& relation,
                                      const IntPoly3& lhs, const IntPoly3& rhs) {
  return check_on_grid(name, relation, lhs, rhs, {});
}

IdentityResult verify_w_forms() {
  return check_integer_identity(
      "w_forms", "compact W = expanded W",
      [](I64 a, I64 b, I64 c) { return f::w_compact(a, b, c); },
      [](I64 a, I64 b, I64 c) { return f::w_expanded(a, b, c); });
}

IdentityResult verify_wpq_relation() {
  IdentityResult r = check_integer_identity(
      "wpq_relation", "W = P^2 - 4 Q",
      [](I64 a, I64 b, I64 c) { return f::w_compact(a, b, c); },
      [](I64 a, I64 b, I64 c) {
        const I64 p = f::p_value(a, b, c);
        return p * p - 4 * f::q_factored(a, b, c);
      });
  r.note = "derived relation; not stated explicitly";
  return r;
}

IdentityResult verify_factor_b1() {
  IntegerGrid grid;
  grid.vary = {true, false, true};
  grid.fixed = {0, 1, 0};
  return check_on_grid(
      "factor_b1", "W(a,1,c) = (a+c)(a^3 - c a^2 - 12a - c^2 a + 20c + c^3)",
      [](I64 a, I64 b, I64 c) { return f::w_compact(a, b, c); },
      [](I64 a, I64, I64 c) { return f::w_b1_factored(a, c); }, grid);
}

IdentityResult verify_b0_square() {
  IntegerGrid grid;
  grid.vary = {true, false, true};
  IdentityResult r = check_on_grid(
      "b0_square", "W(a,0,c) = (8 + c^2 - a^2)^2",
      [](I64 a, I64 b, I64 c) { return f::w_compact(a, b, c); },
      [](I64 a, I64, I64 c) { return f::w_b0_square(a, c); }, grid);
  if (r.status == Status::kProved) r.note = "W(a,0,c) >= 0 identically (perfect square)";
  return r;
}

C0BoundComparison compare_c0_bounds() {
  constexpr std::size_t kN = 200;
  constexpr double kAMax = 3.9;
  constexpr double kBMax = 2.3;
  C0BoundComparison out;
  for (std::size_t i = 0; i < kN; ++i) {
    const double a = -kAMax + (double(i) + 0.5) * (2.0 * kAMax) / double(kN);
    const double half = c0_bound(a);
    const double quarter = c0_bound_quarter_prefactor(a);
    for (std::size_t j = 0; j < kN; ++j) {
      const double b = -kBMax + (double(j) + 0.5) * (2.0 * kBMax) / double(kN);
      const bool w_positive = f::w_c0(a, b) > 0.0;
      ++out.samples;
      if ((std::abs(b) < half) != w_positive) ++out.mismatches_half;
      if ((std::abs(b) < quarter) != w_positive) ++out.mismatches_quarter;
    }
  }
  return out;
}

IdentityResult verify_c0_forms() {
  IntegerGrid grid;
  grid.vary = {true, true, false};
  const IdentityResult w = check_on_grid(
      "c0_forms", "W(a,b,0)", [](I64 a, I64 b, I64 c) { return f::w_compact(a, b, c); },
      [](I64 a, I64 b, I64) { return f::w_c0(a, b); }, grid);
  const IdentityResult q = check_on_grid(
      "c0_forms", "Q(a,b,0)", [](I64 a, I64 b, I64 c) { return f::q_factored(a, b, c); },
      [](I64 a, I64 b, I64) { return f::q_c0(a, b); }, grid);
  const IdentityResult p = check_on_grid(
      "c0_forms", "P(a,b,0)", [](I64 a, I64 b, I64 c) { return f::p_value(a, b, c); },
      [](I64 a, I64 b, I64) { return f::p_c0(a, b); }, grid);

  IdentityResult r;
  r.name = "c0_forms";
  r.relation =
      "W, Q, P specialised to c = 0; W(a,b,0) > 0 <=> |b| < |8 - a^2| / (2 sqrt(16 - a^2))";
  for (const IdentityResult* part : {&w, &q, &p}) {
    if (part->status == Status::kFails) {
      r.status = Status::kFails;
      r.witness = part->witness;
      r.detail = part->detail;
      r.note = part->relation + " specialisation disagrees";
      return r;
    }
  }

  const C0BoundComparison cmp = compare_c0_bounds();
  r.detail = double(cmp.mismatches_half);
  if (cmp.mismatches_half != 0) {
    r.status = Status::kFails;
    r.note = "prefactor 1/2 disagrees with sign(W) at " + count_text(cmp.mismatches_half) +
             " of " + count_text(cmp.samples) + " samples";
    return r;
  }
  r.status = Status::kHolds;
  r.note = "printed-form mismatch: prefactor 1/4 disagrees with sign(W) at " +
           count_text(cmp.mismatches_quarter) + " of " + count_text(cmp.samples) +
           " samples; prefactor 1/2 agrees at all samples";
  return r;
}

IdentityResult verify_secular_vs_charpoly() {
  IdentityResult r;
  r.name = "secular_vs_charpoly";
  r.relation = "det(E I - H) = S(E^2)";
  r.status = Status::kHolds;
  Uniform u(kSeed);
  for (int i = 0; i < 100; ++i) {
    const CouplingPoint p = random_point(u);
    const Hamiltonian4 h = build_circular(p);
    const SecularQuadratic s = secular_coeffs(p);
    for (int k = 0; k < 20; ++k) {
      const double e = u(-4.0, 4.0);
      Matrix4 m{};
      for (int row = 0; row < 4; ++row) {
        for (int col = 0; col < 4; ++col) m[row][col] = -h(row, col);
        m[row][row] += e;
      }
      const double det = oracle::determinant(m);
      const double e2 = e * e;
      const double scale = std::max(1.0, e2 * e2 + std::abs(s.q1) * e2 + std::abs(s.q0));
      const double rel = std::abs(det - s(e2)) / scale;
      if (rel > r.detail) r.detail = rel;
      if (rel >= 1e-10 && r.status != Status::kFails) {
        r.status = Status::kFails;
        r.witness = p;
      }
    }
  }
  return r;
}

IdentityResult verify_pseudo_hermiticity() {
  IdentityResult r;
  r.name = "pseudo_hermiticity";
  r.relation = "(P4 H)^T = P4 H with P4 = diag(1,-1,1,-1)";
  r.status = Status::kHolds;
  Uniform u(kSeed + 1);
  auto check = [&](const Hamiltonian4& h, const CouplingPoint& p) {
    const Matrix4 m = parity_times(h);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        const double diff = std::abs(m[i][j] - m[j][i]);
        r.detail = std::max(r.detail, diff);
        if (diff != 0.0 && r.status != Status::kFails) {
          r.status = Status::kFails;
          r.witness = p;
        }
      }
    }
  };
  for (int i = 0; i < 100; ++i) {
    const CouplingPoint p = random_point(u);
    check(build_circular(p), p);
    check(build_straight(p.b, p.c), {0.0, p.b, p.c});
  }
  return r;
}

IdentityResult verify_strip_equivalence() {
  IdentityResult r;
  r.name = "strip_equivalence";
  r.relation = "inside |a+c| < 4: W = 64 [(1 + tau sin phi)^2 - b^2 cos^2 phi]";
  r.status = Status::kHolds;
  constexpr std::size_t kN = 100;
  constexpr double kStripLimit = 4.0 - 1e-6;
  for (std::size_t i = 0; i < kN; ++i) {
    const double a = -3.6 + (double(i) + 0.5) * 7.2 / double(kN);
    for (std::size_t k = 0; k < kN; ++k) {
      const double c = -3.6 + (double(k) + 0.5) * 7.2 / double(kN);
      if (!(std::abs(a + c) < kStripLimit)) continue;
      const auto strip = strip_coords(a, c);
      const double s = std::sin(strip->phi);
      const double co = std::cos(strip->phi);
      const double lift = 1.0 + strip->tau * s;
      for (std::size_t j = 0; j < kN; ++j) {
        const double b = -2.3 + (double(j) + 0.5) * 4.6 / double(kN);
        const double w = f::w_compact(a, b, c);
        const double g = lift * lift - b * b * co * co;
        const double dev = std::abs(w - 64.0 * g) / (1.0 + std::abs(w));
        r.detail = std::max(r.detail, dev);
        const bool resolved = std::abs(w) > 1e-9 * (1.0 + std::abs(w));
        if (resolved && (w > 0.0) != (g > 0.0) && r.status != Status::kFails) {
          r.status = Status::kFails;
          r.witness = CouplingPoint{a, b, c};
        }
      }
    }
  }
  return r;
}

std::vector<IdentityResult> run_all() {
  std::vector<IdentityResult> report = {
      verify_w_forms(),           verify_wpq_relation(),       verify_factor_b1(),
      verify_b0_square(),         verify_c0_forms(),           verify_secular_vs_charpoly(),
      verify_pseudo_hermiticity(), verify_strip_equivalence()};
  std::sort(report.begin(), report.end(),
            [](const IdentityResult& x, const IdentityResult& y) { return x.name < y.name; });
  return report;
}

bool any_failed(const std::vector<IdentityResult>& report) {
  return std::any_of(report.begin(), report.end(),
                     [](const IdentityResult& r) { return r.status == Status::kFails; });
}

nlohmann::json to_json(const IdentityResult& result) {
  nlohmann::json j;
  j["name"] = result.name;
  j["status"] = to_string(result.status);
  if (result.witness) {
    j["witness"] = {{"a", result.witness->a}, {"b", result.witness->b}, {"c", result.witness->c}};
  } else {
    j["witness"] = nullptr;
  }
  j["detail"] = result.detail;
  j["paper_ref"] = result.relation;
  if (!result.note.empty()) j["note"] = result.note;
  return j;
}

nlohmann::json report_json(const std::vector<IdentityResult>& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& r : report) checks.push_back(to_json(r));
  return {{"seed", kSeed}, {"checks", checks}, {"failed", any_failed(report)}};
}

}  // namespace pt_horizon::identities
