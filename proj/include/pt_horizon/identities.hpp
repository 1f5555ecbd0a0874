#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pt_horizon/model.hpp"

namespace pt_horizon::identities {

enum class Status { kProved, kHolds, kFails };

std::string to_string(Status status);

struct IdentityResult {
  std::string name;
  Status status = Status::kFails;
  std::optional<CouplingPoint> witness;
  double detail = 0.0;    // largest deviation observed
  std::string relation;   // the relation that was checked, in plain notation
  std::string note;       // extra annotation, e.g. a printed-form mismatch
};

// Seed for every randomized check. Recorded in the report.
inline constexpr std::uint64_t kSeed = 20111433;

// Integer grid {0, ..., 5} per variable: six points exceed the per-variable
// degree bound of four, so agreement on the grid proves a polynomial identity.
inline constexpr std::int64_t kGridMin = 0;
inline constexpr std::int64_t kGridMax = 5;

using IntPoly3 = std::function<std::int64_t(std::int64_t, std::int64_t,
                                            std::int64_t)>;

// Compares lhs and rhs exhaustively on the integer grid. Proved on full
// agreement, Fails with the first disagreeing point otherwise.
IdentityResult check_integer_identity(const std::string& name,
                                      const std::string& relation,
                                      const IntPoly3& lhs, const IntPoly3& rhs);

IdentityResult verify_w_forms();
IdentityResult verify_wpq_relation();
IdentityResult verify_factor_b1();
IdentityResult verify_b0_square();
IdentityResult verify_c0_forms();
IdentityResult verify_secular_vs_charpoly();
IdentityResult verify_pseudo_hermiticity();
IdentityResult verify_strip_equivalence();

// Counts from the c = 0 bound comparison used by verify_c0_forms.
struct C0BoundComparison {
  std::size_t samples = 0;
  std::size_t mismatches_half = 0;
  std::size_t mismatches_quarter = 0;
};
C0BoundComparison compare_c0_bounds();

// All eight checks ordered by name.
std::vector<IdentityResult> run_all();

bool any_failed(const std::vector<IdentityResult>& report);

nlohmann::json to_json(const IdentityResult& result);
nlohmann::json report_json(const std::vector<IdentityResult>& report);

}  // namespace pt_horizon::identities
