#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "pt_horizon/model.hpp"
#include "pt_horizon/quartic.hpp"

namespace pt_horizon::topology {

enum class Axis { kA = 0, kB = 1, kC = 2 };
enum class Mode { kStrictSimple, kRealOnly };

std::string_view to_string(Axis axis);
std::string_view to_string(Mode mode);
std::optional<Axis> parse_axis(std::string_view text);
std::optional<Mode> parse_mode(std::string_view text);

// Subset of {W, Q, P} a membership test looks at. All three by default;
// the single-factor masks describe the auxiliary domains.
struct FactorMask {
  bool w = true;
  bool q = true;
  bool p = true;

  bool has(Factor f) const;
  static FactorMask only(Factor f);
};

struct Range {
  double min = 0.0;
  double max = 0.0;

  double width() const { return max - min; }
  // Centre of cell i out of n.
  double cell_center(std::size_t i, std::size_t n) const {
    return min + (double(i) + 0.5) * width() / double(n);
  }
};

// Default sampling box: encloses the P > 0 ellipsoid with margin.
inline constexpr Range kDefaultAC{-3.6, 3.6};
inline constexpr Range kDefaultB{-2.3, 2.3};
Range default_range(Axis axis);

inline constexpr std::size_t kMinSliceResolution = 16;
inline constexpr std::size_t kMaxSliceResolution = 20000;
inline constexpr std::size_t kMin3dResolution = 32;
inline constexpr std::size_t kMaxSamples = 1'000'000'000;

struct SliceSpec {
  Axis fixed_axis = Axis::kB;
  double fixed_value = 0.0;
  Range u_range = kDefaultAC;  // first free axis in (a, b, c) order
  Range v_range = kDefaultAC;  // second free axis
  std::size_t resolution = 800;
  double eta = 0.0;
  Mode mode = Mode::kStrictSimple;
  FactorMask factors{};

  // Free axes in (a, b, c) order, e.g. (a, c) for a fixed b.
  std::pair<Axis, Axis> free_axes() const;
  CouplingPoint point(double u, double v) const;
  CouplingPoint sample(std::size_t iu, std::size_t iv) const;
  void validate() const;
};

// Slice with default ranges for the two free axes.
SliceSpec make_slice(Axis fixed_axis, double fixed_value, std::size_t resolution,
                     double eta = 0.0, Mode mode = Mode::kStrictSimple);

// Samples are stored row-major: index = iv * resolution + iu.
struct SliceGrid {
  SliceSpec spec;
  std::vector<std::uint8_t> membership;
  std::vector<DiscriminantTriple> discriminants;

  std::size_t index(std::size_t iu, std::size_t iv) const {
    return iv * spec.resolution + iu;
  }
  bool inside(std::size_t iu, std::size_t iv) const {
    return membership[index(iu, iv)] != 0;
  }
};

struct ComponentInfo {
  int id = 0;
  std::size_t samples = 0;
  std::vector<double> bbox_min;  // per free axis, sample centres
  std::vector<double> bbox_max;
  double area = 0.0;  // samples times cell measure (area in 2-D, volume in 3-D)
};

struct ComponentReport {
  std::size_t count = 0;
  std::vector<std::int32_t> labels;  // -1 outside
  std::vector<ComponentInfo> components;
};

struct BoxSpec {
  Range a_range = kDefaultAC;
  Range b_range = kDefaultB;
  Range c_range = kDefaultAC;
  std::size_t resolution = 160;  // per axis
  double eta = 0.0;
  Mode mode = Mode::kStrictSimple;
  FactorMask factors{};

  // Samples stored with c fastest: index = (ia * res + ib) * res + ic.
  CouplingPoint sample(std::size_t ia, std::size_t ib, std::size_t ic) const;
  void validate() const;
};

struct BoundaryCurve {
  Factor factor = Factor::kW;
  std::vector<std::array<double, 2>> polyline;  // (u, v) slice coordinates
  bool closed = false;
};

struct TraceOptions {
  // When set, keep only pieces where the other two factors exceed -clip_eta.
  std::optional<double> clip_eta;
};

// Every selected factor above eta. A factor within its floating-point
// evaluation error of eta does not count as above it, so the degenerate
// point a^2 = 8 on the a axis stays outside despite rounding.
bool membership(const CouplingPoint& p, double eta, Mode mode,
                const FactorMask& factors = {});

// True iff every selected factor stays above eta along the closed segment
// p1 -> p2 (in RealOnly mode W only needs to stay >= -eta). Minima within
// floating-point evaluation error of the threshold count as failures, which
// is what separates the open domain at double zeros of W.
bool segment_connected(const CouplingPoint& p1, const CouplingPoint& p2,
                       double eta, Mode mode = Mode::kStrictSimple,
                       const FactorMask& factors = {});

// Restriction t -> F(p1 + t (p2 - p1)) of a factor to a line.
Quartic restrict_factor(Factor f, const CouplingPoint& p1,
                        const CouplingPoint& p2);

SliceGrid sample_slice(const SliceSpec& spec);
ComponentReport components2d(const SliceGrid& grid);
ComponentReport components3d(const BoxSpec& box);
std::vector<BoundaryCurve> trace_boundary(const SliceSpec& spec, Factor factor,
                                          const TraceOptions& options = {});

}  // namespace pt_horizon::topology
