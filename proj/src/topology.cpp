#include "pt_horizon/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "pt_horizon/errors.hpp"
#include "pt_horizon/formulas.hpp"
#include "pt_horizon/oracle.hpp"
#include "pt_horizon/parallel.hpp"

namespace pt_horizon::topology {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kBridgeRadius2d = 3;
constexpr int kBridgeRadius3d = 2;
constexpr int kRescueRadius2d = 16;
constexpr int kRescueRadius3d = 8;
constexpr std::size_t kRescueSamples = 64;

void require_eta(double eta) {
  if (!(eta >= 0.0) || !std::isfinite(eta)) {
    fail(ErrorKind::kInvalidInput, "eta must be a finite value >= 0");
  }
}

void require_range(const Range& r, const char* what) {
  if (!std::isfinite(r.min) || !std::isfinite(r.max) || !(r.min < r.max)) {
    fail(ErrorKind::kInvalidInput, std::string(what) + " range needs min < max");
  }
}

// Upper bound on the magnitude of the terms that make up a factor anywhere on
// the segment; rounding in the restricted polynomial is a small multiple of
// eps times this.
double term_magnitude(Factor f, const CouplingPoint& p1, const CouplingPoint& p2) {
  const double a = std::max(std::abs(p1.a), std::abs(p2.a));
  const double b = std::max(std::abs(p1.b), std::abs(p2.b));
  const double c = std::max(std::abs(p1.c), std::abs(p2.c));
  switch (f) {
    case Factor::kW: {
      const double base = 8.0 + c * c + a * a;
      return base * base + 4.0 * (16.0 + (a + c) * (a + c)) * b * b;
    }
    case Factor::kQ: {
      const double half = (a + 3.0) * (c + 1.0) + b * b;
      return half * half;
    }
    case Factor::kP:
      return 10.0 + a * a + 2.0 * b * b + c * c;
  }
  return 0.0;
}

// First-order rounding bound for evaluating a factor at one point in its
// factored form. Much tighter than term_magnitude near the zero sets.
double point_slack(Factor f, const CouplingPoint& p) {
  const double a = p.a;
  const double b2 = p.b * p.b;
  const double c = p.c;
  switch (f) {
    case Factor::kW: {
      const double base = 8.0 + c * c - a * a;
      const double size = 8.0 + c * c + a * a;
      const double s2 = (a + c) * (a + c);
      return 16.0 * kEps * (std::abs(base) * size + base * base + 4.0 * (16.0 + s2) * b2);
    }
    case Factor::kQ: {
      const double f1 = (a + 3.0) * (c - 1.0) - b2;
      const double f2 = (a - 3.0) * (c + 1.0) - b2;
      const double g1 = std::abs(a + 3.0) * std::abs(c - 1.0) + b2;
      const double g2 = std::abs(a - 3.0) * std::abs(c + 1.0) + b2;
      return 16.0 * kEps * (g1 * std::abs(f2) + g2 * std::abs(f1) + kEps * g1 * g2);
    }
    case Factor::kP:
      return 16.0 * kEps * (10.0 + a * a + 2.0 * b2 + c * c);
  }
  return 0.0;
}

bool factor_clears(Factor f, const CouplingPoint& p1, const CouplingPoint& p2,
                   double eta, Mode mode) {
  const Quartic poly = restrict_factor(f, p1, p2);
  const double slack = 64.0 * kEps * term_magnitude(f, p1, p2);
  const bool relaxed = mode == Mode::kRealOnly && f == Factor::kW;
  const double threshold = relaxed ? -eta - slack : eta + slack;
  auto passes = [&](double value) {
    return relaxed ? value >= threshold : value > threshold;
  };

  double tail = 0.0;
  for (std::size_t k = 1; k < Quartic::kSize; ++k) tail += std::abs(poly[k]);
  if (passes(poly[0] - tail)) return true;
  return passes(min_on_unit_interval(poly));
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // The smaller index always becomes the root.
  void unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return;
    if (y < x) std::swap(x, y);
    parent_[y] = x;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Cubic lattice of n^Dims samples, last axis fastest.
template <std::size_t Dims>
struct Lattice {
  using Coord = std::array<std::size_t, Dims>;
  using Offset = std::array<int, Dims>;

  explicit Lattice(std::size_t n) : n(n) {
    stride[Dims - 1] = 1;
    for (std::size_t d = Dims - 1; d > 0; --d) stride[d - 1] = stride[d] * n;
  }

  Coord coords(std::size_t idx) const {
    Coord x{};
    for (std::size_t d = 0; d < Dims; ++d) x[d] = (idx / stride[d]) % n;
    return x;
  }

  std::optional<std::size_t> shifted(const Coord& x, const Offset& o) const {
    std::size_t idx = 0;
    for (std::size_t d = 0; d < Dims; ++d) {
      const long long y = static_cast<long long>(x[d]) + o[d];
      if (y < 0 || y >= static_cast<long long>(n)) return std::nullopt;
      idx += static_cast<std::size_t>(y) * stride[d];
    }
    return idx;
  }

  bool on_boundary(const std::vector<std::uint8_t>& member, std::size_t idx) const {
    const Coord x = coords(idx);
    for (std::size_t d = 0; d < Dims; ++d) {
      if (x[d] > 0 && !member[idx - stride[d]]) return true;
      if (x[d] + 1 < n && !member[idx + stride[d]]) return true;
    }
    return false;
  }

  // Offsets with Chebyshev norm in [1, radius] other than the axis units,
  // nearest shell first.
  static std::vector<Offset> window(int radius) {
    std::vector<Offset> out;
    for (int shell = 1; shell <= radius; ++shell) {
      Offset o;
      o.fill(-shell);
      while (true) {
        int cheb = 0;
        int l1 = 0;
        for (int v : o) {
          cheb = std::max(cheb, std::abs(v));
          l1 += std::abs(v);
        }
        if (cheb == shell && l1 > 1) out.push_back(o);
        std::size_t d = Dims;
        while (d > 0 && o[d - 1] == shell) o[--d] = -shell;
        if (d == 0) break;
        ++o[d - 1];
      }
    }
    return out;
  }

  std::size_t n;
  std::array<std::size_t, Dims> stride{};
};

using EdgeList = std::vector<std::pair<std::size_t, std::size_t>>;

// Edges out of boundary samples (those with an outside axis neighbour) to the
// inside samples of a small window, each certified by segment_connected.
// Grid lines miss the domain along thin wedges; these edges follow them.
// One list per outer slab so the merge order does not depend on threading.
template <std::size_t Dims, class Sample>
std::vector<EdgeList> bridge_edges(const Lattice<Dims>& lat,
                                   const std::vector<std::uint8_t>& member, int radius,
                                   double eta, Mode mode, const FactorMask& factors,
                                   Sample sample) {
  const auto offsets = Lattice<Dims>::window(radius);
  std::vector<EdgeList> out(lat.n);
  parallel_for(lat.n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t slab = begin; slab < end; ++slab) {
      for (std::size_t idx = slab * lat.stride[0]; idx < (slab + 1) * lat.stride[0]; ++idx) {
        if (!member[idx] || !lat.on_boundary(member, idx)) continue;
        const auto x = lat.coords(idx);
        for (const auto& o : offsets) {
          const auto target = lat.shifted(x, o);
          if (!target || !member[*target]) continue;
          if (*target < idx && lat.on_boundary(member, *target)) continue;  // seen from there
          if (segment_connected(sample(x), sample(lat.coords(*target)), eta, mode, factors)) {
            out[slab].emplace_back(idx, *target);
          }
        }
      }
    }
  });
  return out;
}

// Cusps of the domain thin out below the grid spacing and strand a few
// samples near the tip. Each component smaller than max_samples gets another
// chance: its samples look for a certified segment to a sample of a different
// component within the larger radius, nearest first. Sequential and in index
// order, hence deterministic.
template <std::size_t Dims, class Sample>
void rescue_small(const Lattice<Dims>& lat, const std::vector<std::uint8_t>& member,
                  UnionFind& uf, std::size_t max_samples, int radius, double eta,
                  Mode mode, const FactorMask& factors, Sample sample) {
  std::vector<std::size_t> size(member.size(), 0);
  for (std::size_t i = 0; i < member.size(); ++i) {
    if (member[i]) ++size[uf.find(i)];
  }
  std::vector<std::vector<std::size_t>> small;
  std::vector<std::int64_t> slot(member.size(), -1);
  for (std::size_t i = 0; i < member.size(); ++i) {
    if (!member[i]) continue;
    const std::size_t root = uf.find(i);
    if (size[root] >= max_samples) continue;
    if (slot[root] < 0) {
      slot[root] = static_cast<std::int64_t>(small.size());
      small.emplace_back();
    }
    small[slot[root]].push_back(i);
  }
  if (small.empty()) return;

  const auto offsets = Lattice<Dims>::window(radius);
  for (const auto& samples : small) {
    bool merged = false;
    for (std::size_t idx : samples) {
      const auto x = lat.coords(idx);
      for (const auto& o : offsets) {
        const auto target = lat.shifted(x, o);
        if (!target || !member[*target] || uf.find(*target) == uf.find(idx)) continue;
        if (segment_connected(sample(x), sample(lat.coords(*target)), eta, mode, factors)) {
          uf.unite(idx, *target);
          merged = true;
          break;
        }
      }
      if (merged) break;
    }
  }
}

// Labels by first encounter in storage order and fills per-component stats.
// coords(i) returns the sample centre of index i along each free axis.
template <class Coords>
ComponentReport label_components(const std::vector<std::uint8_t>& member,
                                 UnionFind& uf, std::size_t dims,
                                 double cell_measure, Coords coords) {
  ComponentReport report;
  report.labels.assign(member.size(), -1);
  std::vector<std::int32_t> root_label(member.size(), -1);
  for (std::size_t i = 0; i < member.size(); ++i) {
    if (!member[i]) continue;
    const std::size_t root = uf.find(i);
    if (root_label[root] < 0) {
      root_label[root] = static_cast<std::int32_t>(report.components.size());
      ComponentInfo info;
      info.id = root_label[root];
      info.bbox_min.assign(dims, std::numeric_limits<double>::infinity());
      info.bbox_max.assign(dims, -std::numeric_limits<double>::infinity());
      report.components.push_back(std::move(info));
    }
    const std::int32_t label = root_label[root];
    report.labels[i] = label;
    ComponentInfo& info = report.components[label];
    ++info.samples;
    const auto x = coords(i);
    for (std::size_t d = 0; d < dims; ++d) {
      info.bbox_min[d] = std::min(info.bbox_min[d], x[d]);
      info.bbox_max[d] = std::max(info.bbox_max[d], x[d]);
    }
  }
  for (auto& info : report.components) info.area = double(info.samples) * cell_measure;
  report.count = report.components.size();
  return report;
}

}  // namespace

std::string_view to_string(Axis axis) {
  switch (axis) {
    case Axis::kA:
      return "a";
    case Axis::kB:
      return "b";
    case Axis::kC:
      return "c";
  }
  return "?";
}

std::string_view to_string(Mode mode) {
  return mode == Mode::kStrictSimple ? "strict" : "real";
}

std::optional<Axis> parse_axis(std::string_view text) {
  if (text == "a") return Axis::kA;
  if (text == "b") return Axis::kB;
  if (text == "c") return Axis::kC;
  return std::nullopt;
}

std::optional<Mode> parse_mode(std::string_view text) {
  if (text == "strict") return Mode::kStrictSimple;
  if (text == "real") return Mode::kRealOnly;
  return std::nullopt;
}

bool FactorMask::has(Factor f) const {
  switch (f) {
    case Factor::kW:
      return w;
    case Factor::kQ:
      return q;
    case Factor::kP:
      return p;
  }
  return false;
}

FactorMask FactorMask::only(Factor f) {
  return {f == Factor::kW, f == Factor::kQ, f == Factor::kP};
}

Range default_range(Axis axis) { return axis == Axis::kB ? kDefaultB : kDefaultAC; }

std::pair<Axis, Axis> SliceSpec::free_axes() const {
  switch (fixed_axis) {
    case Axis::kA:
      return {Axis::kB, Axis::kC};
    case Axis::kB:
      return {Axis::kA, Axis::kC};
    case Axis::kC:
      return {Axis::kA, Axis::kB};
  }
  return {Axis::kA, Axis::kC};
}

CouplingPoint SliceSpec::point(double u, double v) const {
  switch (fixed_axis) {
    case Axis::kA:
      return {fixed_value, u, v};
    case Axis::kB:
      return {u, fixed_value, v};
    case Axis::kC:
      return {u, v, fixed_value};
  }
  return {};
}

CouplingPoint SliceSpec::sample(std::size_t iu, std::size_t iv) const {
  return point(u_range.cell_center(iu, resolution), v_range.cell_center(iv, resolution));
}

void SliceSpec::validate() const {
  if (!std::isfinite(fixed_value)) fail(ErrorKind::kInvalidInput, "fixed value must be finite");
  require_range(u_range, "u");
  require_range(v_range, "v");
  if (resolution < kMinSliceResolution || resolution > kMaxSliceResolution) {
    fail(ErrorKind::kInvalidInput, "slice resolution must lie in [16, 20000]");
  }
  require_eta(eta);
}

SliceSpec make_slice(Axis fixed_axis, double fixed_value, std::size_t resolution,
                     double eta, Mode mode) {
  SliceSpec spec;
  spec.fixed_axis = fixed_axis;
  spec.fixed_value = fixed_value;
  const auto [u, v] = spec.free_axes();
  spec.u_range = default_range(u);
  spec.v_range = default_range(v);
  spec.resolution = resolution;
  spec.eta = eta;
  spec.mode = mode;
  return spec;
}

CouplingPoint BoxSpec::sample(std::size_t ia, std::size_t ib, std::size_t ic) const {
  return {a_range.cell_center(ia, resolution), b_range.cell_center(ib, resolution),
          c_range.cell_center(ic, resolution)};
}

void BoxSpec::validate() const {
  require_range(a_range, "a");
  require_range(b_range, "b");
  require_range(c_range, "c");
  if (resolution < kMin3dResolution) {
    fail(ErrorKind::kInvalidInput, "3-D resolution must be >= 32");
  }
  const double total = double(resolution) * double(resolution) * double(resolution);
  if (total > double(kMaxSamples)) {
    fail(ErrorKind::kInvalidInput, "3-D grid exceeds 1e9 samples");
  }
  require_eta(eta);
}

bool membership(const CouplingPoint& p, double eta, Mode mode,
                const FactorMask& factors) {
  require_eta(eta);
  const DiscriminantTriple d = eval_discriminants(p);
  // Values within rounding error of zero count as zero.
  auto clears = [&](Factor f) {
    return !factors.has(f) || d[f] > eta + point_slack(f, p);
  };
  const bool w_ok = clears(Factor::kW);
  if (w_ok && clears(Factor::kQ) && clears(Factor::kP)) return true;
  if (mode == Mode::kRealOnly && !w_ok && clears(Factor::kQ) && clears(Factor::kP) &&
      d.w >= -eta - point_slack(Factor::kW, p)) {
    const Spectrum s = oracle::eigenvalues(build_circular(p));
    return s.classification != SpectrumClass::kComplex;
  }
  return false;
}

Quartic restrict_factor(Factor f, const CouplingPoint& p1, const CouplingPoint& p2) {
  const Quartic a = Quartic::linear(p1.a, p2.a - p1.a);
  const Quartic b = Quartic::linear(p1.b, p2.b - p1.b);
  const Quartic c = Quartic::linear(p1.c, p2.c - p1.c);
  switch (f) {
    case Factor::kW:
      return formulas::w_compact(a, b, c);
    case Factor::kQ:
      return formulas::q_factored(a, b, c);
    case Factor::kP:
      return formulas::p_value(a, b, c);
  }
  return {};
}

bool segment_connected(const CouplingPoint& p1, const CouplingPoint& p2, double eta,
                       Mode mode, const FactorMask& factors) {
  require_eta(eta);
  for (Factor f : kAllFactors) {
    if (factors.has(f) && !factor_clears(f, p1, p2, eta, mode)) return false;
  }
  return true;
}

SliceGrid sample_slice(const SliceSpec& spec) {
  spec.validate();
  const std::size_t n = spec.resolution;
  SliceGrid grid;
  grid.spec = spec;
  grid.membership.assign(n * n, 0);
  grid.discriminants.resize(n * n);
  parallel_for(n, [&](std::size_t row_begin, std::size_t row_end) {
    for (std::size_t iv = row_begin; iv < row_end; ++iv) {
      for (std::size_t iu = 0; iu < n; ++iu) {
        const CouplingPoint p = spec.sample(iu, iv);
        const std::size_t idx = grid.index(iu, iv);
        grid.discriminants[idx] = eval_discriminants(p);
        grid.membership[idx] = membership(p, spec.eta, spec.mode, spec.factors) ? 1 : 0;
      }
    }
  });
  return grid;
}

ComponentReport components2d(const SliceGrid& grid) {
  const SliceSpec& spec = grid.spec;
  const std::size_t n = spec.resolution;
  // bit 0: joined to (iu + 1, iv); bit 1: joined to (iu, iv + 1)
  std::vector<std::uint8_t> edges(n * n, 0);
  parallel_for(n, [&](std::size_t row_begin, std::size_t row_end) {
    for (std::size_t iv = row_begin; iv < row_end; ++iv) {
      for (std::size_t iu = 0; iu < n; ++iu) {
        if (!grid.inside(iu, iv)) continue;
        const CouplingPoint p = spec.sample(iu, iv);
        std::uint8_t bits = 0;
        if (iu + 1 < n && grid.inside(iu + 1, iv) &&
            segment_connected(p, spec.sample(iu + 1, iv), spec.eta, spec.mode,
                              spec.factors)) {
          bits |= 1;
        }
        if (iv + 1 < n && grid.inside(iu, iv + 1) &&
            segment_connected(p, spec.sample(iu, iv + 1), spec.eta, spec.mode,
                              spec.factors)) {
          bits |= 2;
        }
        edges[grid.index(iu, iv)] = bits;
      }
    }
  });

  UnionFind uf(n * n);
  for (std::size_t idx = 0; idx < n * n; ++idx) {
    if (edges[idx] & 1) uf.unite(idx, idx + 1);
    if (edges[idx] & 2) uf.unite(idx, idx + n);
  }
  const Lattice<2> lat(n);
  auto sample = [&](const Lattice<2>::Coord& x) { return spec.sample(x[1], x[0]); };
  for (const auto& row : bridge_edges(lat, grid.membership, kBridgeRadius2d, spec.eta,
                                      spec.mode, spec.factors, sample)) {
    for (const auto& [x, y] : row) uf.unite(x, y);
  }
  rescue_small(lat, grid.membership, uf, kRescueSamples, kRescueRadius2d, spec.eta,
               spec.mode, spec.factors, sample);

  const double cell = spec.u_range.width() / double(n) * spec.v_range.width() / double(n);
  return label_components(grid.membership, uf, 2, cell, [&](std::size_t idx) {
    return std::array<double, 2>{spec.u_range.cell_center(idx % n, n),
                                 spec.v_range.cell_center(idx / n, n)};
  });
}

ComponentReport components3d(const BoxSpec& box) {
  box.validate();
  const std::size_t n = box.resolution;
  const std::size_t total = n * n * n;
  auto index = [n](std::size_t ia, std::size_t ib, std::size_t ic) {
    return (ia * n + ib) * n + ic;
  };

  std::vector<std::uint8_t> member(total, 0);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t ia = begin; ia < end; ++ia) {
      for (std::size_t ib = 0; ib < n; ++ib) {
        for (std::size_t ic = 0; ic < n; ++ic) {
          member[index(ia, ib, ic)] =
              membership(box.sample(ia, ib, ic), box.eta, box.mode, box.factors) ? 1 : 0;
        }
      }
    }
  });

  // bit 0: +a neighbour, bit 1: +b neighbour, bit 2: +c neighbour
  std::vector<std::uint8_t> edges(total, 0);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t ia = begin; ia < end; ++ia) {
      for (std::size_t ib = 0; ib < n; ++ib) {
        for (std::size_t ic = 0; ic < n; ++ic) {
          const std::size_t idx = index(ia, ib, ic);
          if (!member[idx]) continue;
          const CouplingPoint p = box.sample(ia, ib, ic);
          auto joined = [&](std::size_t ja, std::size_t jb, std::size_t jc) {
            return member[index(ja, jb, jc)] &&
                   segment_connected(p, box.sample(ja, jb, jc), box.eta, box.mode,
                                     box.factors);
          };
          std::uint8_t bits = 0;
          if (ia + 1 < n && joined(ia + 1, ib, ic)) bits |= 1;
          if (ib + 1 < n && joined(ia, ib + 1, ic)) bits |= 2;
          if (ic + 1 < n && joined(ia, ib, ic + 1)) bits |= 4;
          edges[idx] = bits;
        }
      }
    }
  });

  UnionFind uf(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    const std::uint8_t bits = edges[idx];
    if (bits & 1) uf.unite(idx, idx + n * n);
    if (bits & 2) uf.unite(idx, idx + n);
    if (bits & 4) uf.unite(idx, idx + 1);
  }
  edges.clear();
  edges.shrink_to_fit();
  const Lattice<3> lat(n);
  auto sample = [&](const Lattice<3>::Coord& x) { return box.sample(x[0], x[1], x[2]); };
  for (const auto& slab : bridge_edges(lat, member, kBridgeRadius3d, box.eta, box.mode,
                                       box.factors, sample)) {
    for (const auto& [x, y] : slab) uf.unite(x, y);
  }
  rescue_small(lat, member, uf, kRescueSamples, kRescueRadius3d, box.eta, box.mode,
               box.factors, sample);

  const double cell = box.a_range.width() / double(n) * box.b_range.width() / double(n) *
                      box.c_range.width() / double(n);
  return label_components(member, uf, 3, cell, [&](std::size_t idx) {
    const std::size_t ic = idx % n;
    const std::size_t ib = (idx / n) % n;
    const std::size_t ia = idx / (n * n);
    return std::array<double, 3>{box.a_range.cell_center(ia, n),
                                 box.b_range.cell_center(ib, n),
                                 box.c_range.cell_center(ic, n)};
  });
}

}  // namespace pt_horizon::topology
