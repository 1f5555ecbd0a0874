#include <array>
#include <cmath>
#include <unordered_map>
#include <vector>

#include "pt_horizon/formulas.hpp"
#include "pt_horizon/parallel.hpp"
#include "pt_horizon/topology.hpp"

namespace pt_horizon::topology {
namespace {

using Point2 = std::array<double, 2>;

double factor_value(Factor f, const CouplingPoint& p) {
  switch (f) {
    case Factor::kW:
      return formulas::w_compact(p.a, p.b, p.c);
    case Factor::kQ:
      return formulas::q_factored(p.a, p.b, p.c);
    case Factor::kP:
      return formulas::p_value(p.a, p.b, p.c);
  }
  return 0.0;
}

struct Segment {
  std::size_t from_edge;
  std::size_t to_edge;
};

class Tracer {
 public:
  Tracer(const SliceSpec& spec, Factor factor) : spec_(spec), factor_(factor) {
    const std::size_t n = spec.resolution;
    values_.resize(n * n);
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
      for (std::size_t iv = begin; iv < end; ++iv) {
        for (std::size_t iu = 0; iu < n; ++iu) {
          values_[iv * n + iu] = factor_value(factor_, spec_.sample(iu, iv));
        }
      }
    });
  }

  std::vector<Segment> segments() {
    const std::size_t n = spec_.resolution;
    std::vector<Segment> out;
    for (std::size_t iv = 0; iv + 1 < n; ++iv) {
      for (std::size_t iu = 0; iu + 1 < n; ++iu) cell_segments(iu, iv, out);
    }
    return out;
  }

  Point2 vertex(std::size_t edge) {
    if (auto it = vertices_.find(edge); it != vertices_.end()) return it->second;
    const auto [iu0, iv0, iu1, iv1] = edge_ends(edge);
    const Point2 lo = uv(iu0, iv0);
    const Point2 hi = uv(iu1, iv1);
    const Quartic g = restrict_factor(factor_, spec_.point(lo[0], lo[1]),
                                      spec_.point(hi[0], hi[1]));
    // Bracketed bisection on the exact restriction, seeded by linear
    // interpolation of the corner values.
    const double f0 = values_[index(iu0, iv0)];
    const double f1 = values_[index(iu1, iv1)];
    double t_lo = 0.0;
    double t_hi = 1.0;
    const bool lo_positive = f0 > 0.0;
    double t = f0 / (f0 - f1);
    if (!(t > 0.0 && t < 1.0)) t = 0.5;
    for (int it = 0; it < 80; ++it) {
      const double gt = g(t);
      if (gt == 0.0) break;
      if ((gt > 0.0) == lo_positive) {
        t_lo = t;
      } else {
        t_hi = t;
      }
      if (t_hi - t_lo < 1e-16) break;
      t = 0.5 * (t_lo + t_hi);
    }
    const Point2 p = {lo[0] + t * (hi[0] - lo[0]), lo[1] + t * (hi[1] - lo[1])};
    vertices_.emplace(edge, p);
    return p;
  }

  CouplingPoint coupling(const Point2& p) const { return spec_.point(p[0], p[1]); }

 private:
  std::size_t index(std::size_t iu, std::size_t iv) const {
    return iv * spec_.resolution + iu;
  }
  std::size_t horizontal(std::size_t iu, std::size_t iv) const { return 2 * index(iu, iv); }
  std::size_t vertical(std::size_t iu, std::size_t iv) const { return 2 * index(iu, iv) + 1; }

  std::array<std::size_t, 4> edge_ends(std::size_t edge) const {
    const std::size_t idx = edge / 2;
    const std::size_t iu = idx % spec_.resolution;
    const std::size_t iv = idx / spec_.resolution;
    if (edge % 2 == 0) return {iu, iv, iu + 1, iv};
    return {iu, iv, iu, iv + 1};
  }

  Point2 uv(std::size_t iu, std::size_t iv) const {
    return {spec_.u_range.cell_center(iu, spec_.resolution),
            spec_.v_range.cell_center(iv, spec_.resolution)};
  }

  static double cross(const Point2& d, const Point2& x) { return d[0] * x[1] - d[1] * x[0]; }

  // Orders the pair so that the positive side lies to the left.
  Segment oriented(std::size_t e0, std::size_t e1, const std::array<Point2, 4>& corners,
                   const std::array<bool, 4>& positive,
                   const std::array<bool, 4>& use) {
    const Point2 a = vertex(e0);
    const Point2 b = vertex(e1);
    const Point2 d = {b[0] - a[0], b[1] - a[1]};
    const Point2 mid = {0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])};
    double score = 0.0;
    for (int k = 0; k < 4; ++k) {
      if (!use[k]) continue;
      const double side = cross(d, {corners[k][0] - mid[0], corners[k][1] - mid[1]});
      score += positive[k] ? side : -side;
    }
    return score >= 0.0 ? Segment{e0, e1} : Segment{e1, e0};
  }

  void cell_segments(std::size_t iu, std::size_t iv, std::vector<Segment>& out) {
    // Corners counter-clockwise from bottom-left, edges bottom/right/top/left.
    const std::array<std::array<std::size_t, 2>, 4> cc = {
        {{iu, iv}, {iu + 1, iv}, {iu + 1, iv + 1}, {iu, iv + 1}}};
    std::array<bool, 4> positive{};
    unsigned config = 0;
    for (int k = 0; k < 4; ++k) {
      positive[k] = values_[index(cc[k][0], cc[k][1])] > 0.0;
      if (positive[k]) config |= 1u << k;
    }
    if (config == 0 || config == 15) return;

    const std::array<std::size_t, 4> edges = {horizontal(iu, iv), vertical(iu + 1, iv),
                                              horizontal(iu, iv + 1), vertical(iu, iv)};
    std::array<Point2, 4> corners;
    for (int k = 0; k < 4; ++k) corners[k] = uv(cc[k][0], cc[k][1]);

    // Edge k joins corner k and corner k + 1.
    std::array<int, 4> crossing{};
    int count = 0;
    for (int k = 0; k < 4; ++k) {
      if (positive[k] != positive[(k + 1) % 4]) crossing[count++] = k;
    }

    if (count == 2) {
      out.push_back(oriented(edges[crossing[0]], edges[crossing[1]], corners, positive,
                             {true, true, true, true}));
      return;
    }

    // Saddle: resolve with the exact value at the cell centre. The corners whose
    // sign differs from the centre are cut off individually.
    const Point2 centre = {0.5 * (corners[0][0] + corners[2][0]),
                           0.5 * (corners[0][1] + corners[2][1])};
    const bool centre_positive = factor_value(factor_, coupling(centre)) > 0.0;
    for (int k = 0; k < 4; ++k) {
      if (positive[k] == centre_positive) continue;
      const int before = (k + 3) % 4;  // edge joining corner k-1 and k
      std::array<bool, 4> use{};
      use[k] = true;
      out.push_back(oriented(edges[before], edges[k], corners, positive, use));
    }
  }

  const SliceSpec& spec_;
  Factor factor_;
  std::vector<double> values_;
  std::unordered_map<std::size_t, Point2> vertices_;
};

}  // namespace

std::vector<BoundaryCurve> trace_boundary(const SliceSpec& spec, Factor factor,
                                          const TraceOptions& options) {
  spec.validate();
  Tracer tracer(spec, factor);
  std::vector<Segment> segments = tracer.segments();

  if (options.clip_eta) {
    const double limit = -*options.clip_eta;
    std::erase_if(segments, [&](const Segment& s) {
      const auto a = tracer.vertex(s.from_edge);
      const auto b = tracer.vertex(s.to_edge);
      const CouplingPoint mid = tracer.coupling({0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])});
      for (Factor other : kAllFactors) {
        if (other != factor && !(factor_value(other, mid) > limit)) return true;
      }
      return false;
    });
  }

  std::unordered_map<std::size_t, std::size_t> starting_at;
  std::unordered_map<std::size_t, std::size_t> ending_at;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    starting_at.emplace(segments[i].from_edge, i);
    ending_at.emplace(segments[i].to_edge, i);
  }

  std::vector<BoundaryCurve> curves;
  std::vector<bool> used(segments.size(), false);
  auto walk = [&](std::size_t first) {
    BoundaryCurve curve;
    curve.factor = factor;
    curve.polyline.push_back(tracer.vertex(segments[first].from_edge));
    std::size_t current = first;
    while (true) {
      used[current] = true;
      const std::size_t end_edge = segments[current].to_edge;
      curve.polyline.push_back(tracer.vertex(end_edge));
      const auto next = starting_at.find(end_edge);
      if (next == starting_at.end()) break;
      if (next->second == first) {
        curve.closed = true;
        curve.polyline.pop_back();
        break;
      }
      if (used[next->second]) break;
      current = next->second;
    }
    curves.push_back(std::move(curve));
  };

  // Open chains first, starting where no segment feeds in; then loops.
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (!used[i] && !ending_at.contains(segments[i].from_edge)) walk(i);
  }
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (!used[i]) walk(i);
  }
  return curves;
}

}  // namespace pt_horizon::topology
