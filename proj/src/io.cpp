#include "pt_horizon/io.hpp"

#include <array>
#include <charconv>

namespace pt_horizon::io {
namespace {

constexpr double kCanvas = 800.0;
constexpr std::array<const char*, 6> kPalette = {"#9ecae1", "#fdae6b", "#a1d99b",
                                                 "#bcbddc", "#fc9272", "#d9d9d9"};

const char* dash_for(Factor f) {
  switch (f) {
    case Factor::kW:
      return "";
    case Factor::kQ:
      return " stroke-dasharray=\"8,5\"";
    case Factor::kP:
      return " stroke-dasharray=\"1.5,4\"";
  }
  return "";
}

}  // namespace

std::string format_double(double x) {
  std::array<char, 64> buf{};
  const auto res =
      std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

void write_slice_csv(std::ostream& out, const topology::SliceGrid& grid,
                     const topology::ComponentReport& report) {
  const auto& spec = grid.spec;
  const std::size_t n = spec.resolution;
  out << kSliceCsvHeader << '\n';
  std::string line;
  for (std::size_t iv = 0; iv < n; ++iv) {
    const std::string v = format_double(spec.v_range.cell_center(iv, n));
    for (std::size_t iu = 0; iu < n; ++iu) {
      const std::size_t idx = grid.index(iu, iv);
      const auto& d = grid.discriminants[idx];
      line.clear();
      line += format_double(spec.u_range.cell_center(iu, n));
      line += ',';
      line += v;
      line += ',';
      line += format_double(d.w);
      line += ',';
      line += format_double(d.q);
      line += ',';
      line += format_double(d.p);
      line += grid.membership[idx] ? ",1," : ",0,";
      line += std::to_string(report.labels.empty() ? -1 : report.labels[idx]);
      line += '\n';
      out << line;
    }
  }
}

void write_slice_svg(std::ostream& out, const topology::SliceGrid& grid,
                     const topology::ComponentReport& report,
                     const std::vector<topology::BoundaryCurve>& curves) {
  const auto& spec = grid.spec;
  const std::size_t n = spec.resolution;
  const double cell = kCanvas / double(n);
  auto to_x = [&](double u) { return (u - spec.u_range.min) / spec.u_range.width() * kCanvas; };
  auto to_y = [&](double v) {
    return kCanvas - (v - spec.v_range.min) / spec.v_range.width() * kCanvas;
  };
  const auto [u_axis, v_axis] = spec.free_axes();

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvas << "\" height=\""
      << kCanvas << "\" viewBox=\"0 0 " << kCanvas << ' ' << kCanvas << "\">\n";
  out << "<title>" << topology::to_string(spec.fixed_axis) << " = "
      << format_double(spec.fixed_value) << "; horizontal " << topology::to_string(u_axis)
      << ", vertical " << topology::to_string(v_axis) << "</title>\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<g shape-rendering=\"crispEdges\">\n";
  for (std::size_t iv = 0; iv < n; ++iv) {
    std::size_t iu = 0;
    while (iu < n) {
      if (!grid.inside(iu, iv)) {
        ++iu;
        continue;
      }
      const std::int32_t label = report.labels.empty() ? 0 : report.labels[grid.index(iu, iv)];
      std::size_t end = iu + 1;
      while (end < n && grid.inside(end, iv) &&
             (report.labels.empty() || report.labels[grid.index(end, iv)] == label)) {
        ++end;
      }
      const char* fill = kPalette[std::size_t(std::max(label, 0)) % kPalette.size()];
      out << "<rect x=\"" << format_double(double(iu) * cell) << "\" y=\""
          << format_double(kCanvas - double(iv + 1) * cell) << "\" width=\""
          << format_double(double(end - iu) * cell) << "\" height=\"" << format_double(cell)
          << "\" fill=\"" << fill << "\"/>\n";
      iu = end;
    }
  }
  out << "</g>\n<g fill=\"none\" stroke=\"black\" stroke-width=\"1.2\">\n";
  for (const auto& curve : curves) {
    out << "<" << (curve.closed ? "polygon" : "polyline") << " data-factor=\""
        << to_string(curve.factor) << "\"" << dash_for(curve.factor) << " points=\"";
    bool first = true;
    for (const auto& p : curve.polyline) {
      if (!first) out << ' ';
      first = false;
      out << format_double(to_x(p[0])) << ',' << format_double(to_y(p[1]));
    }
    out << "\"/>\n";
  }
  out << "</g>\n</svg>\n";
}

nlohmann::json component_report_json(const topology::ComponentReport& report) {
  nlohmann::json components = nlohmann::json::array();
  for (const auto& c : report.components) {
    components.push_back({{"id", c.id},
                          {"samples", c.samples},
                          {"bbox", {{"min", c.bbox_min}, {"max", c.bbox_max}}},
                          {"area", c.area}});
  }
  return {{"count", report.count}, {"components", components}};
}

}  // namespace pt_horizon::io
