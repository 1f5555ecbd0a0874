#include "pt_horizon/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pt_horizon/errors.hpp"
#include "pt_horizon/identities.hpp"
#include "pt_horizon/io.hpp"
#include "pt_horizon/model.hpp"
#include "pt_horizon/oracle.hpp"
#include "pt_horizon/topology.hpp"

namespace pt_horizon::cli {
namespace {

using nlohmann::json;
using topology::Axis;
using topology::Mode;

double parse_number(std::string_view text, const std::string& what) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last || !std::isfinite(value)) {
    fail(ErrorKind::kInvalidInput, "cannot parse " + what + " from '" + std::string(text) + "'");
  }
  return value;
}

Axis parse_axis_or_fail(std::string_view text) {
  const auto axis = topology::parse_axis(text);
  if (!axis) fail(ErrorKind::kInvalidInput, "unknown axis '" + std::string(text) + "'");
  return *axis;
}

// "b=0.1"
std::pair<Axis, double> parse_fix(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) fail(ErrorKind::kInvalidInput, "--fix expects axis=value");
  return {parse_axis_or_fail(text.substr(0, eq)), parse_number(text.substr(eq + 1), "--fix value")};
}

// "a=-3:3"
std::pair<Axis, topology::Range> parse_range(const std::string& text) {
  const auto eq = text.find('=');
  const auto colon = text.find(':', eq == std::string::npos ? 0 : eq);
  if (eq == std::string::npos || colon == std::string::npos) {
    fail(ErrorKind::kInvalidInput, "--range expects axis=min:max");
  }
  const Axis axis = parse_axis_or_fail(text.substr(0, eq));
  const topology::Range r{parse_number(text.substr(eq + 1, colon - eq - 1), "range min"),
                          parse_number(text.substr(colon + 1), "range max")};
  if (!(r.min < r.max)) fail(ErrorKind::kInvalidInput, "--range needs min < max");
  return {axis, r};
}

Mode parse_mode_or_fail(const std::string& text) {
  const auto mode = topology::parse_mode(text);
  if (!mode) fail(ErrorKind::kInvalidInput, "--mode must be strict or real");
  return *mode;
}

topology::FactorMask parse_factors(const std::string& text) {
  topology::FactorMask mask{false, false, false};
  for (char ch : text) {
    switch (ch) {
      case 'W':
      case 'w':
        mask.w = true;
        break;
      case 'Q':
      case 'q':
        mask.q = true;
        break;
      case 'P':
      case 'p':
        mask.p = true;
        break;
      default:
        fail(ErrorKind::kInvalidInput, "--factors accepts only W, Q, P");
    }
  }
  if (!mask.w && !mask.q && !mask.p) fail(ErrorKind::kInvalidInput, "--factors is empty");
  return mask;
}

json complex_list(const std::array<Complex, 4>& values) {
  json out = json::array();
  for (const Complex& v : sorted_by_modulus(values)) out.push_back({v.real(), v.imag()});
  return out;
}

json spectrum_json(const Spectrum& s) {
  return {{"values", complex_list(s.values)},
          {"classification", to_string(s.classification)},
          {"min_gap", s.min_gap}};
}

json point_json(const CouplingPoint& p) { return {{"a", p.a}, {"b", p.b}, {"c", p.c}}; }

std::string join_factors(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += ',';
    out += n;
  }
  return out;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) fail(ErrorKind::kInvalidInput, "cannot write '" + path + "'");
  return file;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream file = open_output(path);
  file << text;
  if (!file) fail(ErrorKind::kInvalidInput, "cannot write '" + path + "'");
}

struct SliceFlags {
  std::string fix;
  std::vector<std::string> ranges;
  std::size_t res = 800;
  double eta = 0.0;
  std::string mode = "strict";
  std::string factors = "WQP";
};

void add_slice_flags(CLI::App* cmd, SliceFlags& f) {
  cmd->add_option("--range", f.ranges, "Free-axis range, axis=min:max (repeatable)");
  cmd->add_option("--res", f.res, "Samples per axis");
  cmd->add_option("--eta", f.eta, "Positivity margin");
  cmd->add_option("--mode", f.mode, "Membership mode: strict or real");
  cmd->add_option("--factors", f.factors, "Factors tested for membership, e.g. WQP or P");
}

topology::SliceSpec slice_spec(const SliceFlags& f) {
  const auto [axis, value] = parse_fix(f.fix);
  topology::SliceSpec spec =
      topology::make_slice(axis, value, f.res, f.eta, parse_mode_or_fail(f.mode));
  spec.factors = parse_factors(f.factors);
  const auto [u_axis, v_axis] = spec.free_axes();
  for (const auto& text : f.ranges) {
    const auto [ax, r] = parse_range(text);
    if (ax == u_axis) {
      spec.u_range = r;
    } else if (ax == v_axis) {
      spec.v_range = r;
    } else {
      fail(ErrorKind::kInvalidInput, "--range names the fixed axis");
    }
  }
  spec.validate();
  return spec;
}

struct SliceArtifacts {
  topology::SliceGrid grid;
  topology::ComponentReport report;
};

SliceArtifacts write_slice(const topology::SliceSpec& spec, const std::string& csv_path,
                           const std::string& svg_path) {
  SliceArtifacts art{topology::sample_slice(spec), {}};
  art.report = topology::components2d(art.grid);
  {
    std::ofstream csv = open_output(csv_path);
    io::write_slice_csv(csv, art.grid, art.report);
    if (!csv) fail(ErrorKind::kInvalidInput, "cannot write '" + csv_path + "'");
  }
  if (!svg_path.empty()) {
    std::vector<topology::BoundaryCurve> curves;
    for (Factor factor : kAllFactors) {
      auto traced = topology::trace_boundary(spec, factor);
      curves.insert(curves.end(), traced.begin(), traced.end());
    }
    std::ofstream svg = open_output(svg_path);
    io::write_slice_svg(svg, art.grid, art.report, curves);
    if (!svg) fail(ErrorKind::kInvalidInput, "cannot write '" + svg_path + "'");
  }
  return art;
}

int cmd_classify(const CouplingPoint& p, double eta, const std::string& mode_text, bool as_json,
                 std::ostream& out) {
  const Mode mode = parse_mode_or_fail(mode_text);
  if (!p.finite()) fail(ErrorKind::kInvalidInput, "couplings must be finite");
  const DiscriminantTriple d = eval_discriminants(p);
  const Spectrum closed = energies(p);
  const Spectrum oracle_spec = oracle::eigenvalues(build_circular(p));
  const bool inside = topology::membership(p, eta, mode);

  const double tol = boundary_tolerance(p);
  const double n = p.norm();
  const double near_tol = 1e-6 * (1.0 + n * n * n * n);
  std::vector<std::string> negative, boundary, near_zero;
  for (Factor f : kAllFactors) {
    const double v = d[f];
    const std::string name(to_string(f));
    if (v < -tol) {
      negative.push_back(name);
    } else if (v <= std::max(tol, eta)) {
      boundary.push_back(name);
    }
    if (std::abs(v) <= near_tol) near_zero.push_back(name);
  }
  std::string verdict;
  if (inside) {
    verdict = "inside";
  } else if (!negative.empty()) {
    verdict = "outside(" + join_factors(negative) + ")";
  } else {
    verdict = "boundary(" + join_factors(boundary) + ")";
  }

  if (as_json) {
    json j = {{"point", point_json(p)},
              {"W", d.w},
              {"Q", d.q},
              {"P", d.p},
              {"closed_form", spectrum_json(closed)},
              {"oracle", spectrum_json(oracle_spec)},
              {"verdict", inside ? "inside" : (negative.empty() ? "boundary" : "outside")},
              {"negative", negative},
              {"boundary", boundary},
              {"near_zero", near_zero}};
    out << j.dump(2) << '\n';
  } else {
    out << "point    a=" << io::format_double(p.a) << " b=" << io::format_double(p.b)
        << " c=" << io::format_double(p.c) << '\n';
    out << "W=" << io::format_double(d.w) << " Q=" << io::format_double(d.q)
        << " P=" << io::format_double(d.p) << '\n';
    auto print = [&](const char* label, const Spectrum& s) {
      out << label;
      for (const Complex& v : sorted_by_modulus(s.values)) {
        out << ' ' << io::format_double(v.real());
        if (v.imag() != 0.0) out << (v.imag() < 0 ? "-" : "+") << io::format_double(std::abs(v.imag())) << 'i';
      }
      out << "  [" << to_string(s.classification) << "]\n";
    };
    print("closed-form energies:", closed);
    print("oracle energies:     ", oracle_spec);
    out << "verdict: " << verdict;
    if (!inside && !near_zero.empty()) out << "  (near zero: " << join_factors(near_zero) << ")";
    out << '\n';
  }
  return inside ? kExitOk : kExitNegative;
}

int cmd_spectrum(const CouplingPoint& p, std::ostream& out) {
  if (!p.finite()) fail(ErrorKind::kInvalidInput, "couplings must be finite");
  const Spectrum closed = energies(p);
  const Spectrum oracle_spec = oracle::eigenvalues(build_circular(p));
  json j = {{"point", point_json(p)},
            {"closed_form", spectrum_json(closed)},
            {"oracle", spectrum_json(oracle_spec)},
            {"max_deviation", matched_distance(closed.values, oracle_spec.values)},
            {"real_degenerate",
             oracle_spec.classification == SpectrumClass::kRealDegenerate}};
  out << j.dump(2) << '\n';
  return kExitOk;
}

std::vector<double> default_sweep() {
  const double r5 = std::sqrt(5.0);
  return {r5 - 0.01, r5 - 0.5, r5 - 1.0, 1.01, 1.0, 0.999, 0.6, 0.4, 0.2, 0.1};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reality domain of the PT-symmetric four-site lattice"};
  app.name("pt_horizon");
  app.require_subcommand(1);

  CouplingPoint point;
  double eta = 0.0;
  std::string mode = "strict";
  bool as_json = false;

  auto* classify = app.add_subcommand("classify", "Membership verdict for one point");
  classify->add_option("--a", point.a);
  classify->add_option("--b", point.b);
  classify->add_option("--c", point.c);
  classify->add_option("--eta", eta, "Positivity margin");
  classify->add_option("--mode", mode, "strict or real");
  classify->add_flag("--json", as_json, "Emit JSON instead of text");

  auto* spectrum = app.add_subcommand("spectrum", "Closed-form and oracle energies");
  spectrum->add_option("--a", point.a);
  spectrum->add_option("--b", point.b);
  spectrum->add_option("--c", point.c);

  SliceFlags slice_flags;
  std::string csv_path = "slice.csv";
  std::string svg_path;
  auto* slice = app.add_subcommand("slice", "Sample a 2-D slice to CSV (and SVG)");
  slice->add_option("--fix", slice_flags.fix, "Fixed axis, axis=value")->required();
  add_slice_flags(slice, slice_flags);
  slice->add_option("--out", csv_path, "CSV output path");
  slice->add_option("--svg", svg_path, "SVG output path");

  SliceFlags comp_flags;
  bool box = false;
  std::size_t box_res = 160;
  std::string comp_out;
  auto* components = app.add_subcommand("components", "Connected components as JSON");
  components->add_option("--fix", comp_flags.fix, "Fixed axis for a 2-D slice, axis=value");
  components->add_flag("--box", box, "Label the full 3-D box instead of a slice");
  components->add_option("--range", comp_flags.ranges, "Axis range, axis=min:max (repeatable)");
  auto* comp_res = components->add_option("--res", comp_flags.res, "Samples per axis");
  components->add_option("--eta", comp_flags.eta, "Positivity margin");
  components->add_option("--mode", comp_flags.mode, "strict or real");
  components->add_option("--factors", comp_flags.factors, "Factors tested, e.g. WQP or P");
  components->add_option("--out", comp_out, "JSON output path (stdout when omitted)");

  std::string b_list;
  std::size_t sweep_res = 400;
  double sweep_eta = 0.0;
  std::string sweep_mode = "strict";
  std::string out_dir = "sweep";
  bool no_svg = false;
  auto* sweep = app.add_subcommand("sweep", "Slices at a list of b values plus summary.json");
  sweep->add_option("--b-list", b_list, "Comma-separated b values");
  sweep->add_option("--res", sweep_res, "Samples per axis");
  sweep->add_option("--eta", sweep_eta, "Positivity margin");
  sweep->add_option("--mode", sweep_mode, "strict or real");
  sweep->add_option("--out-dir", out_dir, "Output directory");
  sweep->add_flag("--no-svg", no_svg, "Skip SVG rendering");

  std::string verify_out;
  auto* verify = app.add_subcommand("verify", "Run the algebraic identity suite");
  verify->add_option("--out", verify_out, "JSON output path (stdout when omitted)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }

  try {
    if (*classify) return cmd_classify(point, eta, mode, as_json, out);
    if (*spectrum) return cmd_spectrum(point, out);

    if (*slice) {
      const auto spec = slice_spec(slice_flags);
      const auto art = write_slice(spec, csv_path, svg_path);
      out << json{{"csv", csv_path}, {"count", art.report.count}}.dump() << '\n';
      return kExitOk;
    }

    if (*components) {
      json report;
      if (box) {
        topology::BoxSpec spec;
        spec.resolution = comp_res->count() > 0 ? comp_flags.res : box_res;
        spec.eta = comp_flags.eta;
        spec.mode = parse_mode_or_fail(comp_flags.mode);
        spec.factors = parse_factors(comp_flags.factors);
        for (const auto& text : comp_flags.ranges) {
          const auto [axis, r] = parse_range(text);
          (axis == Axis::kA ? spec.a_range : axis == Axis::kB ? spec.b_range : spec.c_range) = r;
        }
        report = io::component_report_json(topology::components3d(spec));
      } else {
        if (comp_flags.fix.empty()) fail(ErrorKind::kInvalidInput, "components needs --fix or --box");
        const auto grid = topology::sample_slice(slice_spec(comp_flags));
        report = io::component_report_json(topology::components2d(grid));
      }
      if (comp_out.empty()) {
        out << report.dump(2) << '\n';
      } else {
        write_text(comp_out, report.dump(2) + "\n");
      }
      return kExitOk;
    }

    if (*sweep) {
      std::vector<double> bs;
      if (b_list.empty()) {
        bs = default_sweep();
      } else {
        std::stringstream ss(b_list);
        std::string item;
        while (std::getline(ss, item, ',')) bs.push_back(parse_number(item, "--b-list entry"));
      }
      std::error_code ec;
      std::filesystem::create_directories(out_dir, ec);
      if (ec) fail(ErrorKind::kInvalidInput, "cannot create '" + out_dir + "'");
      json slices = json::array();
      for (std::size_t i = 0; i < bs.size(); ++i) {
        SliceFlags f;
        f.fix = "b=" + io::format_double(bs[i]);
        f.res = sweep_res;
        f.eta = sweep_eta;
        f.mode = sweep_mode;
        const auto spec = slice_spec(f);
        char stem[32];
        std::snprintf(stem, sizeof stem, "slice_%02zu", i);
        const std::string csv = std::string(stem) + ".csv";
        const std::string svg = no_svg ? "" : std::string(stem) + ".svg";
        const auto art = write_slice(spec, (std::filesystem::path(out_dir) / csv).string(),
                                     svg.empty() ? "" : (std::filesystem::path(out_dir) / svg).string());
        json entry = {{"b", bs[i]}, {"count", art.report.count}, {"csv", csv}};
        if (!svg.empty()) entry["svg"] = svg;
        slices.push_back(entry);
      }
      const json summary = {{"resolution", sweep_res},
                            {"eta", sweep_eta},
                            {"mode", sweep_mode},
                            {"slices", slices}};
      write_text((std::filesystem::path(out_dir) / "summary.json").string(), summary.dump(2) + "\n");
      out << summary.dump(2) << '\n';
      return kExitOk;
    }

    if (*verify) {
      const auto report = identities::run_all();
      const std::string text = identities::report_json(report).dump(2) + "\n";
      if (verify_out.empty()) {
        out << text;
      } else {
        write_text(verify_out, text);
      }
      return identities::any_failed(report) ? kExitNegative : kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace pt_horizon::cli
