#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pt_horizon/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using pt_horizon::cli::kExitError;
using pt_horizon::cli::kExitNegative;
using pt_horizon::cli::kExitOk;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = pt_horizon::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "pt_horizon_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Distinct non-negative values of the last CSV column.
std::set<int> component_ids(const std::string& csv, std::size_t* rows = nullptr,
                            std::size_t* inside = nullptr) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::set<int> ids;
  std::size_t n = 0;
  std::size_t k = 0;
  while (std::getline(in, line)) {
    ++n;
    const int id = std::stoi(line.substr(line.rfind(',') + 1));
    const char flag = line[line.rfind(',') - 1];
    if (flag == '1') ++k;
    CHECK((id >= 0) == (flag == '1'));
    if (id >= 0) ids.insert(id);
  }
  if (rows) *rows = n;
  if (inside) *inside = k;
  return ids;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("classify") {
  const auto origin = run({"classify", "--a", "0", "--b", "0", "--c", "0"});
  CHECK(origin.code == kExitOk);
  CHECK(origin.out.find("W=64 Q=9 P=10") != std::string::npos);
  CHECK(origin.out.find("verdict: inside") != std::string::npos);

  const auto complex = run({"classify", "--a", "0", "--b", "2.2360680", "--c", "0", "--json"});
  CHECK(complex.code == kExitNegative);
  const json j = json::parse(complex.out);
  CHECK(j["verdict"] == "outside");
  CHECK(j["W"].get<double>() == doctest::Approx(-256).epsilon(1e-6));
  CHECK(j["negative"][0] == "W");
  CHECK(j["near_zero"] == json::array({"P"}));

  CHECK(run({"classify", "--a", "2.9"}).code == kExitOk);

  const auto pinch = run({"classify", "--a", "2.8284271247461903", "--json"});
  CHECK(pinch.code == kExitNegative);
  CHECK(json::parse(pinch.out)["verdict"] == "boundary");
  CHECK(run({"classify", "--a", "2.8284271247461903", "--mode", "real"}).code == kExitOk);
}

TEST_CASE("argument errors exit with 2") {
  CHECK(run({}).code == kExitError);
  CHECK(run({"classify", "--a", "x"}).code == kExitError);
  CHECK(run({"classify", "--bogus", "1"}).code == kExitError);
  CHECK(run({"classify", "--mode", "loose"}).code == kExitError);
  CHECK(run({"classify", "--eta", "-1"}).code == kExitError);
  CHECK(run({"slice", "--fix", "d=1"}).code == kExitError);
  CHECK(run({"slice", "--fix", "b=0", "--res", "8"}).code == kExitError);
  CHECK(run({"slice", "--fix", "b=0", "--range", "a=1:1"}).code == kExitError);
  CHECK(run({"components"}).code == kExitError);
  CHECK(run({"components", "--box", "--res", "1001"}).code == kExitError);
  CHECK(run({"slice", "--fix", "b=0", "--res", "16", "--out", "/nonexistent/dir/x.csv"}).code ==
        kExitError);
  CHECK_FALSE(run({"classify", "--a", "x"}).err.empty());
}

TEST_CASE("spectrum") {
  const auto r = run({"spectrum"});
  CHECK(r.code == kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["max_deviation"].get<double>() < 1e-12);
  CHECK(j["oracle"]["classification"] == "real-simple");

  const json one = json::parse(run({"spectrum", "--a", "1", "--b", "1", "--c", "1"}).out);
  CHECK(one["max_deviation"].get<double>() < 1e-12);
  const json pinch = json::parse(run({"spectrum", "--a", "2.8284271247461903"}).out);
  CHECK(pinch["real_degenerate"] == true);
}

TEST_CASE("slice CSV") {
  const fs::path csv = scratch("b01.csv");
  const fs::path svg = scratch("b01.svg");
  const auto r = run({"slice", "--fix", "b=0.1", "--res", "800", "--out", csv.string(), "--svg",
                      svg.string()});
  REQUIRE(r.code == kExitOk);
  CHECK(json::parse(r.out)["count"] == 3);
  const std::string text = slurp(csv);
  CHECK(text.substr(0, text.find('\n')) == "u,v,W,Q,P,inside,component");
  std::size_t rows = 0;
  CHECK(component_ids(text, &rows).size() == 3);
  CHECK(rows == 640000);

  const std::string picture = slurp(svg);
  CHECK(picture.rfind("<svg", 0) == 0);
  CHECK(picture.find("data-factor=\"W\"") != std::string::npos);
  CHECK(picture.find("data-factor=\"Q\"") != std::string::npos);
  CHECK(picture.find("data-factor=\"P\"") != std::string::npos);
}

TEST_CASE("slice outputs are deterministic") {
  const fs::path x = scratch("det_x.csv");
  const fs::path y = scratch("det_y.csv");
  REQUIRE(run({"slice", "--fix", "c=0", "--res", "200", "--out", x.string()}).code == kExitOk);
  REQUIRE(run({"slice", "--fix", "c=0", "--res", "200", "--out", y.string()}).code == kExitOk);
  CHECK(slurp(x) == slurp(y));
  const auto first = run({"components", "--fix", "b=0.2", "--res", "300"});
  const auto second = run({"components", "--fix", "b=0.2", "--res", "300"});
  CHECK(first.out == second.out);
}

TEST_CASE("empty and single-component slices") {
  const fs::path empty = scratch("empty.csv");
  REQUIRE(run({"slice", "--fix", "b=2.2260680", "--res", "256", "--out", empty.string()}).code ==
          kExitOk);
  std::size_t inside = 1;
  CHECK(component_ids(slurp(empty), nullptr, &inside).empty());
  CHECK(inside == 0);

  const fs::path straight = scratch("a0.csv");
  REQUIRE(run({"slice", "--fix", "a=0", "--res", "400", "--out", straight.string()}).code ==
          kExitOk);
  CHECK(component_ids(slurp(straight)).size() == 1);
}

TEST_CASE("components") {
  const json c0 = json::parse(run({"components", "--fix", "c=0", "--res", "800"}).out);
  CHECK(c0["count"] == 3);
  REQUIRE(c0["components"].size() == 3);
  for (const auto& c : c0["components"]) {
    CHECK(c.contains("id"));
    CHECK(c.contains("samples"));
    CHECK(c["bbox"]["min"].size() == 2);
    CHECK(c.contains("area"));
  }
  CHECK(json::parse(run({"components", "--fix", "b=0.999", "--res", "800"}).out)["count"] == 1);

  const fs::path out = scratch("box.json");
  REQUIRE(run({"components", "--box", "--res", "64", "--factors", "P", "--out", out.string()})
              .code == kExitOk);
  const json box = json::parse(slurp(out));
  CHECK(box["count"] == 1);
  CHECK(box["components"][0]["bbox"]["min"].size() == 3);
}

TEST_CASE("sweep") {
  const fs::path dir = scratch("sweep");
  fs::remove_all(dir);
  const auto r = run({"sweep", "--res", "200", "--out-dir", dir.string(), "--no-svg"});
  REQUIRE(r.code == kExitOk);
  const json summary = json::parse(slurp(dir / "summary.json"));
  REQUIRE(summary["slices"].size() == 10);
  std::map<double, int> counts;
  for (const auto& s : summary["slices"]) {
    counts[s["b"].get<double>()] = s["count"].get<int>();
    CHECK(fs::exists(dir / s["csv"].get<std::string>()));
  }
  CHECK(counts.at(1.01) == 2);
  CHECK(counts.at(0.999) == 1);
  CHECK(counts.at(0.6) == 1);
  CHECK(counts.at(0.2) == 3);

  const fs::path custom = scratch("sweep_custom");
  fs::remove_all(custom);
  REQUIRE(run({"sweep", "--b-list", "0.1,1.5", "--res", "64", "--out-dir", custom.string()})
              .code == kExitOk);
  CHECK(fs::exists(custom / "slice_01.svg"));
  CHECK(run({"sweep", "--b-list", "0.1,zz", "--out-dir", custom.string()}).code == kExitError);
}

TEST_CASE("verify") {
  const auto r = run({"verify"});
  CHECK(r.code == kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["checks"].size() == 8);
  bool annotated = false;
  for (const auto& c : j["checks"]) {
    CHECK(c["status"] != "Fails");
    if (c["name"] == "c0_forms") {
      CHECK(c["status"] == "Holds");
      annotated = c["note"].get<std::string>().find("printed-form mismatch") != std::string::npos;
    }
  }
  CHECK(annotated);
}

}  // TEST_SUITE
