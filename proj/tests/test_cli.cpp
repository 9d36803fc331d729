#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cyclecert/cli.hpp"

namespace fs = std::filesystem;
using namespace cyclecert;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "cyclecert");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name, const std::string& content) {
  const fs::path dir = fs::temp_directory_path() / "cyclecert_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << content;
  return p;
}

std::string golden(const std::string& name) {
  return (fs::path(CYCLECERT_SOURCE_DIR) / "tests/golden" / name).string();
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

// Text of <g id="...">...</g> (no nested groups inside the layers).
std::string group(const std::string& svg, const std::string& id) {
  const auto start = svg.find("<g id=\"" + id + "\"");
  if (start == std::string::npos) return {};
  const auto end = svg.find("</g>", start);
  return svg.substr(start, end - start);
}

const char* kFailing =
    "point A = (0.1, 0.9)\n"
    "point B = (-0.8, -0.3)\n"
    "point C = (0.9, -0.2)\n"
    "check collinear(A, B, C)\n";

}  // namespace

TEST_CASE("check subcommand") {
  const Outcome ok = invoke({"check", "sawayama_lemma", "--trials", "50"});
  CHECK(ok.code == cli::exit_ok);
  CHECK(ok.out.find("sawayama_lemma") != std::string::npos);
  CHECK(ok.out.find("100.00%") != std::string::npos);

  const Outcome bad = invoke({"check", "nosuch"});
  CHECK(bad.code == cli::exit_error);
  CHECK(bad.err.find("unknown scenario 'nosuch'") != std::string::npos);
  CHECK(bad.err.find("classical_thebault") != std::string::npos);

  const Outcome none = invoke({"check", "classical_thebault", "--trials", "0"});
  CHECK(none.code == cli::exit_ok);
}

TEST_CASE("check writes a JSON report") {
  const fs::path out = fs::temp_directory_path() / "cyclecert_cli_test" / "report.json";
  fs::create_directories(out.parent_path());
  const Outcome r = invoke({"check", "bisector_lemma", "--trials", "5", "--json", out.string()});
  CHECK(r.code == cli::exit_ok);
  std::ifstream f(out);
  const auto j = nlohmann::json::parse(f);
  CHECK(j["schema"] == 1);
  CHECK(j["reports"].size() == 5);
}

TEST_CASE("fuzz subcommand and tolerance override") {
  const Outcome r = invoke({"fuzz", "--scenario", "classical_thebault", "--scenario", "sawayama_alt", "--trials", "10"});
  CHECK(r.code == cli::exit_ok);
  CHECK(r.out.find("classical_thebault") != std::string::npos);
  CHECK(r.out.find("sawayama_alt") != std::string::npos);

  // Below rounding level some residuals fail while the trials stay applicable.
  const Outcome tight = invoke({"check", "bisector_lemma", "--trials", "10", "--tol", "1e-17"});
  CHECK(tight.code == cli::exit_check_failed);
  CHECK(tight.out.find("FAIL") != std::string::npos);

  CHECK(invoke({"check", "classical_thebault", "--tol", "-1"}).code == cli::exit_error);
  CHECK(invoke({"check", "classical_thebault", "--bogus"}).code == cli::exit_error);
  CHECK(invoke({}).code == cli::exit_error);
}

TEST_CASE("tolerance from the environment") {
  setenv(cli::kToleranceEnv, "1e-17", 1);
  const Outcome tight = invoke({"check", "bisector_lemma", "--trials", "10"});
  setenv(cli::kToleranceEnv, "abc", 1);
  const Outcome junk = invoke({"check", "generalized_thebault", "--trials", "10"});
  unsetenv(cli::kToleranceEnv);
  CHECK(tight.code == cli::exit_check_failed);
  CHECK(junk.code == cli::exit_error);
}

TEST_CASE("run subcommand exit codes") {
  const Outcome pass = invoke({"run", golden("classical_thebault.scene")});
  CHECK(pass.code == cli::exit_ok);
  CHECK(pass.out.find("2/2 assertions passed") != std::string::npos);

  const Outcome fail = invoke({"run", scratch("failing.scene", kFailing).string()});
  CHECK(fail.code == cli::exit_check_failed);
  CHECK(fail.out.find("FAIL") != std::string::npos);

  const Outcome missing = invoke({"run", "/nonexistent/script.scene"});
  CHECK(missing.code == cli::exit_error);

  const fs::path broken = scratch("broken.scene", "point A = (0, @)\n");
  const Outcome syntax = invoke({"run", broken.string()});
  CHECK(syntax.code == cli::exit_error);
  CHECK(syntax.err.find(broken.string() + ":1:15: error:") != std::string::npos);

  const Outcome undefined = invoke({"run", scratch("undef.scene", "point A = (0, 0)\ncheck on(A, Q)\n").string()});
  CHECK(undefined.code == cli::exit_error);
  CHECK(undefined.err.find(":2:") != std::string::npos);
}

TEST_CASE("render a scenario") {
  const Outcome r = invoke({"render", "--scenario", "classical_thebault"});
  REQUIRE(r.code == cli::exit_ok);
  const std::string& svg = r.out;
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  // Omega, the incircle and the two tangent circles.
  CHECK(count(group(svg, "circles"), "<circle") == 4);
  CHECK(count(group(svg, "lines"), "<line") >= 2);
  CHECK(group(svg, "points").find("<circle") != std::string::npos);
  CHECK(svg.find("<g id=\"labels\"") != std::string::npos);

  // Byte-identical on re-render.
  CHECK(invoke({"render", "--scenario", "classical_thebault"}).out == svg);
  CHECK(invoke({"render", "--scenario", "classical_thebault", "--seed", "7"}).out != svg);
}

TEST_CASE("render parabolas only on request") {
  const Outcome plain = invoke({"render", "--scenario", "generalized_thebault"});
  const Outcome with = invoke({"render", "--scenario", "generalized_thebault", "--parabola"});
  REQUIRE(plain.code == cli::exit_ok);
  REQUIRE(with.code == cli::exit_ok);
  CHECK(count(plain.out, "<polyline") == 0);
  REQUIRE(count(with.out, "<polyline") == 1);
  const auto start = with.out.find("points=\"");
  const auto end = with.out.find('"', start + 8);
  const std::string pts = with.out.substr(start + 8, end - start - 8);
  CHECK(count(pts, ",") == 256);
}

TEST_CASE("render a script to a file and with style overrides") {
  const fs::path out = fs::temp_directory_path() / "cyclecert_cli_test" / "thebault.svg";
  const Outcome r = invoke({"render", golden("classical_thebault.scene"), "--out", out.string(), "--style",
                         "width=400", "--style", "height=300"});
  REQUIRE(r.code == cli::exit_ok);
  CHECK(r.out.empty());
  std::ifstream f(out);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str().find("width=\"400.000000\"") != std::string::npos);
  CHECK(ss.str().find("height=\"300.000000\"") != std::string::npos);

  CHECK(invoke({"render", golden("classical_thebault.scene"), "--style", "width=-4"}).code == cli::exit_error);
  CHECK(invoke({"render", golden("classical_thebault.scene"), "--style", "nosuch=1"}).code == cli::exit_error);
  CHECK(invoke({"render", golden("classical_thebault.scene"), "--style", "width"}).code == cli::exit_error);
  CHECK(invoke({"render"}).code == cli::exit_error);
  CHECK(invoke({"render", "--scenario", "nosuch"}).code == cli::exit_error);
}

TEST_CASE("render an empty scene") {
  const Outcome r = invoke({"render", scratch("empty.scene", "# nothing\n").string()});
  REQUIRE(r.code == cli::exit_ok);
  CHECK(r.out.find("<svg") != std::string::npos);
  CHECK(r.out.find("</svg>") != std::string::npos);
  CHECK(r.out.find("nan") == std::string::npos);
  CHECK(count(r.out, "<circle") == 0);
}

TEST_CASE("help exits cleanly") {
  const Outcome r = invoke({"--help"});
  CHECK(r.code == cli::exit_ok);
  CHECK(r.out.find("check") != std::string::npos);
}
