#include "replidyn/config.hpp"

#include "doctest.h"
#include "fixtures.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace replidyn;

namespace {

const char* kBaselineJson =
    R"({"alpha":0.5,"beta":6,"gamma":6,"delta":2,"epsilon":-1,"eta":2.5,"l":0.5,"n":0.5})";
const char* kHighAlphaJson =
    R"({"alpha":2,"beta":6,"gamma":6,"delta":2,"epsilon":-1,"eta":2.5,"l":0.5,"n":0.5})";

std::string error_of(const std::string& text) {
  try {
    parse_run_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("full configuration parses with integrator and scan settings") {
  const RunConfig cfg = parse_run_config(
      R"({"alpha":0.5,"beta":6,"gamma":6,"delta":2,"epsilon":-1,"eta":2.5,
          "l":0.5,"n":0.5,
          "integrator":{"h":0.005,"t_max":200,"eps_conv":1e-7,"record_stride":5},
          "resolution":40,"seed":123})");
  CHECK(cfg.params.alpha == 0.5);
  CHECK(cfg.params.eta == 2.5);
  CHECK(cfg.integrator.h == 0.005);
  CHECK(cfg.integrator.t_max == 200.0);
  CHECK(cfg.integrator.eps_conv == 1e-7);
  CHECK(cfg.integrator.record_stride == 5);
  CHECK(cfg.resolution == 40);
  CHECK(cfg.seed == 123);
}

TEST_CASE("omitted optional settings take their defaults") {
  const RunConfig cfg = parse_run_config(kBaselineJson);
  CHECK(cfg.integrator.h == 0.01);
  CHECK(cfg.integrator.t_max == 10000.0);
  CHECK(cfg.integrator.eps_conv == 1e-6);
  CHECK(cfg.resolution == 100);
  CHECK(cfg.seed == 42);
}

TEST_CASE("schema violations name the offending field") {
  CHECK(error_of(R"({"alpha":1})").find("\"beta\"") != std::string::npos);
  CHECK(error_of(
            R"({"alpha":1,"beta":1,"gamma":1,"delta":1,"epsilon":1,"eta":1,"l":0.5,"n":0.5,"zeta":3})")
            .find("\"zeta\"") != std::string::npos);
  CHECK(error_of(
            R"({"alpha":"x","beta":1,"gamma":1,"delta":1,"epsilon":1,"eta":1,"l":0.5,"n":0.5})")
            .find("\"alpha\"") != std::string::npos);
  CHECK(error_of(
            R"({"alpha":1,"beta":1,"gamma":1,"delta":1,"epsilon":1,"eta":1,"l":1.2,"n":0.5})")
            .find("l must lie") != std::string::npos);
  CHECK(error_of("{nope")
            .find("not valid JSON") != std::string::npos);
  CHECK(error_of("[1,2,3]").find("object") != std::string::npos);
}

TEST_CASE("integrator and scan settings are range checked") {
  const std::string base =
      R"("alpha":1,"beta":1,"gamma":1,"delta":1,"epsilon":1,"eta":1,"l":0.5,"n":0.5)";
  CHECK(error_of("{" + base + R"(,"integrator":{"h":-0.1}})").find("h must be") !=
        std::string::npos);
  CHECK(error_of("{" + base + R"(,"integrator":{"dt":0.1}})").find("\"dt\"") !=
        std::string::npos);
  CHECK(error_of("{" + base + R"(,"integrator":{"record_stride":1.5}})")
            .find("integer") != std::string::npos);
  CHECK(error_of("{" + base + R"(,"integrator":3})").find("object") !=
        std::string::npos);
  CHECK(error_of("{" + base + R"(,"resolution":5})").find("at least 10") !=
        std::string::npos);
  CHECK(error_of("{" + base + R"(,"resolution":20.5})").find("integer") !=
        std::string::npos);
  CHECK(error_of("{" + base + R"(,"seed":-1})").find("nonnegative") !=
        std::string::npos);
}

TEST_CASE("config loading reports unreadable paths") {
  CHECK_THROWS_AS(load_run_config("/nonexistent/replidyn.json"), ConfigError);
}

TEST_SUITE_BEGIN("cli");

namespace {

std::filesystem::path scratch_dir() {
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "replidyn_cli_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_scratch(const std::string& name, const std::string& content) {
  const std::filesystem::path p = scratch_dir() / name;
  std::ofstream f(p);
  f << content;
  return p.string();
}

int run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd =
      (env.empty() ? "" : env + " ") + std::string(REPLIDYN_CLI_PATH) + " " + args;
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  REQUIRE(f.good());
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("classify reads a config file and writes a report") {
  const std::string cfg = write_scratch("baseline.json", kBaselineJson);
  const std::filesystem::path out = scratch_dir() / "report.json";
  CHECK(run_cli("classify --config " + cfg + " --out " + out.string() +
                " 2>/dev/null") == 0);
  const std::string report = slurp(out);
  CHECK(report.find("\"regime\": \"R1\"") != std::string::npos);
  CHECK(report.find("\"portrait\": \"PP7\"") != std::string::npos);
  CHECK(report.find("\"interior\"") != std::string::npos);
}

TEST_CASE("input errors exit with code 2") {
  CHECK(run_cli("classify 2>/dev/null") == 2);
  CHECK(run_cli("classify --params 'not json' 2>/dev/null") == 2);
  const std::string bad = write_scratch(
      "bad_l.json",
      R"({"alpha":0.5,"beta":6,"gamma":6,"delta":2,"epsilon":-1,"eta":2.5,"l":1.2,"n":0.5})");
  CHECK(run_cli("classify --config " + bad + " 2>/dev/null") == 2);
  CHECK(run_cli("classify --config /nonexistent.json 2>/dev/null") == 2);
  CHECK(run_cli("simulate --params '" + std::string(kBaselineJson) +
                "' --x0 0.5,0.6,-0.1 2>/dev/null") == 2);
  CHECK(run_cli("simulate --params '" + std::string(kBaselineJson) +
                "' --x0 0.5,0.5 2>/dev/null") == 2);
  CHECK(run_cli("definitely-not-a-command 2>/dev/null") == 2);
}

TEST_CASE("degenerate parameters exit with code 3 and a diagnostic") {
  const std::filesystem::path out = scratch_dir() / "degenerate.json";
  const int rc = run_cli(
      "classify --params "
      R"('{"alpha":0.5,"beta":6,"gamma":6,"delta":5,"epsilon":-1,"eta":2.5,"l":0.5,"n":0.5}')"
      " > " + out.string() + " 2>/dev/null");
  CHECK(rc == 3);
  CHECK(slurp(out).find("degenerate_parameters") != std::string::npos);
}

TEST_CASE("unwritable output paths exit with code 4") {
  CHECK(run_cli("classify --params '" + std::string(kBaselineJson) +
                "' --out /nonexistent/dir/report.json 2>/dev/null") == 4);
}

TEST_CASE("assumption violations yield a refusal, not an error") {
  const std::filesystem::path out = scratch_dir() / "violating.json";
  const int rc = run_cli(
      "classify --params "
      R"('{"alpha":0.5,"beta":-6,"gamma":-6,"delta":2,"epsilon":4,"eta":2.5,"l":0.5,"n":0.5}')"
      " > " + out.string() + " 2>/dev/null");
  CHECK(rc == 0);
  const std::string report = slurp(out);
  CHECK(report.find("\"regime\": null") != std::string::npos);
  CHECK(report.find("refusal") != std::string::npos);
}

TEST_CASE("simulate writes the trajectory and a chart companion") {
  const std::filesystem::path out = scratch_dir() / "traj.csv";
  const int rc = run_cli("simulate --params '" + std::string(kHighAlphaJson) +
                         "' --x0 0.2,0.3,0.5 --coords lv --out " + out.string() +
                         " 2>/dev/null");
  CHECK(rc == 0);
  const std::string csv = slurp(out);
  CHECK(csv.rfind("t,x1,x2,x3\n", 0) == 0);
  CHECK(csv.find("0.5") != std::string::npos);
  const std::string lv = slurp(scratch_dir() / "traj.lv.csv");
  CHECK(lv.rfind("t,X,Y\n", 0) == 0);
  CHECK(lv.find("2.5") != std::string::npos);  // Y(0) = x3/x1
}

TEST_CASE("basin scans are byte-identical across worker counts") {
  const std::string cfg = write_scratch("basins.json", kBaselineJson);
  const std::filesystem::path serial = scratch_dir() / "serial.csv";
  const std::filesystem::path wide = scratch_dir() / "wide.csv";
  CHECK(run_cli("basins --config " + cfg + " --resolution 15 --out " +
                serial.string() + " --threads 1 2>/dev/null") == 0);
  CHECK(run_cli("basins --config " + cfg + " --resolution 15 --out " +
                wide.string() + " --threads 4 2>/dev/null") == 0);
  const std::string a = slurp(serial);
  CHECK(a == slurp(wide));
  CHECK(a.rfind("x1,x2,x3,label\n", 0) == 0);

  // The environment variable routes the same knob.
  const std::filesystem::path via_env = scratch_dir() / "via_env.csv";
  CHECK(run_cli("basins --config " + cfg + " --resolution 15 --out " +
                via_env.string() + " 2>/dev/null",
                "REPLIDYN_THREADS=3") == 0);
  CHECK(a == slurp(via_env));
}

TEST_CASE("basin summary lands where asked") {
  const std::string cfg = write_scratch("basins2.json", kHighAlphaJson);
  const std::filesystem::path summary = scratch_dir() / "summary.json";
  CHECK(run_cli("basins --config " + cfg +
                " --resolution 12 --out /dev/null --summary " + summary.string() +
                " 2>/dev/null") == 0);
  const std::string text = slurp(summary);
  CHECK(text.find("\"fractions\"") != std::string::npos);
  CHECK(text.find("\"unresolved\": 0") != std::string::npos);
}

TEST_CASE("portrait renders a self-contained SVG") {
  const std::filesystem::path out = scratch_dir() / "portrait.svg";
  const int rc = run_cli("portrait --params '" + std::string(kBaselineJson) +
                         "' --basin-resolution 16 --trajectories 4 --out " +
                         out.string() + " 2>/dev/null");
  CHECK(rc == 0);
  const std::string svg = slurp(out);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  for (const char* color : {"#ffee8c", "#8cc6ff", "#ffc9de"})
    CHECK(svg.find(color) != std::string::npos);
  CHECK(svg.find("regime R1") != std::string::npos);
}

TEST_CASE("portrait of the withdrawal-only economy shades one basin") {
  const std::filesystem::path out = scratch_dir() / "portrait42.svg";
  CHECK(run_cli("portrait --params '" + std::string(kHighAlphaJson) +
                "' --basin-resolution 16 --trajectories 4 --out " + out.string() +
                " 2>/dev/null") == 0);
  const std::string svg = slurp(out);
  CHECK(svg.find("#ffc9de") != std::string::npos);
  CHECK(svg.find("#ffee8c") == std::string::npos);
  CHECK(svg.find("#8cc6ff") == std::string::npos);
  CHECK(svg.find("regime R4") != std::string::npos);
}

TEST_CASE("the property suite passes and failures are expressible") {
  CHECK(run_cli("verify --random 20 --seed 42 > /dev/null 2>&1") == 0);
  CHECK(run_cli("verify --random 0 2>/dev/null") == 2);
}

TEST_SUITE_END();
