#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"

using eulerkit::io::Json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out, err;
  Json json() const { return eulerkit::io::parse(out); }
};

Outcome cli(std::vector<std::string> args) {
  args.insert(args.begin(), "eulerkit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = eulerkit::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("eulerkit_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("specfun beta 0.5 0.5 is pi") {
  for (const char* method : {"integral", "gamma"}) {
    const auto r = cli({"specfun", "beta", "0.5", "0.5", "--method", method});
    REQUIRE(r.code == 0);
    const auto j = r.json()["result"];
    CHECK(std::abs(j["value"].get<double>() - M_PI) <= 1e-9);
    CHECK(j["method"] == method);
    CHECK(j["est_error"].get<double>() >= 0.0);
  }
}

TEST_CASE("specfun commands emit value, est_error and method") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"specfun", "gamma", "4.5"},
           {"specfun", "gamma", "-0.5"},
           {"specfun", "bessel-i", "0.5", "1"},
           {"specfun", "chain", "--n", "1", "--alpha", "-1", "--x", "0.5"},
           {"specfun", "chain", "--n", "1", "--alpha", "-1", "--x", "0.5", "--method", "integral"}}) {
    const auto r = cli(args);
    REQUIRE(r.code == 0);
    const auto j = r.json()["result"];
    CHECK(j.size() == 3);
    CHECK(j.contains("value"));
    CHECK(j.contains("est_error"));
    CHECK(j.contains("method"));
  }
  // -1/2 Gamma(-1/2) = Gamma(1/2)
  CHECK(cli({"specfun", "gamma", "-0.5"}).json()["result"]["value"].get<double>() ==
        doctest::Approx(-2 * std::sqrt(M_PI)).epsilon(1e-13));
  // I_{1/2}(1) = sqrt(2/pi) sinh(1)
  CHECK(cli({"specfun", "bessel-i", "0.5", "1"}).json()["result"]["value"].get<double>() ==
        doctest::Approx(std::sqrt(2 / M_PI) * std::sinh(1.0)).epsilon(1e-14));
}

TEST_CASE("ode beam reports b and the boundary") {
  const double l = 3.14159;
  const auto r = cli({"ode", "beam", "--K", "1", "--l", "3.14159", "--A", "1"});
  REQUIRE(r.code == 0);
  const auto j = r.json()["result"];
  CHECK(j["b"].get<double>() == doctest::Approx((std::sin(l) + std::sinh(l)) / (std::cos(l) + std::cosh(l))).epsilon(1e-14));
  CHECK(j["residual"].get<double>() <= 1e-8);
  CHECK(std::abs(j["boundary"]["y_l"].get<double>()) <= 1e-10);
  CHECK(j["boundary"]["y_0"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("ode oscillator and reduce2") {
  const auto res = cli({"ode", "oscillator", "--M", "1", "--K", "4", "--F", "1", "--wa", "2"}).json()["result"];
  CHECK(res["resonant"] == true);
  CHECK(res["steady_amplitude"].is_null());
  const auto off = cli({"ode", "oscillator", "--M", "1", "--K", "4", "--F", "1", "--wa", "1"}).json()["result"];
  CHECK(off["steady_amplitude"].get<double>() == doctest::Approx(1.0 / 3).epsilon(1e-15));
  // y'' + y = 0, y(0) = 0, y'(0) = 1 is sin x
  const auto red = cli({"ode", "reduce2", "--C", "1", "--B", "0", "--A", "1", "--yp0", "1", "--x", "1"});
  REQUIRE(red.code == 0);
  CHECK(std::abs(red.json()["result"]["value"].get<double>() - std::sin(1.0)) <= 1e-8);
  const auto forced = cli({"ode", "reduce2", "--C", "1", "--B", "0", "--A", "1", "--poly", "1", "--x", "2"});
  CHECK(std::abs(forced.json()["result"]["value"].get<double>() - (1 - std::cos(2.0))) <= 1e-8);
}

TEST_CASE("ode solve emits and consumes the solution schema bit-exactly") {
  const auto dir = scratch("roundtrip");
  const auto first = cli({"ode", "solve", "--coeffs", "2,3,1", "--cond", "0,0,1", "--cond", "1,0,0.5"});
  REQUIRE(first.code == 0);
  const auto sol = first.json()["result"]["solution"];
  CHECK(sol["order"] == 2);
  CHECK(first.json()["result"]["roots"].size() == 2);
  CHECK(first.json()["result"]["residual"].get<double>() <= 1e-12);
  const std::string text = eulerkit::io::dump(sol);
  write(dir / "sol.json", text);
  const auto second = cli({"ode", "solve", "--solution", (dir / "sol.json").string(), "--coeffs", "2,3,1"});
  REQUIRE(second.code == 0);
  CHECK(eulerkit::io::dump(second.json()["result"]["solution"]) == text);
  CHECK(second.json()["result"]["residual"] == first.json()["result"]["residual"]);

  auto tampered = sol;
  tampered["modes"][0]["poly"][0][0] = tampered["modes"][0]["poly"][0][0].get<double>() * (1 + 1e-15);
  write(dir / "bad.json", eulerkit::io::dump(tampered));
  const auto bad = cli({"ode", "solve", "--solution", (dir / "bad.json").string()});
  CHECK(bad.code == 2);
  CHECK(bad.json()["error"]["kind"] == "invalid_input");
}

TEST_CASE("identical invocations give identical output") {
  const std::vector<std::string> args{"var", "minimize", "--functional", "dirichlet", "--load", "1,0,-2", "--N", "30",
                                      "--perturb", "0.1", "--seed", "5"};
  const auto a = cli(args), b = cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto c = cli({"var", "minimize", "--functional", "dirichlet", "--load", "1,0,-2", "--N", "30", "--perturb",
                      "0.1", "--seed", "6"});
  CHECK(c.json()["manifest"]["flags"]["seed"] == 6);
}

TEST_CASE("var minimize: straight-line oracle, tolerances and artifacts") {
  const auto dir = scratch("var");
  const auto r = cli({"var", "minimize", "--functional", "arclength", "--N", "50", "--y1", "0.2", "--y2", "1.1",
                      "--perturb", "0.2", "--seed", "3", "--out", dir.string()});
  REQUIRE(r.code == 0);
  const auto j = r.json();
  CHECK(j["result"]["converged"] == true);
  CHECK(j["result"]["straight_line_dev"].get<double>() <= 1e-6);
  CHECK(j["manifest"]["tolerances"]["grad_tol"].get<double>() == 1e-7);
  CHECK(j["manifest"]["artifacts"][0]["columns"] == Json::array({"t", "y"}));
  CHECK(fs::exists(dir / "manifest.json"));
  CHECK(eulerkit::io::parse(slurp(dir / "manifest.json")).contains("timestamp"));
  CHECK(slurp(dir / "result.json") == r.out);
  const std::string csv = slurp(dir / "path.csv");
  CHECK(csv.rfind("t,y\n0,0.20000000000000001\n", 0) == 0);

  const auto again = cli({"var", "residual", "--functional", "arclength", "--y1", "0.2", "--y2", "1.1", "--path",
                          (dir / "path.csv").string()});
  REQUIRE(again.code == 0);
  CHECK(again.json()["result"]["objective"] == j["result"]["objective"]);
  CHECK(again.json()["result"]["el_residual"] == j["result"]["el_residual"]);

  const auto tight = cli({"var", "minimize", "--functional", "arclength", "--tol", "1e-9"});
  CHECK(tight.json()["manifest"]["tolerances"]["grad_tol"].get<double>() == 1e-9);
}

TEST_CASE("var minimize from a JSON config, flags override") {
  const auto dir = scratch("varcfg");
  write(dir / "geo.json", R"({"functional": "geodesic", "params": {"surface": "plane", "slopes": [0.3, -2]},
                           "N": 40, "endpoints": {"A": [0, 0], "B": [1, 0.5]}, "optimizer": {"grad_tol": 1e-8}})");
  const auto r = cli({"var", "minimize", "--config", (dir / "geo.json").string()});
  REQUIRE(r.code == 0);
  CHECK(r.json()["manifest"]["parameters"]["resolved"]["N"] == 40);
  CHECK(r.json()["result"]["converged"] == true);
  // the energy minimizer is the chord traversed at constant speed: length equals the lifted distance
  const double dz = 0.3 * 1 - 2 * 0.5;
  CHECK(r.json()["result"]["length"].get<double>() == doctest::Approx(std::sqrt(1 + 0.25 + dz * dz)).epsilon(1e-10));
  CHECK(r.json()["manifest"]["tolerances"]["grad_tol"].get<double>() == 1e-8);
  const auto o = cli({"var", "minimize", "--config", (dir / "geo.json").string(), "--N", "20", "--tol", "1e-9"});
  CHECK(o.json()["manifest"]["parameters"]["resolved"]["N"] == 20);
  CHECK(o.json()["manifest"]["tolerances"]["grad_tol"].get<double>() == 1e-9);
  write(dir / "bad.json", R"({"functional": "arclength", "optimizer": {"colour": 3}})");
  CHECK(cli({"var", "minimize", "--config", (dir / "bad.json").string()}).code == 2);
}

TEST_CASE("first-order commands") {
  const auto ex = cli({"first", "exact", "--M", "2,1,1", "--N", "1,2,0"});
  REQUIRE(ex.code == 0);
  CHECK(ex.json()["result"]["exact"] == true);
  CHECK(cli({"first", "exact", "--M", "1,0,1", "--N", "-1,1,0"}).json()["result"]["exact"] == false);

  // dx / 1 = (1/y) dy is not polynomial; dx = y dy through (0, 1) gives y^2 = 1 + 2x
  const auto dir = scratch("first");
  const auto sep = cli({"first", "separable", "--g", "0,1", "--y0", "1", "--x-lo", "0", "--x-hi", "1", "--grid-n", "5",
                        "--out", dir.string()});
  REQUIRE(sep.code == 0);
  std::istringstream rows(slurp(dir / "level_set.csv"));
  std::string line;
  std::getline(rows, line);
  CHECK(line == "x,y");
  while (std::getline(rows, line)) {
    const double x = std::stod(line.substr(0, line.find(','))), y = std::stod(line.substr(line.find(',') + 1));
    CHECK(y == doctest::Approx(std::sqrt(1 + 2 * x)).epsilon(1e-10));
  }

  const auto cl = cli({"first", "clairaut", "--g", "0,0,1", "--grid-n", "11"});
  REQUIRE(cl.code == 0);
  CHECK(cl.json()["result"]["samples"] == 11);
  CHECK(cl.json()["result"]["degenerate"] == false);
  CHECK(cli({"first", "clairaut", "--g", "1,2"}).json()["result"]["degenerate"] == true);

  // z' + z^2 = 0 with v = 0: z = 1/(x - 1) from z(0) = -1
  const auto ok = cli({"first", "riccati", "--a", "0", "--n", "0", "--v", "0", "--z0", "-1", "--x", "0.5"});
  REQUIRE(ok.code == 0);
  CHECK(ok.json()["result"]["value"].get<double>() == doctest::Approx(-2.0).epsilon(1e-10));
  const auto pole = cli({"first", "riccati", "--a", "0", "--n", "0", "--v", "0", "--z0", "-1", "--x", "2"});
  CHECK(pole.code == 1);
  CHECK(pole.json()["error"]["kind"] == "pole");
  CHECK(pole.json()["error"]["lo"].get<double>() <= 1.0);
  CHECK(pole.json()["error"]["hi"].get<double>() >= 1.0);
}

TEST_CASE("exit codes and usage") {
  const auto unknown = cli({"specfun", "beta", "1", "1", "--nope"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("Usage:") != std::string::npos);
  CHECK(cli({}).code == 2);
  CHECK(cli({"ode"}).code == 2);
  CHECK(cli({"ode", "beam", "--K", "1"}).code == 2);
  CHECK(cli({"specfun", "gamma", "-2"}).code == 2);
  CHECK(cli({"specfun", "beta", "1", "1", "--method", "magic"}).code == 2);
  CHECK(cli({"ode", "solve", "--coeffs", "1,x"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
  CHECK(cli({"--version"}).code == 0);
}

TEST_CASE("suite acceptance: group selection and config errors") {
  const auto only = cli({"suite", "acceptance", EULERKIT_CONFIG_DIR "/specfun_only.json"});
  REQUIRE(only.code == 0);
  const auto rep = only.json()["result"];
  REQUIRE(rep["criteria"].size() == 2);
  CHECK(rep["criteria"][0]["id"] == 5);
  CHECK(rep["criteria"][1]["id"] == 6);
  CHECK(rep["failed"] == 0);
  CHECK(rep["manifest"]["tolerances"]["5.beta_half_half_abs"].get<double>() == 1e-9);

  const auto dir = scratch("suite");
  write(dir / "corrupt.json", "{\"seed\": 1, \"groups\": [\"specfun\"");
  CHECK(cli({"suite", "acceptance", (dir / "corrupt.json").string()}).code == 2);
  write(dir / "unknown.json", R"({"groups": ["astrology"]})");
  CHECK(cli({"suite", "acceptance", (dir / "unknown.json").string()}).code == 2);
  CHECK(cli({"suite", "acceptance", (dir / "missing.json").string()}).code == 2);
  CHECK(cli({"suite", "acceptance"}).code == 2);

  // configuration order fixes output order
  write(dir / "order.json", R"({"groups": ["variational", "specfun"]})");
  const auto ordered = cli({"suite", "acceptance", (dir / "order.json").string()}).json()["result"]["criteria"];
  std::vector<int> ids;
  for (const auto& c : ordered) ids.push_back(c["id"].get<int>());
  CHECK(ids == std::vector<int>{8, 9, 10, 5, 6});
}
