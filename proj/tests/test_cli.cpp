#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hahn/cli.hpp"
#include "hahn/kinematics.hpp"

using namespace hahn;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json invoke_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  const Outcome result = invoke(args);
  REQUIRE(result.code == 0);
  return json::parse(result.out);
}

double max_column_diff(const json& doc, const std::string& a, const std::string& b) {
  double worst = 0.0;
  const auto& ca = doc["columns"][a];
  const auto& cb = doc["columns"][b];
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (ca[i].is_null() || cb[i].is_null()) continue;
    worst = std::max(worst, std::abs(ca[i].get<double>() - cb[i].get<double>()));
  }
  return worst;
}

}  // namespace

TEST_CASE("kinematics subcommand") {
  SUBCASE("no motion gives a constant column") {
    const json doc = invoke_json({"kinematics", "--a", "0", "--v0", "0", "--x0", "2.5"});
    for (const char* column : {"x_closed", "x_iterative", "x_second_order", "x_classical"}) {
      for (const auto& value : doc["columns"][column]) CHECK(value.get<double>() == doctest::Approx(2.5).epsilon(1e-14));
    }
  }

  SUBCASE("routes agree and the summary reports it") {
    const Outcome result = invoke({"kinematics", "--routes", "closed,iterative", "--v0", "1", "--a", "2"});
    REQUIRE(result.code == 0);
    const auto key = result.out.find("# summary max_abs_diff(x_closed,x_iterative)=");
    REQUIRE(key != std::string::npos);
    const auto start = result.out.find('=', key) + 1;
    CHECK(std::stod(result.out.substr(start, result.out.find('\n', start) - start)) < 1e-9);
    CHECK(result.out.find("x_second_order") == std::string::npos);
  }

  SUBCASE("closed column equals the library") {
    const json doc = invoke_json({"kinematics", "--q", "0.3", "--w", "1", "--v0", "-1", "--a", "0.5"});
    const DeformationParams p(0.3, 1.0);
    const auto& t = doc["columns"]["t"];
    REQUIRE(t.size() == 11);
    for (std::size_t i = 0; i < t.size(); ++i) {
      CHECK(doc["columns"]["x_closed"][i].get<double>() ==
            uniform_accel_position({0.0, -1.0, 0.5}, t[i].get<double>(), p));
    }
  }

  SUBCASE("near-classical deformation") {
    // The deviation from the parabola is a t^2 (1/[2]_q - 1/2) - a w t / [2]_q,
    // about a t^2 eps / 4, so a 1e-5 bound needs a short time range.
    const json wide = invoke_json({"kinematics", "--q", "0.999", "--w", "1e-6", "--routes", "closed"});
    const auto& t = wide["columns"]["t"];
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double s = t[i].get<double>();
      const double deviation = s * s * (1.0 / 1.999 - 0.5) - 1e-6 * s / 1.999;
      CHECK(wide["columns"]["x_closed"][i].get<double>() - wide["columns"]["x_classical"][i].get<double>() ==
            doctest::Approx(deviation).epsilon(1e-9).scale(1e-12));
    }
    const json short_range =
        invoke_json({"kinematics", "--q", "0.999", "--w", "1e-6", "--t-end", "0.1", "--routes", "closed"});
    CHECK(max_column_diff(short_range, "x_closed", "x_classical") < 1e-5);
  }

  SUBCASE("metadata block") {
    const json doc = invoke_json({"kinematics"});
    for (const char* key : {"command", "q", "w", "w0", "x0", "v0", "a", "t_start", "t_end", "samples",
                            "routes", "tol", "max_terms"}) {
      CHECK(doc["metadata"].contains(key));
    }
    CHECK(doc["metadata"]["tol"] == "1e-14");
    CHECK(doc["metadata"]["max_terms"] == "10000");
  }
}

TEST_CASE("drag subcommand") {
  SUBCASE("nothing moves without field or initial velocity") {
    const json doc = invoke_json({"drag", "--g", "0", "--v0", "0"});
    for (const char* column : {"v_closed", "v_series", "v_iterative", "v_classical"}) {
      for (const auto& value : doc["columns"][column]) CHECK(value.get<double>() == 0.0);
    }
  }

  SUBCASE("three routes agree at the default parameters") {
    const json doc = invoke_json({"drag"});
    CHECK(max_column_diff(doc, "v_closed", "v_series") < 1e-6);
    CHECK(max_column_diff(doc, "v_closed", "v_iterative") < 1e-6);
    CHECK(max_column_diff(doc, "v_series", "v_iterative") < 1e-6);
    CHECK(doc["metadata"]["iter_n"] == "150");
    CHECK(doc["metadata"]["boundary_datum"] == "tangent");
  }

  SUBCASE("pure drag selects 120 iterations") {
    const json doc = invoke_json({"drag", "--g", "0", "--v0", "2"});
    CHECK(doc["metadata"]["iter_n"] == "120");
  }

  SUBCASE("classical limit at t = 1") {
    const json doc = invoke_json({"drag", "--q", "0.999", "--w", "1e-6", "--g", "9.8", "--v0", "0"});
    const auto& t = doc["columns"]["t"];
    bool found = false;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i].get<double>() != 1.0) continue;
      found = true;
      CHECK(std::abs(doc["columns"]["v_closed"][i].get<double>() - 19.6 * (1.0 - std::exp(-0.5))) < 5e-2);
    }
    CHECK(found);
  }

  SUBCASE("pole rows are flagged, not filled") {
    // kappa = 1/3 and kappa s = -1 at t = 6.2
    const json doc = invoke_json({"drag", "--m", "2", "--k", "1", "--v0", "1", "--g", "0", "--t-start", "6.2",
                                  "--t-end", "7.2", "--samples", "2", "--routes", "closed"});
    CHECK(doc["flags"][0] == "pole");
    CHECK(doc["columns"]["v_closed"][0].is_null());
    CHECK(doc["flags"][1] == "ok");
  }
}

TEST_CASE("verify subcommand") {
  const Outcome ok = invoke({"verify"});
  CHECK(ok.code == cli::kSuccess);
  CHECK(ok.out.find("FAIL") == std::string::npos);
  CHECK(ok.out.find("verify: 33/33 passed") != std::string::npos);

  const Outcome strict = invoke({"verify", "--tol", "1e-30"});
  CHECK(strict.code == cli::kVerificationFailed);

  const Outcome grid = invoke({"verify", "--q-grid", "0.3,0.5,0.9"});
  for (const char* q : {"q=0.3 ", "q=0.5 ", "q=0.9 "}) CHECK(grid.out.find(q) != std::string::npos);
}

TEST_CASE("sweep subcommand") {
  SUBCASE("single-point sweep equals the base command") {
    const json base = invoke_json({"kinematics", "--v0", "1"});
    const json swept = invoke_json({"sweep", "kinematics", "--v0", "1", "--sweep", "q=0.5:0.5:1"});
    for (const auto& [name, values] : base["columns"].items()) CHECK(swept["columns"][name] == values);
    CHECK(swept["flags"] == base["flags"]);
    for (const auto& value : swept["columns"]["q"]) CHECK(value.get<double>() == 0.5);
  }

  SUBCASE("quadratic term scales as 1 / [2]_q") {
    const json doc = invoke_json({"sweep", "kinematics", "--a", "2", "--w", "0", "--t-start", "3", "--samples",
                                  "1", "--sweep", "q=0.1:0.9:9"});
    const auto& q = doc["columns"]["q"];
    REQUIRE(q.size() == 9);
    for (std::size_t i = 0; i < q.size(); ++i) {
      const double qi = q[i].get<double>();
      CHECK(doc["columns"]["x_closed"][i].get<double>() * (1.0 + qi) == doctest::Approx(18.0));
      if (i > 0) CHECK(qi > q[i - 1].get<double>());
    }
  }

  SUBCASE("row order is q-major, then w, then t") {
    const json doc = invoke_json(
        {"sweep", "drag", "--sweep", "q=0.3:0.9:3", "--sweep", "w=0.01:0.1:2", "--samples", "3"});
    const auto& q = doc["columns"]["q"];
    const auto& w = doc["columns"]["w"];
    const auto& t = doc["columns"]["t"];
    REQUIRE(q.size() == 18);
    for (std::size_t i = 1; i < q.size(); ++i) {
      const auto key = [&](std::size_t r) {
        return std::tuple(q[r].get<double>(), w[r].get<double>(), t[r].get<double>());
      };
      CHECK(key(i - 1) < key(i));
    }
    CHECK(max_column_diff(doc, "v_closed", "v_iterative") < 1e-6);
  }

  SUBCASE("repeated runs are byte-identical") {
    const std::vector<std::string> args{"sweep", "drag", "--sweep", "q=0.3:0.9:4", "--sweep", "w=0:1:3"};
    CHECK(invoke(args).out == invoke(args).out);
    const std::vector<std::string> kin{"kinematics", "--format", "json"};
    CHECK(invoke(kin).out == invoke(kin).out);
  }

  SUBCASE("bad axis") {
    CHECK(invoke({"sweep", "drag", "--sweep", "m=1:2:3"}).code == cli::kUsageError);
    CHECK(invoke({"sweep", "drag", "--sweep", "q=0.1:0.9"}).code == cli::kUsageError);
    CHECK(invoke({"sweep", "drag", "--sweep", "q=0.1:1.5:3"}).code == cli::kUsageError);
  }
}

TEST_CASE("csv layout") {
  const Outcome result = invoke({"drag", "--samples", "3", "--routes", "closed"});
  REQUIRE(result.code == 0);
  std::istringstream lines(result.out);
  std::string line;
  std::vector<std::string> body;
  bool header_done = false;
  while (std::getline(lines, line)) {
    if (line.rfind("# summary ", 0) == 0) continue;
    if (line.rfind("# ", 0) == 0) {
      CHECK_FALSE(header_done);
      CHECK(line.find('=') != std::string::npos);
      continue;
    }
    header_done = true;
    body.push_back(line);
  }
  REQUIRE(body.size() == 4);
  CHECK(body[0] == "t,v_closed,v_classical,flag");
  CHECK(body[1].substr(0, 2) == "0,");
  CHECK(body[1].substr(body[1].size() - 3) == ",ok");
}

TEST_CASE("exit codes") {
  CHECK(invoke({}).code == cli::kUsageError);
  CHECK(invoke({"kinematics", "--q", "1.5"}).code == cli::kUsageError);
  CHECK(invoke({"kinematics", "--w", "-0.1"}).code == cli::kUsageError);
  CHECK(invoke({"kinematics", "--routes", "magic"}).code == cli::kUsageError);
  CHECK(invoke({"drag", "--m", "0"}).code == cli::kUsageError);
  CHECK(invoke({"drag", "--format", "xml"}).code == cli::kUsageError);
  CHECK(invoke({"kinematics", "--t-end", "-1"}).code == cli::kUsageError);
  CHECK(invoke({"kinematics", "--help"}).code == cli::kSuccess);

  const Outcome starved = invoke({"kinematics", "--routes", "iterative", "--max-terms", "2"});
  CHECK(starved.code == cli::kColumnNonConvergent);
  CHECK(starved.out.find("nonconvergent") != std::string::npos);
}
