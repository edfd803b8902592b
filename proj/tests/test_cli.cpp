#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ncat/cli.hpp"

using json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run ncat_run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = ncat::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("ncat_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

std::string first_code(const std::string& err) {
  std::istringstream in(err);
  std::string line;
  std::getline(in, line);
  return json::parse(line).at("code").get<std::string>();
}

}  // namespace

TEST_CASE("example tetrahedral") {
  const Run r = ncat_run({"example", "tetrahedral"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["flagged"] == false);
  REQUIRE(j["solutions"].size() == 1);
  CHECK(j["solutions"][0]["branched"] == false);
  CHECK(j["solutions"][0]["verification"]["single_valued"] == true);
  CHECK(ncat_run({"example", "tetrahedral"}).out == r.out);
}

TEST_CASE("flagged example warns on stderr") {
  const Run r = ncat_run({"example", "tetrahedral-flat"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["flagged"] == true);
  CHECK(json::parse(r.err.substr(0, r.err.find('\n')))["level"] == "warning");
}

TEST_CASE("obstructed input exits 1") {
  const std::string in = temp_file("obstructed.json",
                                   R"({"vectors": [[1,0,0],[-1,0,0],[0,0,1],[0,0,1]], "weights": [1,1,1,-1]})");
  const Run r = ncat_run({"solve", in});
  CHECK(r.code == 1);
  CHECK(first_code(r.err) == "ObstructedInput");
  const json j = json::parse(r.out);
  CHECK(j["obstructions"]["obstructed"] == true);
  CHECK(j["obstructions"]["hits"][0]["condition"] == 4);
}

TEST_CASE("square-flux example verifies") {
  const Run ex = ncat_run({"example", "square-flux", "--param", "p=1.2"});
  REQUIRE(ex.code == 0);
  CHECK(json::parse(ex.out)["solutions"].size() == 4);
  const std::string sols = temp_file("square.json", ex.out);
  const Run v = ncat_run({"verify", sols, "--contour-samples", "512"});
  CHECK(v.code == 0);
  CHECK(json::parse(v.out)["passed"] == true);
}

TEST_CASE("solve output feeds verify and mesh") {
  const std::string in = temp_file("cat.json", R"({"vectors": [[0,0,1],[0,0,-1]], "weights": [1,1]})");
  const Run s = ncat_run({"solve", in});
  REQUIRE(s.code == 0);
  const std::string sols = temp_file("cat_solutions.json", s.out);
  CHECK(ncat_run({"verify", sols}).code == 0);
  const std::string cfg = temp_file("cat_cfg.json", R"({"grid_steps": 8, "radial_steps": 2, "angular_steps": 12})");
  const std::string obj = (std::filesystem::temp_directory_path() / "ncat_test_cat.obj").string();
  const Run m = ncat_run({"mesh", sols, "--sampling", cfg, "-o", obj});
  REQUIRE(m.code == 0);
  CHECK(json::parse(m.out)["vertices"].get<int>() > 0);
  CHECK(std::filesystem::file_size(obj) > 0);
}

TEST_CASE("invalid input exits 2") {
  const std::string bad = temp_file("bad.json", R"({"vectors": [[0,0,2],[0,0,-1]], "weights": [1,1]})");
  Run r = ncat_run({"solve", bad});
  CHECK(r.code == 2);
  CHECK(first_code(r.err) == "InvalidInput");

  r = ncat_run({"example", "no-such-surface"});
  CHECK(r.code == 2);
  CHECK(first_code(r.err) == "UnknownName");

  CHECK(ncat_run({"example", "zm", "--param", "m=1"}).code == 2);
  CHECK(ncat_run({"frobnicate"}).code == 2);
  CHECK(ncat_run({"solve", "/nonexistent/flux.json"}).code == 2);
}
