#include <doctest.h>

#include "torusx/cli.hpp"

#include <cstdlib>
#include <sstream>

using namespace torusx;

namespace {

JobConfig job(std::string cmd, std::string poly, std::map<std::string, std::string> params = {}) {
  JobConfig j;
  j.command = std::move(cmd);
  j.polynomial = std::move(poly);
  j.params = std::move(params);
  return j;
}

Json result_of(const JobConfig& j) {
  Report r = run(j);
  REQUIRE(r.exit_code == 0);
  return Json::parse(r.text)["result"];
}

int main_with(std::vector<std::string> args, std::string& out, std::string& err) {
  args.insert(args.begin(), "torusx");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream o, e;
  int code = cli_main(static_cast<int>(argv.size()), argv.data(), o, e);
  out = o.str();
  err = e.str();
  return code;
}

}  // namespace

TEST_CASE("intersect on the coset example") {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"2/3", "1/3"}, {"-1", "2"}, {"6", "-5"}, {"1 - zeta4", "zeta4"}};
  for (const auto& [a, c] : cases) {
    CAPTURE(c);
    std::string base = "[\"" + a + "\",\"" + c + "\",\"1\"]";
    auto r = result_of(job("intersect", "x1 + x2 + x3 - 1",
                           {{"coset", "{\"base\":" + base + ",\"directions\":[[0,0,1]]}"}}));
    CHECK(r["verdict"]["status"] == "Empty");
    CHECK(r["verdict"]["monomial"] == "t");
  }
}

TEST_CASE("trop on a binomial") {
  auto r = result_of(job("trop", "x1*x2 - 1"));
  REQUIRE(r["cones"].size() == 1);
  CHECK(r["cones"][0]["lin_basis"] == Json::parse("[[1,-1]]"));
}

TEST_CASE("density with N = 0") {
  auto r = result_of(job("density", "x1 + x2 + x3 - 1", {{"N", "0"}}));
  CHECK(r["total"] == 1);
}

TEST_CASE("variables and --nvars") {
  auto r = result_of(job("trop", "x1 + x3"));
  CHECK(r["ambient_dim"] == 3);
  JobConfig j = job("trop", "x1 + x3");
  j.nvars = 4;
  CHECK(result_of(j)["ambient_dim"] == 4);
  j.nvars = 2;
  CHECK(run(j).exit_code == 1);
}

TEST_CASE("reports echo the config and are reproducible") {
  JobConfig j = job("amoeba", "x1 + x2 - 1", {{"count", "20"}, {"scale", "3"}});
  j.seed = 99;
  Report a = run(j), b = run(j);
  CHECK(a.text == b.text);
  auto doc = Json::parse(a.text);
  CHECK(doc["config"] == to_json(j));
  CHECK(doc["config"]["seed"] == 99);
  CHECK(doc["result"]["meta"]["seed"] == 99);
  CHECK(doc["result"]["meta"]["convention"] == "-Log");
  j.seed = 100;
  CHECK(run(j).text != a.text);
}

TEST_CASE("exit codes") {
  CHECK(run(job("surj", "x1 + x2 + x3 - 1", {{"A", "[[1,0,0],[0,1,0]]"}})).exit_code == 0);
  CHECK(run(job("surj", "x1 + x2 + x3 - 1", {{"A", "[[-1,-2,2],[1,-1,1]]"}, {"effort", "quick"}})).exit_code == 2);
  CHECK(run(job("frobnicate", "x1")).exit_code == 1);
  CHECK(run(job("trop", "x1 + ")).exit_code == 1);
  CHECK(run(job("intersect", "x1 + x2 - 1", {{"coset", "not json"}})).exit_code == 1);
  CHECK(run(job("intersect", "x1 + x2 - 1")).exit_code == 1);
  CHECK(run(job("density", "x1 + x2 - 1", {{"N", "1"}, {"mode", "sideways"}})).exit_code == 1);
  CHECK(run(job("amoeba", "x1 + x2 - 1", {{"count", "3"}, {"scale", "-1"}})).exit_code == 1);
}

TEST_CASE("caps are refusals") {
  JobConfig j = job("trop", "x1 + x2 + x3 - 1");
  j.caps.max_support = 3;
  Report r = run(j);
  CHECK(r.exit_code == 1);
  CHECK(Json::parse(r.text)["error"]["kind"] == "refused");

  j = job("density", "x1 + x2 + x3 - 1", {{"N", "1"}});
  j.caps.density_cap = 700;
  CHECK(Json::parse(run(j).text)["error"]["kind"] == "refused");

  j = job("amoeba", "x1 + x2 - 1", {{"count", "11"}, {"scale", "2"}});
  j.caps.max_amoeba_count = 10;
  CHECK(Json::parse(run(j).text)["error"]["kind"] == "refused");

  j = job("mm", "x1 + x2 - 1", {{"max-order", "31"}});
  CHECK(Json::parse(run(j).text)["error"]["kind"] == "refused");
  j.caps.max_torsion_order = 31;
  CHECK(run(j).exit_code == 0);
}

TEST_CASE("caps from the environment") {
  setenv("TORUSX_MAX_SUPPORT", "7", 1);
  setenv("TORUSX_DENSITY_CAP", "12", 1);
  Caps c = Caps::from_env();
  CHECK(c.max_support == 7);
  CHECK(c.density_cap == 12);
  CHECK(c.max_torsion_order == 30);
  setenv("TORUSX_MAX_SUPPORT", "many", 1);
  CHECK_THROWS_AS(Caps::from_env(), std::invalid_argument);
  unsetenv("TORUSX_MAX_SUPPORT");
  unsetenv("TORUSX_DENSITY_CAP");
}

TEST_CASE("plain output carries the JSON verdict") {
  JobConfig j = job("surj", "x1 + x2 + x3 - 1", {{"A", "[[1,1,0],[0,1,1]]"}});
  auto doc = Json::parse(run(j).text);
  j.json = false;
  std::string plain = run(j).text;
  CHECK(plain.find("status: " + doc["result"]["status"].get<std::string>() + "\n") == 0);
}

TEST_CASE("command line parsing") {
  std::string out, err;
  CHECK(main_with({"--plain", "script-n", "--point", R"({"order":5,"angles":[1,2]})"}, out, err) == 0);
  CHECK(out == "script_n: 3\n");

  // global options may follow the subcommand
  CHECK(main_with({"trop", "x1*x2 - 1", "--plain", "--seed", "4"}, out, err) == 0);
  CHECK(out.rfind("ambient_dim: 2\n", 0) == 0);

  CHECK(main_with({"--seed", "4", "density", "x1 + x2 - 1", "--N", "0"}, out, err) == 0);
  auto doc = Json::parse(out);
  CHECK(doc["config"]["seed"] == 4);
  CHECK(doc["config"]["params"]["N"] == "0");

  CHECK(main_with({"trop"}, out, err) != 0);
  CHECK(main_with({}, out, err) != 0);
  CHECK(main_with({"--seed", "-3", "trop", "x1 - 1"}, out, err) == 1);
  CHECK(main_with({"trop", "x1 +"}, out, err) == 1);
  CHECK(err.find("parse_error") != std::string::npos);
}
