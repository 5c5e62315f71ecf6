#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "pvosc/report.hpp"

using namespace pvosc;
using nlohmann::json;

namespace {

const std::string kFixtures = PVOSC_FIXTURE_DIR;
const std::string kDecide = PVOSC_DECIDE_EXE;

json load(const std::string& name) {
  std::ifstream in(kFixtures + "/" + name);
  REQUIRE(in);
  return json::parse(in);
}

int exit_status(const std::string& args, const std::string& out_file = "/dev/null") {
  const std::string cmd = kDecide + " " + args + " > " + out_file + " 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("report for the (1,2,1) system over 1/3") {
  const RunResult r = run(parse_config(load("example2.json")));
  CHECK(r.exit_code == 0);
  const json& j = r.report;
  CHECK(j["verdicts"]["osc"] == "holds");
  CHECK(j["verdicts"]["ssc"] == "fails");
  CHECK(j["start_set"].size() == 5);
  CHECK(j["diagnostics"]["card_C"] == 145);
  CHECK(j["diagnostics"]["card_Xi"] == 435);
  CHECK(j["diagnostics"]["k0"] == 3);
  CHECK(j["diagnostics"].contains("runtimes_ms"));
  REQUIRE(j["witnesses"].size() == 1);
  CHECK(j["witnesses"][0]["kind"] == "lasso");
  CHECK(j["witnesses"][0]["replay"]["verified"] == true);
  CHECK(j["scaled"]["scale_a"] == "18");
}

TEST_CASE("report for the silver ratio system") {
  RunConfig c = parse_config(load("example3.json"));
  c.options.refined = true;
  const RunResult r = run(c);
  CHECK(r.exit_code == 0);
  CHECK(r.report["diagnostics"]["card_Xi"] == 1059);
  CHECK(r.report["verdicts"]["refined_osc"] == "fails");
  CHECK(r.report["corollaries"]["interior_nonempty"] == false);
  CHECK(r.report["field"]["minpoly"].is_string());
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS_AS(parse_config(load("bad_b.json")), Error);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"minpoly":[-3,1],"p":[1],"b":["0","1"]})")), Error);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"minpoly":[-3,1],"p":[1.5],"b":["0"]})")), Error);
  CHECK_THROWS_AS(parse_config(json::parse(R"([1,2])")), Error);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"minpoly":[-3,1],"p":[1],"b":["0"],"options":{"refined":"yes"}})")),
                  Error);
  const RunResult r = run(parse_config(load("not_pisot.json")));
  CHECK(r.exit_code == 2);
  CHECK(r.report["error"]["kind"] == "NotPisot");
}

TEST_CASE("exit codes of the decide binary") {
  CHECK(exit_status("--config " + kFixtures + "/bad_b.json") == 2);
  CHECK(exit_status("--config " + kFixtures + "/not_pisot.json") == 2);
  CHECK(exit_status("--config " + kFixtures + "/does_not_exist.json") == 2);
  CHECK(exit_status("--config " + kFixtures + "/example2.json --refined --verify --depth 6") == 0);
  CHECK(exit_status("--config " + kFixtures + "/example1_n2.json --verify --depth 0") == 2);
}

TEST_CASE("reports are deterministic apart from timings") {
  const RunConfig c = parse_config(load("example3.json"));
  const std::string a = run(c, false).report.dump();
  const std::string b = run(c, false).report.dump();
  CHECK(a == b);
  CHECK(a.find("runtimes_ms") == std::string::npos);

  const std::string out1 = "cli_det_1.json", out2 = "cli_det_2.json";
  CHECK(exit_status("--config " + kFixtures + "/example2.json --verify --no-timings", out1) == 0);
  CHECK(exit_status("--config " + kFixtures + "/example2.json --verify --no-timings", out2) == 0);
  CHECK(read_file(out1) == read_file(out2));
  CHECK_FALSE(read_file(out1).empty());
  std::remove(out1.c_str());
  std::remove(out2.c_str());
}

TEST_CASE("a saved report reruns to the same result") {
  for (const char* name : {"example1_n2.json", "example2.json", "example3.json"}) {
    RunConfig c = parse_config(load(name));
    c.options.refined = true;
    c.options.verify = true;
    c.options.verify_depth = 5;
    const json first = run(c, false).report;
    const json second = run(parse_config(first), false).report;
    CHECK(first == second);
    CHECK(first["config"] == config_to_json(c));
  }
}

TEST_CASE("file outputs") {
  const std::string dot = "cli_out.dot", out = "cli_out.json", dump = "cli_out.txt";
  CHECK(exit_status("--config " + kFixtures + "/example1_n2.json --dot " + dot + " --json " + out + " --dump " + dump) ==
        0);
  const std::string dot_text = read_file(dot);
  CHECK(dot_text.rfind("digraph G {", 0) == 0);
  const json report = json::parse(read_file(out));
  CHECK(report["verdicts"]["osc"] == "fails");
  CHECK(report["witnesses"][0]["length"] == 2);
  const std::string dump_text = read_file(dump);
  CHECK(dump_text.find("q=0 y=(2) c≈6") != std::string::npos);
  std::remove(dot.c_str());
  std::remove(out.c_str());
  std::remove(dump.c_str());
}

TEST_CASE("verification section") {
  RunConfig c = parse_config(load("example1_n2.json"));
  c.options.verify = true;
  c.options.verify_depth = 6;
  const RunResult r = run(c, false);
  CHECK(r.exit_code == 0);
  CHECK(r.report["verification"]["collision"].is_object());
  CHECK(r.report["verification"]["cylinders"]["status"] == "overlapping");

  RunConfig cantor = parse_config(load("cantor.json"));
  cantor.options.verify = true;
  const RunResult rc = run(cantor, false);
  CHECK(rc.report["verification"]["cylinders"]["status"] == "separated");
  CHECK(rc.report["verdicts"]["ssc"] == "holds");
}
