#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& args) {
  std::string cmd = std::string(DRINFELD2_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run("enumerate-points --p 2 --s 2") == 0);
  CHECK(run("--help") == 0);
  CHECK(run("enumerate-points --p 7 --s 2") == 2);   // unsupported prime
  CHECK(run("enumerate-points --p 2 --m 9") == 2);   // m out of range
  CHECK(run("no-such-command") == 2);
}

TEST_CASE("reports are byte-stable for a fixed seed") {
  std::string f1 = "/tmp/d2_report_a.json", f2 = "/tmp/d2_report_b.json";
  CHECK(run("tree --p 2 --s 1 --seed 42 --rebasings 10 --json-out " + f1) == 0);
  CHECK(run("tree --p 2 --s 1 --seed 42 --rebasings 10 --json-out " + f2) == 0);
  std::string a = slurp(f1), b = slurp(f2);
  CHECK(!a.empty());
  CHECK(a == b);
  std::remove(f1.c_str());
  std::remove(f2.c_str());
}

TEST_CASE("schema and counts") {
  std::string f = "/tmp/d2_report_c.json";
  REQUIRE(run("enumerate-points --p 2 --s 2 --json-out " + f) == 0);
  json r = json::parse(slurp(f));
  CHECK(r.at("schema") == 1);
  CHECK(r.at("command") == "enumerate-points");
  CHECK(r.at("pass") == true);
  bool found = false;
  for (const auto& c : r.at("checks"))
    if (c.contains("count")) {
      CHECK(c.at("count") == 5);
      found = true;
    }
  CHECK(found);
  std::remove(f.c_str());

  REQUIRE(run("roundtrip --p 3 --s 2 --json-out " + f) == 0);
  json r2 = json::parse(slurp(f));
  CHECK(r2.at("pass") == true);
  for (const auto& c : r2.at("checks"))
    if (c.contains("points")) CHECK(c.at("points") == 13);
  std::remove(f.c_str());
}

TEST_CASE("config file mirrors the flags") {
  std::string cfgfile = "/tmp/d2_cfg.ini";
  {
    std::ofstream out(cfgfile);
    out << "p=3\n";
    out << "s=1\n";
    out << "seed=7\n";
  }
  std::string f = "/tmp/d2_report_d.json";
  REQUIRE(run("enumerate-points --config " + cfgfile + " --json-out " + f) == 0);
  json r = json::parse(slurp(f));
  CHECK(r.at("config").at("p") == 3);
  CHECK(r.at("config").at("s") == 1);
  CHECK(r.at("config").at("seed") == 7);
  std::remove(cfgfile.c_str());
  std::remove(f.c_str());
}

TEST_CASE("environment variable overrides the output path") {
  std::string f = "/tmp/d2_report_env.json";
  std::string cmd = std::string("DRINFELD2_JSON_OUT=") + f + " " + DRINFELD2_CLI_PATH +
                    " enumerate-points --p 2 --s 1 > /dev/null 2>&1";
  REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  json r = json::parse(slurp(f));
  CHECK(r.at("schema") == 1);
  std::remove(f.c_str());
}
