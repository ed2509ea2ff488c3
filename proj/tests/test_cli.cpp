#include <catch_amalgamated.hpp>

#include <sstream>

#include "cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "sclqm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = sclqm::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const std::string kSl2z = SCLQM_FIXTURES "/sl2z.spec";
const std::string kDihedral = SCLQM_FIXTURES "/dihedral.spec";

}  // namespace

TEST_CASE("eval and homogenize", "[cli]") {
  const Run e = run({"eval", "-g", "free:26", "-w", "xyxyx", "-p", "xy", "--format", "json"});
  CHECK(e.code == 0);
  const auto j = sclqm::Json::parse(e.out);
  CHECK(j["values"][0]["count"] == 2);

  const Run h = run({"homogenize", "-w", "abAB", "-w", "ab", "-p", "ab", "--format", "json"});
  CHECK(h.code == 0);
  CHECK(sclqm::Json::parse(h.out)["values"].size() == 2);
}

TEST_CASE("exit codes", "[cli]") {
  CHECK(run({}).code == sclqm::cli::exit_usage);
  CHECK(run({"eval", "-w", "ab"}).code == sclqm::cli::exit_usage);
  CHECK(run({"eval", "-w", "a1", "-p", "ab"}).code == sclqm::cli::exit_usage);
  CHECK(run({"eval", "-w", "ab", "-p", "ab", "-g", "free:x"}).code == sclqm::cli::exit_usage);
  const Run s = run({"separate", "-w", "ab", "-x", "ba"});
  CHECK(s.code == sclqm::cli::exit_hypothesis);
  CHECK(s.err.find("commensurable") != std::string::npos);
  CHECK(run({"defect", "-w", "ab", "-p", "ab", "-r", "12"}).code == sclqm::cli::exit_limit);
  CHECK(run({"amalgam-check", "--spec", kDihedral, "-w", "A:1 B:1"}).code == sclqm::cli::exit_check_failed);
  CHECK(run({"amalgam-check", "--spec", kSl2z, "-w", "A:1 B:1"}).code == sclqm::cli::exit_ok);
  CHECK(run({"amalgam-cert", "--spec", kDihedral, "-w", "A:1 B:1"}).code == sclqm::cli::exit_hypothesis);
  CHECK(run({"amalgam-cert", "--spec", SCLQM_FIXTURES "/absent.spec", "-w", "A:1"}).code == sclqm::cli::exit_usage);
  const Run j = run({"gap", "-w", "", "--format", "json"});
  CHECK(j.code == sclqm::cli::exit_usage);
  CHECK(sclqm::Json::parse(j.out)["error"]["category"] == "invalid_input");
}

TEST_CASE("gap and separate", "[cli]") {
  const Run g = run({"gap", "-w", "abAB", "--format", "json"});
  REQUIRE(g.code == 0);
  const auto j = sclqm::Json::parse(g.out);
  CHECK(j.dump().find("abABabAB") != std::string::npos);

  const Run s = run({"separate", "-w", "ab", "-x", "b", "--format", "json"});
  REQUIRE(s.code == 0);
  CHECK(s.out.find("\"num\": 1") != std::string::npos);
}

TEST_CASE("scl reports", "[cli]") {
  const Run r = run({"scl-report", "-w", "abAB", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\"abAB\",free:2,bounded,1,24,1,1,false,brooks") != std::string::npos);

  const Run a = run({"scl-report", "--spec", kSl2z, "-w", "A:1 B:1", "-w", "A:1", "--format", "csv"});
  REQUIRE(a.code == 0);
  CHECK(a.out.find("1,624") != std::string::npos);
  CHECK(a.out.find("\"A:1\",amalgam:" + kSl2z + ",zero,0,1,0,1,true,mirror") != std::string::npos);
}

TEST_CASE("amalgam verbs", "[cli]") {
  const Run c = run({"amalgam-cert", "--spec", kSl2z, "-w", "A:1 B:1", "--format", "json"});
  REQUIRE(c.code == 0);
  const auto j = sclqm::Json::parse(c.out);
  CHECK(j["certificate"]["scl_lower"]["den"] == 624);
  CHECK(j["empirical_defect"].get<int>() <= 78);

  const Run e = run({"amalgam-eval", "--spec", kSl2z, "-p", "A:1 B:1", "-w", "A:1 B:1 A:1 B:1"});
  CHECK(e.code == 0);
}

TEST_CASE("output is deterministic", "[cli]") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"scl-report", "-w", "abAB", "-w", "aabAAB", "--format", "json"},
           {"defect", "-w", "abAB", "-p", "ab", "-r", "3"},
           {"amalgam-cert", "--spec", kSl2z, "-w", "A:1 B:1", "--format", "json"}}) {
    const Run first = run(args);
    const Run second = run(args);
    CHECK(first.code == 0);
    CHECK(first.out == second.out);
  }
}
