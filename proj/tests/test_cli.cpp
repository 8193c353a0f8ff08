#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "normfuzz/cli.hpp"

using normfuzz::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

std::string data(const std::string& name) { return std::string(NORMFUZZ_DATA_DIR) + "/" + name; }

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = "/tmp/normfuzz_test_" + name;
  std::ofstream(path) << text;
  return path;
}

/// Runs the installed binary and returns its exit status and stdout.
std::pair<int, std::string> spawn(const std::string& args) {
  const std::string cmd = std::string(NORMFUZZ_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("check prints the normalized rules") {
  const Result r = call({"check", data("curtain.sleec")});
  CHECK(r.code == 0);
  CHECK(r.out.find("  if dressed then open_curtains\n"
                   "  else if not highly_distressed then do_not_open\n"
                   "  else open_curtains\n") != std::string::npos);
  CHECK(r.out.find("1 rule, 0 errors, 0 warnings") != std::string::npos);
}

TEST_CASE("check reports undeclared atoms and parse errors") {
  const auto sleepy =
      write_temp("sleepy.sleec", "rule s { when ask_open then open_curtains unless sleepy in which case do_not_open }\n");
  const Result r = call({"check", sleepy});
  CHECK(r.code == 1);
  CHECK(r.err.find("undeclared condition 'sleepy'") != std::string::npos);

  const auto broken = write_temp("broken.sleec", "rule b { when then x }\n");
  const Result p = call({"check", broken});
  CHECK(p.code == 1);
  CHECK(p.err.find(":1:15:") != std::string::npos);

  const auto empty = write_temp("empty.sleec", "");
  const Result e = call({"check", empty});
  CHECK(e.code == 0);
  CHECK(e.out.find("0 rules") != std::string::npos);

  CHECK(call({"check", "/nonexistent.sleec"}).code == 1);
  CHECK(call({}).code == 1);
  CHECK(call({"frobnicate"}).code == 1);
}

TEST_CASE("eval decides each scenario") {
  const Result r = call({"eval", data("curtain.sleec"), "--scenario", data("scenarios/undressed_distressed.json")});
  CHECK(r.code == 0);
  CHECK(r.out == "scenario 0: open_curtains (rule curtains, default branch)\n");

  const Result d = call({"eval", data("curtain.sleec"), "--scenario", data("scenarios/dressed.json")});
  CHECK(d.code == 0);
  CHECK(d.out == "scenario 0: open_curtains (rule curtains, branch 0)\n");

  const Result w = call({"eval", data("curtain.sleec"), "--scenario", data("scenarios/ward_round.json")});
  CHECK(w.code == 0);
  CHECK(w.out.find("scenario 1: do_not_open (rule curtains, branch 1)") != std::string::npos);
}

TEST_CASE("eval exit codes") {
  const Result u = call({"eval", data("curtain.sleec"), "--scenario", data("scenarios/unknown_garment.json")});
  CHECK(u.code == 2);
  CHECK(u.err.find("UnknownItem") != std::string::npos);

  CHECK(call({"eval", data("curtain.sleec")}).code == 1);
  CHECK(call({"eval", data("curtain.sleec"), "--scenario", "/nonexistent.json"}).code == 1);
  CHECK(call({"eval", data("curtain.sleec"), "--scenario", data("scenarios/dressed.json"), "--distress-threshold", "1.2"})
            .code == 1);
  CHECK(call({"eval", data("curtain.sleec"), "--scenario", data("scenarios/dressed.json"), "--dressing-threshold", "0"})
            .code == 1);
  CHECK(call({"eval", data("curtain.sleec"), "--scenario", data("scenarios/dressed.json"), "--format", "xml"}).code == 1);
}

TEST_CASE("threshold overrides change the decision") {
  // d* is about 0.8 for the distressed reading
  const Result r = call({"eval", data("curtain.sleec"), "--scenario", data("scenarios/undressed_distressed.json"),
                         "--distress-threshold", "0.9"});
  CHECK(r.code == 0);
  CHECK(r.out.find("do_not_open") != std::string::npos);

  // a sock and a hat pass a low dressing threshold
  const Result d = call({"eval", data("curtain.sleec"), "--scenario", data("scenarios/undressed_distressed.json"),
                         "--dressing-threshold", "0.1"});
  CHECK(d.out.find("branch 0") != std::string::npos);
}

TEST_CASE("jsonl output is deterministic and self-consistent") {
  const std::vector<std::string> args{"eval", data("curtain.sleec"), "--scenario", data("scenarios/ward_round.json"),
                                      "--trace", "--format", "jsonl"};
  const Result a = call(args);
  const Result b = call(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  std::istringstream lines(a.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j["index"] == count);
    CHECK(j["event"] == "ask_open");
    if (j["distress"].is_object()) {
      const double num = j["distress"]["numerator"], den = j["distress"]["denominator"];
      char expected[32], printed[32];
      std::snprintf(expected, sizeof expected, "%.6f", num / den);
      std::snprintf(printed, sizeof printed, "%.6f", j["distress"]["d_star"].get<double>());
      CHECK(std::string(expected) == printed);
    }
    ++count;
  }
  CHECK(count == 4);
}

TEST_CASE("profile from the environment") {
  const auto strict = write_temp("strict_profile.json", R"({"distress_threshold": 0.95})");
  setenv("NORMFUZZ_PROFILE", strict.c_str(), 1);
  const Result r = call({"eval", data("curtain.sleec"), "--scenario", data("scenarios/undressed_distressed.json")});
  // an explicit --profile wins over the environment
  const Result o = call({"eval", data("curtain.sleec"), "--scenario", data("scenarios/undressed_distressed.json"),
                         "--profile", data("default_profile.json")});
  unsetenv("NORMFUZZ_PROFILE");
  CHECK(r.out.find("do_not_open") != std::string::npos);
  CHECK(o.out.find("open_curtains") != std::string::npos);

  const auto bad = write_temp("bad_profile.json", R"({"distress_threshold": 3})");
  CHECK(call({"check", data("curtain.sleec"), "--profile", bad}).code == 1);
}

TEST_CASE("table prints membership rows") {
  const Result age = call({"table", "age"});
  CHECK(age.code == 0);
  CHECK(age.out.find("25: Young=1.000 Middle=0.000 Old=0.000\n") != std::string::npos);
  CHECK(age.out.find("55: Young=0.027 Middle=0.200 Old=0.500\n") != std::string::npos);

  const Result hr = call({"table", "hr", "--from", "75", "--to", "100", "--step", "25"});
  CHECK(hr.out.find("75: Low=0.500 Medium=0.500 High=0.000\n") != std::string::npos);
  CHECK(hr.out.find("100: Low=0.000 Medium=1.000 High=0.000\n") != std::string::npos);

  const Result g = call({"table", "garments"});
  CHECK(g.out.find("Dresses: 1.000000") != std::string::npos);

  CHECK(call({"table", "spo2"}).code == 1);
  CHECK(call({"table", "hr", "--step", "0"}).code == 1);
  CHECK(call({"table", "hr", "--from", "10", "--to", "5"}).code == 1);
}

TEST_CASE("the installed binary behaves like the library entry point") {
  const auto [code, out] = spawn("eval " + data("curtain.sleec") + " --scenario " + data("scenarios/dressed.json"));
  CHECK(code == 0);
  CHECK(out == "scenario 0: open_curtains (rule curtains, branch 0)\n");
  CHECK(spawn("eval " + data("curtain.sleec") + " --scenario " + data("scenarios/unknown_garment.json")).first == 2);
  CHECK(spawn("check /nonexistent.sleec").first == 1);
}
