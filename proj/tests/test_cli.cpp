#include <catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string("'") + TATAMI_CLI + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string puzzle(const char* name) {
  return "'" + (fs::path(TATAMI_PUZZLE_DIR) / (std::string(name) + ".tatami")).string() + "'";
}

}  // namespace

TEST_CASE("count", "[cli]") {
  const Run r = run("count --n 8 --m 8");
  CHECK(r.code == 0);
  CHECK(r.out == "1024\n");
  const Run j = run("--format json count --n 4 --m 2 --oracle");
  CHECK(j.code == 0);
  const json doc = json::parse(j.out);
  CHECK(doc.at("count") == doc.at("enumerated"));
}

TEST_CASE("solve", "[cli]") {
  const Run bad = run("solve " + puzzle("abandoned-job"));
  CHECK(bad.code == 1);
  CHECK(bad.out.rfind("unsatisfiable", 0) == 0);
  const Run good = run("--format json solve " + puzzle("tomoku-6x8"));
  CHECK(good.code == 0);
  CHECK_FALSE(json::parse(good.out).at("solutions").empty());
}

TEST_CASE("noku", "[cli]") {
  const Run w = run("noku --rows 2 --cols 6");
  CHECK(w.code == 0);
  CHECK(w.out.find("winner: player 2") != std::string::npos);
  CHECK(run("noku --rows 1 --cols 1 --calibrate 2").code == 0);
  const Run miss = run("noku --rows 2 --cols 3 --kinds HV --calibrate 1");
  CHECK(miss.code == 1);
  CHECK(miss.out.find("NoMatch") != std::string::npos);
  const Run c = run("--format json noku --rows 2 --cols 3 --census");
  CHECK(json::parse(c.out).at("nodes").get<std::uint64_t>() > 0);
}

TEST_CASE("render and generate", "[cli]") {
  const Run a = run("render " + puzzle("tomoku-6x8") + " --as ascii");
  CHECK(a.code == 0);
  CHECK(a.out.rfind("+", 0) == 0);
  const Run s = run("render " + puzzle("tomoku-6x8") + " --as svg");
  CHECK(s.out.rfind("<svg", 0) == 0);
  const Run g1 = run("generate-tomoku --rows 4 --cols 5 --seed 9");
  const Run g2 = run("generate-tomoku --rows 4 --cols 5 --seed 9");
  CHECK(g1.code == 0);
  CHECK(g1.out == g2.out);
  CHECK(g1.out.rfind("tatami-puzzle 1", 0) == 0);
}

TEST_CASE("usage errors", "[cli]") {
  CHECK(run("").code == 2);
  CHECK(run("count --n x").code == 2);
  CHECK(run("solve /nonexistent.tatami").code == 2);
  CHECK(run("noku --rows 2 --cols 2 --kinds Q").code == 2);
}
