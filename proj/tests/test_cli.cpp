#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int g_run_counter = 0;

RunResult run(const std::string& args, const std::string& env = "") {
  const std::string tag = "/tmp/curvorbit_cli_" + std::to_string(g_run_counter++);
  const std::string out_path = tag + ".out";
  const std::string err_path = tag + ".err";
  const std::string cmd = env + (env.empty() ? "" : " ") + CURVORBIT_BIN + " " +
                          args + " > " + out_path + " 2> " + err_path;
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(status);
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("catalog list prints the builtin names") {
  const auto r = run("catalog list");
  CHECK(r.exit_code == 0);
  int lines = 0;
  for (char c : r.out)
    if (c == '\n') ++lines;
  CHECK(lines >= 8);
  CHECK(contains(r.out, "pp_wave"));
  CHECK(contains(r.out, "schwarzschild_point"));
}

TEST_CASE("catalog emit produces a readable tensor file") {
  const auto r = run("catalog emit 'constant_curvature(1,3,1)' --out /tmp/cc13.json");
  REQUIRE(r.exit_code == 0);
  const auto cls = run("classify /tmp/cc13.json");
  CHECK(cls.exit_code == 0);
  CHECK(contains(cls.out, "verdict rpe: yes"));
  CHECK(contains(cls.out, "verdict wick: necessary-condition-passed"));
  CHECK(contains(cls.out, "note: purely electric Lorentzian"));
}

TEST_CASE("catalog emit rejects unknown names") {
  const auto r = run("catalog emit no_such_entry");
  CHECK(r.exit_code == 2);
  CHECK(contains(r.err, "unknown catalog name"));
}

TEST_CASE("classify flags the pp-wave as obstructed") {
  REQUIRE(run("catalog emit 'pp_wave(1,0.5)' --out /tmp/pp.json").exit_code == 0);
  const auto r = run("classify /tmp/pp.json");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "verdict rpe: no"));
  CHECK(contains(r.out, "verdict wick: obstructed"));
}

TEST_CASE("classify reports malformed files with diagnostics") {
  {
    std::ofstream f("/tmp/broken.json");
    f << R"({
      "header": {"signature": [1, 1], "format_version": 1},
      "options": {"symmetry_completion": false},
      "entries": [
        {"indices": [0, 1, 0, 1], "value": 1.0},
        {"indices": [0, 1, 1, 0], "value": 1.0}
      ]
    })";
  }
  const auto r = run("classify /tmp/broken.json");
  CHECK(r.exit_code == 2);
  CHECK(contains(r.err, "(0,1,1,0)"));

  const auto missing = run("classify /tmp/definitely_not_here.json");
  CHECK(missing.exit_code == 2);
}

TEST_CASE("flow subcommand reports collapse with a step log") {
  REQUIRE(run("catalog emit 'pp_wave(1,0.5)' --out /tmp/pp.json").exit_code == 0);
  const auto r = run("flow /tmp/pp.json --log-every 1");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "status=norm-collapse"));
  CHECK(contains(r.out, "log 0: iter=0"));
}

TEST_CASE("flow on a scalar operator is minimal at iteration zero") {
  REQUIRE(run("catalog emit 'de_sitter(4)' --out /tmp/ds.json").exit_code == 0);
  const auto r = run("flow /tmp/ds.json");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "status=minimal-found"));
  CHECK(contains(r.out, "iters=0"));
}

TEST_CASE("wick-pair compares catalog exports") {
  REQUIRE(run("catalog emit 'sphere_slice(3)' --out /tmp/s3.json").exit_code == 0);
  REQUIRE(run("catalog emit 'hyperbolic_slice(3)' --out /tmp/h3.json").exit_code == 0);
  REQUIRE(run("catalog emit 'flat(0,3)' --out /tmp/flat03.json").exit_code == 0);

  const auto ok = run("wick-pair /tmp/s3.json /tmp/h3.json");
  CHECK(ok.exit_code == 0);
  CHECK(contains(ok.out, "pair verdict: consistent"));

  const auto bad = run("wick-pair /tmp/s3.json /tmp/flat03.json");
  CHECK(bad.exit_code == 0);
  CHECK(contains(bad.out, "pair verdict: inconsistent"));
  CHECK(contains(bad.out, "tr M^1"));
}

TEST_CASE("weyl-only classification skips the Riemann aspects") {
  REQUIRE(run("catalog emit 'schwarzschild_point(1,3)' --out /tmp/sch.json")
              .exit_code == 0);
  const auto r = run("classify /tmp/sch.json --weyl-only");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "verdict pe: yes"));
  CHECK_FALSE(contains(r.out, "verdict rpe"));
  CHECK_FALSE(contains(r.out, "verdict wick"));
}

TEST_CASE("fixed seeds give byte-identical reports across runs and threads") {
  REQUIRE(run("catalog emit 'pp_wave(1,0.5)' --out /tmp/pp.json").exit_code == 0);
  const std::string args = "classify /tmp/pp.json --seed-value 7 --format json";
  const auto a = run(args, "CURVORBIT_THREADS=1");
  const auto b = run(args, "CURVORBIT_THREADS=1");
  const auto c = run(args, "CURVORBIT_THREADS=8");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  CHECK(!a.out.empty());
}

TEST_CASE("json reports parse and carry the verdict") {
  REQUIRE(run("catalog emit 'anti_de_sitter(4)' --out /tmp/ads.json").exit_code == 0);
  const auto r = run("classify /tmp/ads.json --format json --out /tmp/ads_report.json");
  CHECK(r.exit_code == 0);
  const auto body = slurp("/tmp/ads_report.json");
  CHECK(contains(body, "\"rpe\""));
  CHECK(contains(body, "\"verdict\": \"yes\""));
  CHECK(contains(body, "\"wick\": \"necessary-condition-passed\""));
}
