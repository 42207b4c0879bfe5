#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(FW_CLI_PATH) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int status = pclose(p);
  return {WEXITSTATUS(status), out};
}

std::string write_tmp(const std::string& name, const std::string& body) {
  std::string path = "/tmp/fwcli_" + name;
  std::ofstream(path) << body;
  return path;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("int on an antichain poset") {
  std::string f = write_tmp("antichain.poset",
                            "elem a\nelem b\nelem c\nelem d\n");
  auto r = run("int " + f + " a b c d");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "int = 1/4"));
  CHECK(contains(r.out, "dual witness"));
}

TEST_CASE("int on the three-pairs field") {
  std::string f = write_tmp("pairs.field",
                            "ground 0..2\nset a 0\nset b 1\nset c 2\n");
  auto r = run("int " + f + " 0,1 0,2 1,2");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "int = 2/3"));
}

TEST_CASE("machine output block") {
  std::string f = write_tmp("pairs2.field",
                            "ground 0..2\nset a 0\nset b 1\nset c 2\n");
  auto r = run("--machine int " + f + " 0,1 0,2 1,2");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "[int]"));
  CHECK(contains(r.out, "value=2/3"));
}

TEST_CASE("zero member in Q is a semantic error") {
  std::string f = write_tmp("ps.field", "ground 0..1\nset a 0\n");
  auto r = run("int " + f + " -");
  CHECK(r.exit_code == 3);
}

TEST_CASE("parse errors exit 2") {
  std::string f = write_tmp("bad.poset", "wibble\n");
  CHECK(run("int " + f + " a").exit_code == 2);
  CHECK(run("int /nonexistent.poset a").exit_code == 2);
  CHECK(run("bogus-subcommand").exit_code == 2);
}

TEST_CASE("verify suite runs and unknown suite exits 2") {
  auto r = run("verify s8 --seed 1 --count 5");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "PASS"));
  CHECK(run("verify nope").exit_code == 2);
}

TEST_CASE("etree consts") {
  auto r = run("etree consts 1");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "rho(1) = 16"));
  CHECK(contains(r.out, "pi(1) = 2^160"));
  CHECK(contains(r.out, "a(1) = 2^480"));
  CHECK(contains(r.out, "M(1) = 2^960"));
  CHECK(run("etree consts 2").exit_code == 4);
}

TEST_CASE("etree norm prints the decision with equality detection") {
  auto r = run("etree norm 0 12 1/1");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "true (equality)"));
  auto s = run("etree norm 0 13 4/3");
  CHECK(s.exit_code == 0);
  CHECK(contains(s.out, "false"));
}

TEST_CASE("etree check and loss") {
  std::string ok = write_tmp(
      "ok.cond",
      "level 0 M=8 a=2\nlevel 1 M=8 a=2\ntrunk 0\nfrontier 2\n"
      "node 0 keep=explicit:0,1,2,3,4,5\n");
  auto r = run("etree check " + ok);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "condition: true"));

  std::string thin = write_tmp(
      "thin.cond",
      "level 0 M=8 a=2\nlevel 1 M=8 a=2\ntrunk 0\nfrontier 2\n"
      "node 0 keep=explicit:0,1\n");
  auto s = run("etree check " + thin);
  CHECK(s.exit_code == 1);
  CHECK(contains(s.out, "condition: false"));

  std::string deep =
      "level 0 M=8 a=2\n";
  for (int h = 1; h <= 10; ++h) deep += "level " + std::to_string(h) + " M=8 a=2\n";
  deep += "trunk 0/0/0/0/0/0/0/0/0/0\nfrontier 11\n"
          "node 0/0/0/0/0/0/0/0/0/0 keep=explicit:0,1,2,3,4,5,6\n";
  std::string dc = write_tmp("deep.cond", deep);
  auto t = run("etree loss " + dc);
  CHECK(t.exit_code == 0);
  CHECK(contains(t.out, "loss = 1/3"));
  CHECK(contains(t.out, "lebratio"));

  auto u = run("etree loss " + ok);
  CHECK(u.exit_code == 0);
  CHECK(contains(u.out, "loss undefined"));
}
