#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "fusion/report.hpp"

using namespace fusion;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(FUSIONK_PATH) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  Run r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("fusion command") {
  auto r = run("fusion 'Z/2 * SUq2' 's u1' 'u1 s'");
  CHECK(r.code == 0);
  CHECK(r.out == "s u2 s + 1\n");
  auto o = run("fusion 'O+(3)' v1 v1");
  CHECK(o.out == "v2 + v0\n");
}

TEST_CASE("parse errors carry a position") {
  auto r = run("verify 'O+(3) * * Z/2'");
  CHECK(r.code == 1);
  CHECK(contains(r.out, "column 9"));
  CHECK(contains(r.out, "^"));
  CHECK(run("fusion 'Z/2' s q").code == 1);
  CHECK(run("nonsense").code == 1);
}

TEST_CASE("ktheory command") {
  auto r = run("ktheory 'wreath(O+(3))' --radii 2,3,4");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "K0 = Z + Z/2"));
  CHECK(contains(r.out, "K1 = Z^2"));
  CHECK(run("ktheory 'wreath(O+(3))' --radii 2,3").code == 1);
  CHECK(run("ktheory 'wreath(Z/2)'").code == 1);
}

TEST_CASE("ktheory JSON round-trips") {
  auto path = std::filesystem::temp_directory_path() / "fusionk_test_ktheory.json";
  auto r = run("ktheory 'wreath(O+(3))' --radii 4,6,8 --json --out " + path.string());
  REQUIRE(r.code == 0);
  std::ifstream in(path);
  Json j = Json::parse(in);
  std::filesystem::remove(path);
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["k0"]["rank"] == 1);
  CHECK(j["k0"]["torsion"] == Json::array({2}));
  CHECK(j["k1"]["rank"] == 2);
  CHECK(j["stable"] == true);
  CHECK(j["methods"] == "both");
  j.erase("exit_code");
  CHECK(to_json(ktheory_from_json(j), j["spec"].get<std::string>()) == j);
}

TEST_CASE("output is deterministic") {
  auto a = run("ktheory 'wreath(F(2))' --radii 2,3,4 --json");
  auto b = run("ktheory 'wreath(F(2))' --radii 2,3,4 --json");
  CHECK(a.out == b.out);
  auto t1 = run("torsion 'Z/4' --json");
  auto t2 = run("torsion 'Z/4' --json");
  CHECK(t1.out == t2.out);
}

TEST_CASE("torsion command") {
  auto z2 = run("torsion 'Z/2' --json");
  REQUIRE(z2.code == 0);
  Json j = Json::parse(z2.out);
  CHECK(j["enumeration"]["modules"].size() == 2);
  auto w = run("torsion 'wreath(Z/2)'");
  CHECK(w.code == 0);
  CHECK(contains(w.out, "u2"));
  auto t = run("torsion 'tilde(wreath(Z/2))' --bound 3 --json");
  CHECK(t.code == 0);
  Json jt = Json::parse(t.out);
  CHECK(jt["non_trivial_classes"] == 2);
}

TEST_CASE("verify and exactness commands") {
  CHECK(run("verify 'wreath(Z/2)' --bound 4").code == 0);
  CHECK(run("verify 'Z/2 * SUq2' --bound 4").code == 0);
  auto e = run("exactness 'F(1)' --bound 3");
  CHECK(e.code == 0);
  auto z = run("exactness 'Z^2' --bound 3");
  CHECK(z.code == 2);
  CHECK(contains(z.out, "kernel element"));
  auto je = run("exactness 'F(1)' --bound 3 --json");
  Json j = Json::parse(je.out);
  j.erase("exit_code");
  CHECK(to_json(exactness_from_json(j), "F(1)") == j);
}
