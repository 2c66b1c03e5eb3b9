#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, bool merge_stderr = false) {
  const std::string cmd = std::string(ELGAS_CLI_PATH) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(ELGAS_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("lattice-info", "[cli]") {
  auto r = run("lattice-info --kf 2");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["N"] == 33);
  CHECK(j["kappa"] == 4.5);
}

TEST_CASE("lune rows", "[cli]") {
  auto r = run("lune --kf 1 --k 1,0,0 --format csv");
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "px,py,pz,lambda");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 5);

  auto j = nlohmann::json::parse(run("lune --kf 1 --k 1,0,0").out);
  CHECK(j["size"] == 5);
  CHECK(j["points"].back()["lambda"] == 1.5);
}

TEST_CASE("momentum with both routes", "[cli]") {
  auto r = run("momentum --kf 1 --xi 1,1,0 --potential coulomb:g=1 --route both");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  for (const char* key : {"n_b", "n_b_spectral", "n_b_integral", "discrepancy", "n_ex", "n_total", "converged"})
    CHECK(j.contains(key));
  CHECK(j["route"] == "both");
  CHECK(j["n_ex"].get<double>() < 0.0);
}

TEST_CASE("thread count leaves output unchanged", "[cli]") {
  const std::string args = "momentum --kf 2 --xi 1,0,0 --tail-tol 1e-3 --route spectral";
  auto a = run(args + " --threads 1");
  auto b = run(args + " --threads 3");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);

  const std::string dv = "dv-compare --kf 1 --samples 20000 --format csv --tail-tol 1e-3";
  auto c = run(dv + " --threads 1");
  auto d = run(dv + " --threads 2");
  REQUIRE(c.code == 0);
  CHECK(c.out == d.out);
  CHECK(c.out.rfind("xi,n_b_disc,n_ex_disc,n_b_dv,n_ex_dv,ratio_b,ratio_ex\n", 0) == 0);
}

TEST_CASE("momentum-sum observables", "[cli]") {
  auto r = run("momentum-sum --kf 1 --observable delta:1,1,0");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["rows"].size() == 2);
  auto t = run("momentum-sum --kf 1 --observable table:" + data("observable_example.txt"));
  REQUIRE(t.code == 0);
  CHECK(nlohmann::json::parse(t.out)["value"] == j["value"]);
  CHECK(run("momentum-sum --kf 1 --observable table:" + data("table_asymmetric.txt")).code == 2);
}

TEST_CASE("table potential", "[cli]") {
  auto r = run("momentum --kf 1 --xi 2,0,0 --potential table:" + data("table_example.txt"));
  CHECK(r.code == 0);
  auto bad = run("momentum --kf 1 --xi 2,0,0 --potential table:" + data("table_asymmetric.txt"), true);
  CHECK(bad.code == 2);
  CHECK(bad.out.find("asymmetric at -1,0,0") != std::string::npos);
}

TEST_CASE("verify", "[cli]") {
  auto r = run("verify --kf 1 --potential coulomb:g=1");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.is_array());
  for (const auto& c : j) CHECK(c["status"] != "fail");
}

TEST_CASE("energy", "[cli]") {
  auto r = run("energy --kf 1 --tail-tol 1e-3");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["e_fs_kinetic"] == 6.0);
  CHECK(j["e_corr_bos"].get<double>() < 0.0);
}

TEST_CASE("bad input exits with 2", "[cli]") {
  CHECK(run("momentum --kf 1 --xi 1,1 ").code == 2);
  CHECK(run("momentum --kf 1 --xi 1,1,0 --potential coulomb:g=-1").code == 2);
  CHECK(run("momentum --kf 1 --xi 1,1,0 --potential gauss:g=1").code == 2);
  CHECK(run("momentum --kf -1 --xi 1,1,0").code == 2);
  CHECK(run("lune --kf 1 --k 0,0,0").code == 2);
  CHECK(run("dv-compare --kf 1 --xi 1,0,0").code == 2);
  CHECK(run("momentum --kf 1 --xi 1,1,0 --route fastest").code == 2);
  CHECK(run("frobnicate --kf 1").code == 2);
}
