// Drives the lvcert binary end to end.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

const std::string kBin = LVCERT_BIN;
const std::string kData = LVCERT_DATA_DIR;
const fs::path kScratch = fs::path(LVCERT_SCRATCH_DIR) / "cli";

std::string data(const std::string& name) { return kData + "/" + name; }

std::string scratch(const std::string& name) {
  fs::create_directories(kScratch);
  return (kScratch / name).string();
}

int run(const std::string& args) {
  const std::string cmd = kBin + " " + args + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Json run_json(const std::string& args, int expected_rc = 0) {
  const std::string out = scratch("report.json");
  fs::remove(out);
  CHECK(run(args + " --out " + out) == expected_rc);
  return Json::parse(slurp(out));
}

std::string write_system(const std::string& name, const std::string& body) {
  const std::string path = scratch(name);
  std::ofstream(path) << body;
  return path;
}

std::vector<std::vector<double>> read_csv(const std::string& path) {
  std::ifstream f(path);
  std::string line;
  std::getline(f, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(f, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

TEST_CASE("analyze reports the expected criterion for each data file") {
  struct Case {
    const char* file;
    const char* criterion;
    const char* outcome;
  };
  for (auto c : {Case{"three_species_interior.json", "Th2.1", "InteriorAttractor"},
                 Case{"four_species_boundary.json", "Th2.5", "BoundaryAttractor"},
                 Case{"five_species_cascade.json", "Th2.10", "BoundaryAttractor"}}) {
    CAPTURE(c.file);
    for (const char* mode : {"rational", "float"}) {
      CAPTURE(mode);
      Json r = run_json("analyze " + data(c.file) + " --mode " + mode);
      CHECK(r["verdict"]["criterion"] == c.criterion);
      CHECK(r["verdict"]["outcome"] == c.outcome);
      CHECK(r["meta"]["command"] == "analyze");
      CHECK(r["meta"]["flags"]["mode"] == mode);
    }
  }
  Json r = run_json("analyze " + data("three_species_interior.json"));
  CHECK(r["verdict"]["attractor"] == Json::array({"1/23", "11/46", "11/46"}));
}

TEST_CASE("invalid input gives a nonzero exit") {
  auto bad = write_system("negative_diag.json", R"({"b": [1, 1], "A": [[-1, 0], [0, 1]]})");
  CHECK(run("analyze " + bad) == 1);
  CHECK(run("analyze " + scratch("does_not_exist.json")) == 1);
  auto malformed = write_system("malformed.json", R"({"b": [1, 1], "A": [[1, 0]]})");
  CHECK(run("analyze " + malformed) == 1);
  CHECK(run("") == 2);
  CHECK(run("analyze " + data("three_species_interior.json") + " --mode quad") == 2);
  CHECK(run("simulate " + data("three_species_interior.json") + " --x0 0.3,0.1") == 1);
}

TEST_CASE("simulate from a given start converges to the interior point") {
  const std::string out = scratch("single.csv");
  REQUIRE(run("simulate " + data("three_species_interior.json") + " --x0 0.3,0.1,0.4 --out " + out) == 0);
  CHECK(slurp(out).rfind("t,x1,x2,x3\n", 0) == 0);
  auto rows = read_csv(out);
  REQUIRE(rows.size() > 2);
  const auto& last = rows.back();
  CHECK(last[0] == doctest::Approx(1000.0));
  const double target[] = {1.0 / 23, 11.0 / 46, 11.0 / 46};
  for (int i = 0; i < 3; ++i) CHECK(std::abs(last[i + 1] - target[i]) < 1e-6);
}

TEST_CASE("seeded sampling is reproducible") {
  const std::string a = scratch("runA.csv");
  const std::string b = scratch("runB.csv");
  const std::string args = "simulate " + data("three_species_interior.json") + " --samples 5 --seed 7 --t-end 50 ";
  REQUIRE(run(args + "--out " + a) == 0);
  REQUIRE(run(args + "--out " + b) == 0);
  for (int k = 1; k <= 5; ++k) {
    auto fa = scratch("runA_" + std::to_string(k) + ".csv");
    auto fb = scratch("runB_" + std::to_string(k) + ".csv");
    REQUIRE(fs::exists(fa));
    CHECK(slurp(fa) == slurp(fb));
  }
  CHECK(run("simulate " + data("three_species_interior.json") + " --samples 2") == 2);
}

TEST_CASE("an absent species stays absent") {
  const std::string out = scratch("zero.csv");
  REQUIRE(run("simulate " + data("three_species_interior.json") + " --x0 0.3,0,0.4 --t-end 100 --out " + out) == 0);
  for (const auto& row : read_csv(out)) CHECK(row[2] == 0.0);
}

TEST_CASE("verify accepts a sound verdict and flags a corrupted one") {
  Json ok = run_json("verify " + data("five_species_cascade.json") + " --samples 5");
  CHECK(ok["sim"]["status"] == "consistent with verdict");
  CHECK(ok["replay"].empty());
  Json bad = run_json("verify " + data("five_species_cascade.json") + " --samples 5 --inject-fault", 3);
  CHECK(bad["sim"]["status"] == "contradicts verdict");
}

TEST_CASE("verify on an inconclusive system is evidence only") {
  auto bistable = write_system("bistable.json", R"({"b": [1, 1], "A": [[1, 2], [2, 1]]})");
  Json r = run_json("verify " + bistable + " --samples 4 --t-end 200");
  CHECK(r["verdict"]["outcome"] == "Inconclusive");
  CHECK(r["sim"]["status"] == "evidence only");
}

TEST_CASE("equilibria lists every support with nullcline positions") {
  Json three = run_json("equilibria " + data("three_species_interior.json"));
  CHECK(three["equilibria"].size() == 8);

  Json four = run_json("equilibria " + data("four_species_boundary.json"));
  bool found = false;
  for (const auto& e : four["equilibria"]) {
    if (e["support"] != Json::array({1, 2})) continue;
    found = true;
    CHECK(e["point"] == Json::array({"1/4", "1/4", "0", "0"}));
    CHECK(e["position"][2] == "on");
    CHECK(e["position"][3] == "on");
  }
  CHECK(found);
}
