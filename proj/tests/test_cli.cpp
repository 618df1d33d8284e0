// Copyright 2026 The hitlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "hitlab/report.hpp"

using namespace hitlab;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string err;
  fs::path dir;
};

Result run(const std::string& name, const std::string& args) {
  const fs::path dir = fs::path(HITLAB_SCRATCH) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string cmd = std::string(HITLAB_CLI_PATH) + " " + args + " --output " + dir.string() + " >" +
                          (dir / "stdout.txt").string() + " 2>" + (dir / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, read_text(dir / "stderr.txt"), dir};
}

std::string fixture(const char* name) { return std::string(HITLAB_FIXTURES) + "/" + name; }

Json load(const fs::path& p) { return Json::parse(read_text(p)); }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("analyze the two-atom fixture") {
    const Result r = run("analyze_two", "analyze --input " + fixture("two_atom.json"));
    REQUIRE(r.code == 0);
    const Json rep = load(r.dir / "report.json");
    const auto rates = rep["rates"]["krein"]["rates"];
    CHECK(rates[0].get<double>() == doctest::Approx(0.763932).epsilon(1e-6));
    CHECK(rates[1].get<double>() == doctest::Approx(5.236068).epsilon(1e-6));
    CHECK(rep["factorization"]["mu1_rates"][0].get<double>() == doctest::Approx(4));
    CHECK(rep["factorization"]["mu2_mixture"][0]["weight"].get<double>() == doctest::Approx(0.947214).epsilon(1e-6));
    CHECK(rep["factorization"]["mu2_mixture"][1]["weight"].get<double>() == doctest::Approx(0.052786).epsilon(1e-5));
    CHECK(rep["interlacing"]["certified"].get<bool>());
    CHECK(rep["moments"]["mean"].get<double>() == doctest::Approx(1.5));
    const std::string csv = read_text(r.dir / "density.csv");
    CHECK(csv.rfind("t,f,d1,d2,d3,d4,d5,d6\n", 0) == 0);
    const Json m = load(r.dir / "manifest.json");
    CHECK(m["command"] == "analyze");
    CHECK(m["precision"] == "rational");
    CHECK(m["outputs"].contains("report.json"));
  }

  TEST_CASE("analyze the single-atom fixture") {
    const Result r = run("analyze_one", "analyze --input " + fixture("single_atom.json") + " --format json");
    REQUIRE(r.code == 0);
    const Json rep = load(r.dir / "report.json");
    CHECK(rep["density"]["terms"].size() == 1);
    CHECK(rep["density"]["terms"][0]["rate"].get<double>() == doctest::Approx(1));
    CHECK(rep["density"]["terms"][0]["coefficient"].get<double>() == doctest::Approx(1));
    CHECK(fs::exists(r.dir / "density.json"));
  }

  TEST_CASE("malformed input exits 2 with a machine-readable error") {
    const Result r = run("analyze_dup", "analyze --input " + fixture("duplicate_atom.json"));
    CHECK(r.code == 2);
    const Json e = Json::parse(r.err);
    CHECK(e["error"]["message"] == "duplicate position");
    CHECK(e["error"]["kind"] == "input");
    CHECK(run("analyze_missing", "analyze --input /nonexistent.json").code == 2);
    CHECK(run("bad_flag", "analyze --input " + fixture("two_atom.json") + " --precision quad").code == 2);
  }

  TEST_CASE("classify a string and a GIG triple") {
    const Result r = run("classify_two", "classify --input " + fixture("two_atom.json") + " --max-order 6");
    REQUIRE(r.code == 0);
    CHECK(load(r.dir / "classify.json")["report"]["classification"] == "Whale");
    const Result g = run("classify_gig", "classify --gig 0.5,1,1 --max-order 6 --format json");
    REQUIRE(g.code == 0);
    const Json j = load(g.dir / "classify.json");
    CHECK(j["report"]["classification"] == "Bell(6)");
    CHECK(load(g.dir / "orders.json").size() == 6);
    CHECK(run("classify_badgig", "classify --gig 1,2").code == 2);
  }

  TEST_CASE("converge on the Brownian string") {
    const Result r = run("converge", "converge --input " + fixture("brownian.json") + " --k-list 8,16 --max-order 6 --format json");
    REQUIRE(r.code == 0);
    const Json rows = load(r.dir / "converge.json");
    REQUIRE(rows.size() == 2);
    for (const auto& row : rows) {
      CHECK(row["expected_tau"].get<double>() == 1.0);
      for (int i = 1; i <= 6; ++i) CHECK(row["zc" + std::to_string(i)].get<int>() == i);
    }
    CHECK(rows[1]["rate1"].get<double>() > rows[0]["rate1"].get<double>());
    CHECK(run("converge_atoms", "converge --input " + fixture("two_atom.json")).code == 2);
  }

  TEST_CASE("simulate writes samples, summary and manifest") {
    const Result r = run("simulate", "simulate --input " + fixture("two_atom.json") + " --samples 100000 --seed 42");
    REQUIRE(r.code == 0);
    const Json j = load(r.dir / "simulate.json");
    CHECK(j["ks_pass"].get<bool>());
    CHECK(j["mean_within_3sigma"].get<bool>());
    const std::string samples = read_text(r.dir / "samples.csv");
    CHECK(std::count(samples.begin(), samples.end(), '\n') == 100001);
    CHECK(load(r.dir / "manifest.json")["seed"] == 42);
  }

  TEST_CASE("sweep records failing rows and exits nonzero") {
    const Result ok = run("sweep_ok", "sweep --count 40 --max-atoms 8 --seed 3");
    CHECK(ok.code == 0);
    const Result bad = run("sweep_bad", "sweep --count 5 --extra " + fixture("duplicate_atom.json"));
    CHECK(bad.code != 0);
    const std::string csv = read_text(bad.dir / "sweep.csv");
    CHECK(csv.find("fail,duplicate position") != std::string::npos);
  }
}
