// Copyright 2026 The hypersum Authors
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

// Runs the built command-line tool and inspects its output and exit codes.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#ifndef HYPERSUM_CLI
#error "HYPERSUM_CLI must name the hypersum executable"
#endif

namespace {

using nlohmann::json;

struct Run {
  int code = -1;
  std::string out;

  std::vector<json> records() const {
    std::vector<json> recs;
    std::istringstream in(out);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty()) recs.push_back(json::parse(line));
    }
    return recs;
  }
  json first() const { return records().at(0); }
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " '" HYPERSUM_CLI "' " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("hyp2f1") {
  Run r = run("hyp2f1 --a 0.5 --b 1 --c 2 --x 0");
  CHECK(r.code == 0);
  CHECK(r.first()["value"].get<double>() == 1.0);
  CHECK(r.first()["status"] == "ok");

  r = run("hyp2f1 --a 0.5 --b 1 --c 2 --x 1");
  CHECK(r.code == 0);
  CHECK(r.first()["value"].get<double>() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(r.first()["method"] == "GaussPoint");

  r = run("hyp2f1 --a 0.5 --b 1 --c 1 --x 1");
  CHECK(r.code == 2);
  CHECK(r.first()["status"] == "DomainError");
  CHECK(r.first()["a"].get<double>() == 0.5);
}

TEST_CASE("sum") {
  Run r = run("sum --eta 1 --c 2 --x 0");
  CHECK(r.code == 0);
  CHECK(r.first()["value"].get<double>() == doctest::Approx(2.0).epsilon(1e-15));

  r = run("sum --eta 0.5 --c 1 --x 0.5");
  CHECK(r.code == 2);
  CHECK(r.first()["status"] == "NotConvergent");
  CHECK(r.first()["convergent"] == false);
  CHECK(r.first()["reason"] == "DivergentPositiveX");

  const double direct = run("sum --eta 1 --c 2 --x 0.5 --method direct").first()["value"];
  const double closed = run("sum --eta 1 --c 2 --x 0.5 --method closed").first()["value"];
  CHECK(std::fabs(direct - closed) <= 1e-9 * std::fabs(closed));

  r = run("sum --eta 0.5 --c 2 --x -0.8");
  CHECK(r.code == 0);
  CHECK(r.first()["analytic_continuation"] == true);

  r = run("sum --eta 1 --c 2.5 --x 0.5 --method special");
  CHECK(r.code == 2);
}

TEST_CASE("term cap from the environment") {
  CHECK(run("sum --eta 0.51 --c 2 --x 0.25 --method direct", "HYPERSUM_MAX_TERMS=20").code == 3);
  CHECK(run("sum --eta 0.51 --c 2 --x 0.25 --method direct").code == 0);
  CHECK(run("sum --eta 1 --c 2 --x 0", "HYPERSUM_MAX_TERMS=abc").code == 2);
}

TEST_CASE("check") {
  Run r = run("check --eta 0.5 --c 2 --x 0.25");
  CHECK(r.code == 0);
  CHECK(r.first()["convergent"] == true);
  CHECK(r.first()["on_boundary"] == true);
  r = run("check --eta 0.5 --c 1 --x 0.25");
  CHECK(r.code == 0);
  CHECK(r.first()["convergent"] == false);
  CHECK(r.first()["reason"] == "BoundaryNeedsLargeC");
}

TEST_CASE("progeny") {
  Run r = run("progeny pmf --lambda 0.6 --lmax 5");
  CHECK(r.code == 0);
  const auto recs = r.records();
  REQUIRE(recs.size() == 5);
  CHECK(recs[0]["pmf"].get<double>() == 0.625);
  CHECK(recs[4]["l"] == 5);

  r = run("progeny pgf --lambda 0.6 --z 1");
  CHECK(r.code == 0);
  CHECK(r.first()["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-14));

  r = run("progeny general --c 2.5 --x 0.49 --lmax 100");
  CHECK(r.code == 0);
  const auto rows = r.records();
  REQUIRE(rows.size() == 100);
  double prev = 0.0;
  for (const auto& row : rows) {
    const double cum = row["cumulative"];
    CHECK(cum > prev);
    CHECK(cum < 1.0);
    prev = cum;
  }

  CHECK(run("progeny pmf --lambda 1.5").code == 2);
}

TEST_CASE("csv output") {
  Run r = run("--format csv progeny pmf --lambda 0.6 --lmax 3");
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "lambda,Q,l,pmf,cumulative,status");
  std::getline(in, line);
  CHECK(line.rfind("0.59999999999999998,", 0) == 0);
  CHECK(line.find(",1,0.625,0.625,ok") != std::string::npos);

  r = run("--format csv hyp2f1 --a 0.5 --b 1 --c 1 --x 1");
  CHECK(r.code == 2);
  CHECK(r.out.find("DomainError") != std::string::npos);
}

TEST_CASE("file output") {
  const std::string path = "hypersum_cli_test_out.json";
  std::remove(path.c_str());
  const Run r = run("--out " + path + " sum --eta 1 --c 2 --x 0");
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::string line;
  REQUIRE(std::getline(f, line));
  CHECK(json::parse(line)["status"] == "ok");
  std::remove(path.c_str());
}

TEST_CASE("simulate is reproducible and schedule independent") {
  const std::string args = "simulate --alpha 0.5 --lambda 0.6 --n 200000 --seed 42";
  const Run a = run(args);
  const Run b = run(args);
  const Run c = run(args + " --workers 8");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const json ja = a.first();
  const json jc = c.first();
  CHECK(ja["counts"] == jc["counts"]);
  CHECK(ja.contains("chi_square"));
  CHECK(ja["passed"] == true);

  const Run general = run("simulate --alpha 0.3 --lambda 0.5 --n 50000 --seed 3");
  CHECK(general.code == 0);
  CHECK(general.first()["passed"] == true);

  CHECK(run("simulate --n 100").code == 2);
  CHECK(run("simulate --alpha 0.5 --lambda 1").code == 2);
}

TEST_CASE("verify") {
  Run r = run("verify --suite corollary1");
  CHECK(r.code == 0);
  CHECK(r.first()["status"] == "pass");

  r = run("verify --suite theorem2");
  CHECK(r.code == 0);

  CHECK(run("verify --suite nonsense").code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run("").code == 2);
  CHECK(run("sum --eta 1").code == 2);
  CHECK(run("--help").code == 0);
}
