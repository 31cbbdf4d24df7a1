// Copyright 2026 The srlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "srlab/cli.hpp"
#include "srlab/io.hpp"

using namespace srlab;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::vector<const char*> argv{"srlab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  std::filesystem::path path;
  TempDir() : path(std::filesystem::temp_directory_path() / "srlab_cli_test") {
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("round command") {
  auto r = cli({"round", "1.6", "--mode", "half-even"});
  CHECK(r.code == 0);
  CHECK(r.out == "2\n");
  r = cli({"round", "1.6", "--mode", "half-even", "--count", "5"});
  CHECK(r.out == "2\n");
  r = cli({"round", "-0.5", "--mode", "cr"});
  CHECK(r.out == "0\n");
  r = cli({"round", "0.30146", "--mode", "floor", "--n", "3", "--base", "decimal"});
  CHECK(r.out == "0.30099999999999999\n");

  r = cli({"round", "0.4", "--mode", "sr", "--seed", "7", "--count", "5"});
  CHECK(r.code == 0);
  const auto vals = lines(r.out);
  CHECK(vals.size() == 5);
  for (const auto& v : vals) CHECK((v == "0" || v == "1"));
  CHECK(cli({"round", "0.4", "--mode", "sr", "--seed", "7", "--count", "5"}).out == r.out);

  r = cli({"round", "0.4", "--mode", "bogus"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("half-even") != std::string::npos);
  CHECK(cli({"round", "0.4", "--mode", "table"}).code == kExitUsage);
  CHECK(cli({"round", "abc", "--mode", "sr"}).code == kExitUsage);
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("optimize writes a distribution that round-trips byte for byte") {
  TempDir dir;
  const auto path = dir / "d2.json";
  auto r = cli({"optimize", "--preset", "d2", "--grid", "101", "--out", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("bias min") != std::string::npos);
  CHECK(r.out.find("variance min") != std::string::npos);

  const std::string first = read_text(path);
  const auto file = read_distribution(path);
  CHECK(file.format_version == 1);
  CHECK(file.table.label() == "d2");
  CHECK(file.table.size() == 101);
  CHECK(*file.mop.b_max == 0.05);
  CHECK(file.pso.swarm_size == 50);
  for (std::size_t j = 0; j < file.table.size(); ++j)
    CHECK(std::abs((1.0 - file.table.p()[j]) - file.table.grid()[j]) <= 0.051);

  const auto copy = dir / "copy.json";
  write_distribution(copy, file);
  CHECK(read_text(copy) == first);
  CHECK(read_distribution(copy).table == file.table);

  r = cli({"round", "0.4", "--mode", "table", "--table", path, "--count", "10"});
  CHECK(r.code == 0);
  for (const auto& v : lines(r.out)) CHECK((v == "0" || v == "1"));
}

TEST_CASE("optimize presets and errors") {
  TempDir dir;
  REQUIRE(cli({"optimize", "--preset", "var-min-floor", "--grid", "11", "--out", dir / "v.json"})
              .code == 0);
  const auto v = read_distribution(dir / "v.json");
  for (double p : v.table.p()) CHECK(p == 1.0);

  REQUIRE(cli({"optimize", "--preset", "bias-min", "--grid", "11", "--out", dir / "b.json"})
              .code == 0);
  const auto b = read_distribution(dir / "b.json").table;
  for (std::size_t j = 0; j < b.size(); ++j) CHECK(std::abs(b.p()[j] - (1.0 - b.grid()[j])) <= 1e-3);

  write_text(dir / "cfg.json", R"({"theta1": 0.5, "theta2": 0.5, "b_max": 0.1})");
  REQUIRE(cli({"optimize", "--config", dir / "cfg.json", "--grid", "11", "--label", "mine",
               "--out", dir / "c.json"})
              .code == 0);
  const auto c = read_distribution(dir / "c.json");
  CHECK(c.table.label() == "mine");
  CHECK(c.mop.k2 == 1e10);

  write_text(dir / "bad.json", R"({"theta1": 0.7, "theta2": 0.5})");
  CHECK(cli({"optimize", "--config", dir / "bad.json", "--out", dir / "x.json"}).code ==
        kExitUsage);
  CHECK(cli({"optimize", "--preset", "nope", "--out", dir / "x.json"}).code == kExitUsage);
  CHECK(cli({"optimize", "--out", dir / "x.json"}).code == kExitUsage);
  CHECK(cli({"optimize", "--preset", "d1", "--grid", "1", "--out", dir / "x.json"}).code ==
        kExitUsage);
  CHECK(cli({"optimize", "--preset", "d1", "--grid", "5", "--out", dir / "no/such/dir.json"})
            .code == kExitFailure);
}

TEST_CASE("malformed distribution files are rejected") {
  TempDir dir;
  write_text(dir / "broken.json", "{not json");
  CHECK_THROWS_AS((void)read_distribution(dir / "broken.json"), FormatError);
  write_text(dir / "v2.json", R"({"format_version": 2})");
  CHECK_THROWS_AS((void)read_distribution(dir / "v2.json"), FormatError);
  CHECK_THROWS_AS((void)read_distribution(dir / "missing.json"), IoError);
  CHECK(cli({"round", "0.4", "--mode", "table", "--table", dir / "broken.json"}).code ==
        kExitFailure);
}

TEST_CASE("experiment sum") {
  TempDir dir;
  REQUIRE(cli({"optimize", "--preset", "d1", "--grid", "101", "--out", dir / "d1.json"}).code ==
          0);
  const auto out = dir / "sum.csv";
  auto r = cli({"experiment", "sum", "--case", "I", "--modes", "sr,cr,d1", "--table",
                dir / "d1.json", "--reps", "200", "--seed", "1", "--out", out});
  REQUIRE(r.code == 0);
  const auto rows = lines(read_text(out));
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "case,mode,abs_bias,variance,rel_err,n");
  CHECK(rows[2].rfind("I,cr,", 0) == 0);
  CHECK(rows[2].find(",0,") != std::string::npos);
  CHECK(rows[2].substr(rows[2].size() - 4) == ",200");

  CHECK(cli({"experiment", "sum", "--case", "V"}).code == kExitUsage);
  CHECK(cli({"experiment", "sum", "--modes", "table"}).code == kExitUsage);
  CHECK(cli({"experiment", "sum", "--table", dir / "missing.json"}).code == kExitUsage);
  CHECK(cli({"experiment", "sum", "--reps", "0", "--modes", "cr"}).code == kExitUsage);
}

TEST_CASE("experiment sqrt, dot, varbound and contour") {
  auto r = cli({"experiment", "sqrt", "--modes", "cr", "--digits", "0", "--a",
                "0.30146,6.55501,51.16904", "--reps", "10"});
  REQUIRE(r.code == 0);
  auto rows = lines(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "a,mode,delta,mu,abs_bias,variance,rel_err,n_it_mean,breakdowns,nonconverged");
  CHECK(rows[1] == "0.30146000000000001,cr,1,NA,NA,NA,NA,NA,10,0");
  CHECK(rows[2].find(",cr,1,3,") != std::string::npos);
  CHECK(rows[2].substr(rows[2].size() - 5) == ",0,10");
  CHECK(rows[3].find(",cr,1,7,") != std::string::npos);
  CHECK(rows[3].find(",6,0,0") != std::string::npos);

  r = cli({"experiment", "dot", "--modes", "cr,sr", "--sizes", "50,100", "--reps", "20"});
  REQUIRE(r.code == 0);
  rows = lines(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "n,mode,abs_bias,variance,rel_err");
  CHECK(rows[1].rfind("50,cr,", 0) == 0);
  CHECK(cli({"experiment", "dot", "--sizes", "1", "--modes", "cr"}).code == kExitUsage);

  r = cli({"experiment", "varbound", "--stride", "1000", "--draws", "100"});
  REQUIRE(r.code == 0);
  rows = lines(r.out);
  REQUIRE(rows.size() == 22);
  CHECK(rows[0] == "x,empirical_v,theoretical_v,bound");
  CHECK(rows[1] == "0,0,0,0.0009765625");

  r = cli({"experiment", "contour", "--res", "20"});
  REQUIRE(r.code == 0);
  rows = lines(r.out);
  CHECK(rows.size() == 401);
  CHECK(rows[0] == "x1,x2,e_down,e_up,p");
}

TEST_CASE("experiments are reproducible") {
  const std::vector<std::string> args{"experiment", "sum",  "--case", "II", "--modes",
                                      "sr,cr",      "--reps", "100", "--seed", "3"};
  const auto a = cli(args), b = cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto other = args;
  other.back() = "4";
  CHECK(cli(other).out != a.out);
}
