#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "cli.hpp"
#include "json.hpp"

using conelp::cli::run;
using Json = nlohmann::json;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("conelp_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

const char* kBoxLp = R"({"n":2,"m":4,"A":[1,0,0,1,-1,0,0,-1],"b":[1,1,0,0],"c":[-1,-1]})";

}  // namespace

TEST_CASE("solve the box LP file") {
  TempDir dir;
  spit(dir.file("box.json"), kBoxLp);
  const auto res = call({"solve", dir.file("box.json")});
  REQUIRE(res.code == conelp::cli::kOk);
  const Json doc = Json::parse(res.out);
  CHECK(doc["status"] == "Optimal");
  CHECK(doc["objective"].get<double>() == doctest::Approx(-2.0));
  CHECK(doc["certificate"]["passed"] == true);

  const auto fixed = call({"solve", dir.file("box.json"), "--theta", "3", "--tol", "1e-8",
                           "-o", dir.file("report.json")});
  CHECK(fixed.code == conelp::cli::kOk);
  CHECK(Json::parse(slurp(dir.file("report.json")))["status"] == "Optimal");
}

TEST_CASE("malformed problem exits with 1 and an error document") {
  TempDir dir;
  spit(dir.file("bad.json"), "{\"n\": 2, ");
  const auto res = call({"solve", dir.file("bad.json")});
  CHECK(res.code == conelp::cli::kParseError);
  const Json doc = Json::parse(res.out);
  CHECK(doc["error"] == "ParseError");
  CHECK(doc.contains("message"));

  CHECK(call({"solve", dir.file("missing.json")}).code == conelp::cli::kParseError);
  spit(dir.file("box.json"), kBoxLp);
  CHECK(call({"solve", dir.file("box.json"), "--theta", "big"}).code == conelp::cli::kParseError);
  CHECK(call({"frobnicate"}).code == conelp::cli::kParseError);
}

TEST_CASE("solver failure exits with 2") {
  TempDir dir;
  spit(dir.file("infeasible.json"),
       R"({"n":2,"m":4,"A":[1,0,0,1,-1,0,0,-1],"b":[-1,0,0,0],"c":[-1,-1]})");
  const auto res = call({"solve", dir.file("infeasible.json")});
  CHECK(res.code == conelp::cli::kSolverFailure);
  CHECK(Json::parse(res.out)["status"] == "Infeasible");
}

TEST_CASE("gen is deterministic and echoes the header") {
  TempDir dir;
  REQUIRE(call({"gen", "--family", "box", "--n", "6", "--m", "3", "--seed", "5", "-o",
                dir.file("a.json")})
              .code == 0);
  REQUIRE(call({"gen", "--family", "box", "--n", "6", "--m", "3", "--seed", "5", "-o",
                dir.file("b.json")})
              .code == 0);
  CHECK(slurp(dir.file("a.json")) == slurp(dir.file("b.json")));
  const Json doc = Json::parse(slurp(dir.file("a.json")));
  CHECK(doc["n"] == 6);
  CHECK(doc["m"] == 3 + 12);
  CHECK(doc["cone_rows"] == 3);
  CHECK(doc["family"] == "box");

  REQUIRE(call({"gen", "--family", "dense", "--n", "6", "--m", "3", "--seed", "5", "-o",
                dir.file("d.json")})
              .code == 0);
  const Json dense = Json::parse(slurp(dir.file("d.json")));
  CHECK(dense["family"] == "dense");
  CHECK(dense["A"] != doc["A"]);
  CHECK(dense["b"] == doc["b"]);

  CHECK(call({"gen", "--family", "netlib"}).code == conelp::cli::kParseError);
}

TEST_CASE("solve --oracle and --trace on a generated instance") {
  TempDir dir;
  REQUIRE(call({"gen", "--n", "15", "--m", "15", "--seed", "2", "-o", dir.file("p.json")}).code ==
          0);
  const auto res =
      call({"solve", dir.file("p.json"), "--oracle", "--trace", dir.file("trace.csv")});
  REQUIRE(res.code == 0);
  const Json doc = Json::parse(res.out);
  REQUIRE(doc.contains("rel_deviation"));
  CHECK(doc["rel_deviation"].get<double>() <= 1e-4);
  CHECK(doc["oracle"]["status"] == "Optimal");

  std::istringstream trace(slurp(dir.file("trace.csv")));
  std::string line;
  std::getline(trace, line);
  CHECK(line == "iteration,basis_size,update_time_s");
  std::size_t rows = 0;
  while (std::getline(trace, line)) ++rows;
  CHECK(rows == doc["diagnostics"]["total_iterations"].get<std::size_t>());
}

TEST_CASE("bench writes a CSV and a summary") {
  TempDir dir;
  const auto res = call({"bench", "--sizes", "10,20", "--seeds", "2", "--csv",
                         dir.file("bench.csv"), "--threads", "1"});
  REQUIRE(res.code == 0);
  std::istringstream csv(slurp(dir.file("bench.csv")));
  std::string line;
  std::size_t rows = 0;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 1 + 2 * 2 * 2);
  CHECK(res.out.find("median_time_ratio_simplex_over_conelp") != std::string::npos);

  const auto subset = call({"bench", "--sizes", "8", "--m", "3,5", "--seeds", "1", "--solvers",
                            "conelp", "--family", "box,dense"});
  REQUIRE(subset.code == 0);
  std::istringstream out(subset.out);
  rows = 0;
  while (std::getline(out, line)) ++rows;
  CHECK(rows == 1 + 2 * 2);
  CHECK(call({"bench", "--sizes", "8", "--solvers", "glpk"}).code == conelp::cli::kParseError);
}

TEST_CASE("installed binary reports exit codes") {
  TempDir dir;
  spit(dir.file("box.json"), kBoxLp);
  spit(dir.file("bad.json"), "nope");
  const std::string exe = CONELP_CLI_PATH;
  auto status = [&](const std::string& args) {
    const int raw = std::system((exe + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  CHECK(status("solve " + dir.file("box.json")) == 0);
  CHECK(status("solve " + dir.file("bad.json")) == 1);
}
