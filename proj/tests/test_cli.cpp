#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_app.hpp"
#include "dcalc/serialize.hpp"

using namespace dcalc;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kF9 = R"j({"p":3,"n":2})j";

}  // namespace

TEST_CASE("reports carry the command and seed") {
  const Outcome r = run({"lemma-verify", "--p", "3", "--n", "1", "--trials", "20", "--seed", "9"});
  REQUIRE(r.code == cli::kOk);
  const auto j = io::Json::parse(r.out);
  CHECK(j["command"] == "lemma-verify");
  CHECK(j["seed"] == 9);
  CHECK(j["passes"] == 20);
  CHECK(r.err.empty());
}

TEST_CASE("same seed, same bytes") {
  const std::vector<std::string> args = {"props-verify", "--p", "5", "--n", "2", "--trials", "30", "--seed", "3"};
  const Outcome a = run(args), b = run(args);
  CHECK(a.code == cli::kOk);
  CHECK(a.out == b.out);
  auto other = args;
  other.back() = "4";
  CHECK(run(other).out != a.out);
}

TEST_CASE("gapn exit codes follow the verdict") {
  CHECK(run({"gapn", "--field", R"j({"p":2,"n":3})j", "--function", "x^3"}).code == cli::kOk);
  CHECK(run({"gapn", "--field", kF9, "--function", "x^2"}).code == cli::kNegative);
  const Outcome bad = run({"gapn", "--field", kF9, "--function", "x^^2"});
  CHECK(bad.code == cli::kUsage);
  CHECK_FALSE(bad.err.empty());
  CHECK(bad.out.empty());
}

TEST_CASE("function arguments from files") {
  const auto path = std::filesystem::temp_directory_path() / "dcalc_test_cli_fn.json";
  std::ofstream(path) << R"j({"table":[0,1,1,0,2,2,0,0,0]})j";
  const Outcome r = run({"derive", "--field", kF9, "--function", "@" + path.string(), "--dirs", "1"});
  CHECK(r.code == cli::kOk);
  CHECK(io::Json::parse(r.out)["expansion_agrees"] == true);
  std::filesystem::remove(path);
  CHECK(run({"derive", "--field", kF9, "--function", "@" + path.string(), "--dirs", "1"}).code == cli::kUsage);
}

TEST_CASE("--out writes the report instead of stdout") {
  const auto path = std::filesystem::temp_directory_path() / "dcalc_test_cli_out.json";
  const Outcome direct = run({"field-info", "--p", "2", "--n", "3"});
  const Outcome r = run({"field-info", "--p", "2", "--n", "3", "--out", path.string()});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == direct.out);
  CHECK(io::Json::parse(ss.str())["field"]["modulus"] == io::Json::parse("[1,0,1,1]"));
  std::filesystem::remove(path);
  CHECK(run({"field-info", "--p", "2", "--n", "3", "--out", "/nonexistent/dir/x.json"}).code == cli::kUsage);
}

TEST_CASE("table format") {
  const Outcome r = run({"field-info", "--p", "3", "--n", "2", "--format", "table"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("order: 9\n") != std::string::npos);
  CHECK(r.out.find("field.modulus: 1 0 1\n") != std::string::npos);
}

TEST_CASE("match reproduces the worked example") {
  const Outcome r = run({"match", "--field", kF9, "--f",
                         R"j({"anf":{"basis":[[1,0],[0,1]],"components":[{"(2,1)":1,"(0,2)":1}]}})j", "--alpha", "1",
                         "--beta", "3"});
  REQUIRE(r.code == cli::kOk);
  const auto j = io::Json::parse(r.out);
  CHECK(j["g"]["anf"]["components"][0] == io::Json::parse(R"j({"(0,1)":1,"(1,1)":2,"(0,2)":2,"(1,2)":1})j"));
  CHECK(run({"match", "--field", kF9, "--f", "x", "--alpha", "1", "--beta", "2"}).code == cli::kUsage);
}

TEST_CASE("antideriv across several directions") {
  const std::vector<std::string> base = {"antideriv", "--field", kF9, "--dirs", "1,3"};
  auto ok = base;
  ok.insert(ok.end(), {"--function", "1", "--function", "g"});
  const Outcome r = run(ok);
  CHECK(r.code == cli::kOk);
  CHECK(io::Json::parse(r.out)["status"] == "ok");

  auto too_few = base;
  too_few.insert(too_few.end(), {"--function", "1"});
  CHECK(run(too_few).code == cli::kUsage);

  auto inconsistent = base;
  inconsistent.insert(inconsistent.end(), {"--function", "x", "--function", "1"});
  const Outcome bad = run(inconsistent);
  CHECK(bad.code == cli::kNegative);
  CHECK(io::Json::parse(bad.out)["status"] == "no_antiderivative");
}

TEST_CASE("census variants") {
  CHECK(run({"census", "--p", "7"}).code == cli::kOk);
  CHECK(run({"census", "--p", "23"}).code == cli::kOk);
  CHECK(io::Json::parse(run({"census", "--p", "23"}).out)["methods"]["enumerate"].is_null());
  CHECK(run({"census", "--ring", "6"}).code == cli::kOk);
  CHECK(run({"census", "--p", "15"}).code == cli::kUsage);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"--help"}).code == cli::kOk);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({"lemma-verify", "--n", "2"}).code == cli::kUsage);
  CHECK(run({"field-info", "--p", "3", "--n", "2", "--trials", "x"}).code == cli::kUsage);
  CHECK(run({"derive", "--field", kF9, "--function", "x", "--dirs", "a"}).code == cli::kUsage);
  CHECK(run({"gapn", "--field", R"j({"p":3)j", "--function", "x"}).code == cli::kUsage);
}
