#include "sextic/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace sextic::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream is(text);
  std::string l;
  while (std::getline(is, l)) {
    if (!l.empty() && l.back() == '\r') l.pop_back();
    v.push_back(l);
  }
  return v;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("sextic_test_" + name);
}

}  // namespace

TEST_CASE("moments table, csv") {
  const Result r = invoke({"moments", "--t1", "0", "--t2", "0", "--max-order", "8", "--digits", "30"});
  REQUIRE(r.code == kSuccess);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 2 + 9);
  CHECK(ls[0] == "# sextic moments csv v1");
  CHECK(ls[1] == "j,mu_j");
  // sqrt(pi)/3 to 30 digits
  CHECK(ls[4] == "2,5.90817950301838675766055827780e-01");
  CHECK(ls[3] == "1,0");
}

TEST_CASE("json envelope round-trips") {
  setenv("SOURCE_DATE_EPOCH", "0", 1);
  const Result r = invoke({"moments", "--max-order", "4", "--format", "json"});
  unsetenv("SOURCE_DATE_EPOCH");
  REQUIRE(r.code == kSuccess);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.is_object());
  CHECK(j["rows"].size() == 5);
  CHECK(j["config"]["max_order"] == "4");
  CHECK(j["config"]["digits"] == "50");
  CHECK(j["timestamp"] == "1970-01-01T00:00:00Z");
  CHECK(nlohmann::json::parse(j.dump(2)) == j);
  CHECK(j.dump(2) + "\n" == r.out);
}

TEST_CASE("negative parameters and decimal strings") {
  const Result r = invoke({"recurrence", "--t1", "-1", "--t2=-0.5", "--n", "3", "--digits", "20"});
  REQUIRE(r.code == kSuccess);
  CHECK(lines(r.out).size() == 2 + 4);
}

TEST_CASE("verify: all checks, exit code and worst offender") {
  const Result all = invoke({"verify", "--check", "all", "--n", "20"});
  CHECK(all.code == kSuccess);
  CHECK(lines(all.out).size() == 2 + 6);

  const Result dpi = invoke({"verify", "--check", "dpi", "--t1", "1", "--t2", "-1", "--n", "30", "--digits", "50"});
  CHECK(dpi.code == kSuccess);

  // A tolerance below the reachable floor must fail and name the culprit.
  const Result strict = invoke({"verify", "--check", "ladder", "--n", "8", "--digits", "20", "--tol", "1e-200"});
  CHECK(strict.code == kVerificationFailed);
  CHECK(strict.err.find("ladder at n=") != std::string::npos);
  const Result loose = invoke({"verify", "--check", "ladder", "--n", "8", "--digits", "20", "--tol", "1e-10"});
  CHECK(loose.code == kSuccess);
}

TEST_CASE("asympt reports fitted orders") {
  const Result r = invoke({"asympt", "--quantity", "p", "--t1", "1", "--t2", "1", "--n-list", "16,32"});
  REQUIRE(r.code == kSuccess);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 4);
  CHECK(ls[1] == "n,exact,asym,abs_error,fitted_order,regime_flag");
  CHECK(ls[3].find("single-cut") != std::string::npos);
}

TEST_CASE("sweep over a grid") {
  const Result r = invoke({"sweep", "--t1-range", "-1:1:3", "--t2-range", "0:1:2", "--n", "4", "--digits", "20"});
  REQUIRE(r.code == kSuccess);
  const auto ls = lines(r.out);
  CHECK(ls.size() == 2 + 6);
  CHECK(ls[1] == "t1,t2,n,beta");
}

TEST_CASE("invalid arguments exit with 2") {
  CHECK(invoke({}).code == kInvalidArguments);
  CHECK(invoke({"frobnicate"}).code == kInvalidArguments);
  CHECK(invoke({"moments", "--t1", "abc"}).code == kInvalidArguments);
  CHECK(invoke({"moments", "--format", "xml"}).code == kInvalidArguments);
  CHECK(invoke({"verify", "--check", "nope"}).code == kInvalidArguments);
  CHECK(invoke({"asympt", "--n-list", "64,32"}).code == kInvalidArguments);
  CHECK(invoke({"sweep", "--t1-range", "0:1"}).code == kInvalidArguments);
  CHECK(invoke({"moments", "--guard", "3"}).code == kInvalidArguments);
  CHECK(invoke({"moments", "--config", "/nonexistent/file"}).code == kInvalidArguments);
}

TEST_CASE("precision exhaustion exits with 4 and suggests a guard") {
  const Result r = invoke({"recurrence", "--n", "80", "--digits", "15", "--guard", "10"});
  CHECK(r.code == kPrecisionExhausted);
  CHECK(r.err.find("--guard") != std::string::npos);
}

TEST_CASE("config file, environment and flag precedence") {
  const auto path = temp_file("cfg.ini");
  {
    std::ofstream f(path);
    f << "# defaults\nt1 = 1\nmax_order = 4\ndigits = 25\n";
  }
  const Result from_file = invoke({"moments", "--config", path.string()});
  REQUIRE(from_file.code == kSuccess);
  CHECK(lines(from_file.out).size() == 2 + 5);

  const Result overridden = invoke({"moments", "--config", path.string(), "--max-order", "6"});
  REQUIRE(overridden.code == kSuccess);
  CHECK(lines(overridden.out).size() == 2 + 7);

  setenv(kDigitsEnv, "22", 1);
  const Result env = invoke({"moments", "--max-order", "2", "--format", "json"});
  const Result flag = invoke({"moments", "--max-order", "2", "--format", "json", "--digits", "18"});
  unsetenv(kDigitsEnv);
  CHECK(nlohmann::json::parse(env.out)["config"]["digits"] == "22");
  CHECK(nlohmann::json::parse(flag.out)["config"]["digits"] == "18");
  std::filesystem::remove(path);
}

TEST_CASE("output file and csv quoting") {
  const auto path = temp_file("out.csv");
  const Result r = invoke({"moments", "--max-order", "2", "--output", path.string()});
  CHECK(r.code == kSuccess);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::string first;
  std::getline(f, first);
  CHECK(first == "# sextic moments csv v1");
  std::filesystem::remove(path);

  Report rep;
  rep.config.command = "x";
  rep.columns = {"a", "b"};
  rep.rows = {{"1,5", "say \"hi\""}};
  CHECK(lines(to_csv(rep))[2] == "\"1,5\",\"say \"\"hi\"\"\"");
}

TEST_CASE("repeated runs are byte-identical") {
  setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
  const std::vector<std::string> args = {"verify", "--check", "all", "--n", "8", "--format", "json"};
  const Result a = invoke(args);
  const Result b = invoke(args);
  unsetenv("SOURCE_DATE_EPOCH");
  CHECK(a.out == b.out);
}
