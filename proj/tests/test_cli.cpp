#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "coxsaito/errors.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using coxsaito::cli::run;

namespace {

const std::string kData = COXSAITO_DATA_DIR;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("coxsaito_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::vector<std::pair<std::string, std::string>> name_status(const nlohmann::json& j) {
  std::vector<std::pair<std::string, std::string>> v;
  for (const auto& c : j["checks"]) v.emplace_back(c["name"], c["status"]);
  return v;
}

}  // namespace

TEST_CASE("verify B2 with the full bounds passes") {
  Outcome o = cli({"verify", "--type", "B", "--rank", "2", "--kmax", "3", "--mmax", "7", "--format", "json"});
  CHECK(o.code == 0);
  auto j = nlohmann::json::parse(o.out);
  CHECK(j["group"] == "B2");
  CHECK(j["summary"]["fail"] == 0);
  CHECK(j["summary"]["pass"] > 50);
}

TEST_CASE("rank-1 smoke run") {
  Outcome o = cli({"verify", "--type", "A", "--rank", "1"});
  CHECK(o.code == 0);
  CHECK(o.out.find("FAIL") == std::string::npos);
  CHECK(o.out.find("PASS  bk.difference/k=3") != std::string::npos);
  Outcome flat = cli({"verify", "--invariants", kData + "/a1_flat.inv", "--suite", "flat"});
  CHECK(flat.code == 0);
  CHECK(flat.out.find("SKIP") == std::string::npos);
}

TEST_CASE("basis prints xi^(3) for B2 with degrees 5 and 7") {
  Outcome o = cli({"basis", "--type", "B", "--rank", "2", "-m", "3"});
  CHECK(o.code == 0);
  CHECK(o.out.find("xi^(3)_1  degree 5") != std::string::npos);
  CHECK(o.out.find("xi^(3)_2  degree 7") != std::string::npos);
  Outcome j = cli({"basis", "--type", "I2", "--m", "5", "-m", "2", "--format", "json"});
  CHECK(j.code == 0);
  auto v = nlohmann::json::parse(j.out);
  CHECK(v["group"] == "I2(5)");
  CHECK(v["derivations"][0]["degree"] == 5);
  CHECK(v["derivations"][1]["degree"] == 5);
}

TEST_CASE("exit code 1 when a check fails") {
  Outcome o = cli({"verify", "--type", "B", "--rank", "2", "--suite", "bk", "--perturb", "bk:2:1:2"});
  CHECK(o.code == 1);
  CHECK(o.out.find("witness: entry (1,2)") != std::string::npos);
  CHECK(cli({"verify", "--type", "A", "--rank", "2", "--suite", "connection", "--perturb", "G:2:2"}).code == 1);
  CHECK(cli({"verify", "--type", "A", "--rank", "2", "--suite", "basis", "--perturb", "xi:3:1:1"}).code == 1);
}

TEST_CASE("exit code 2 for configuration, parse and validation errors") {
  CHECK(cli({"verify", "--type", "E", "--rank", "6"}).code == 2);
  CHECK(cli({"verify", "--type", "B"}).code == 2);
  CHECK(cli({"verify", "--type", "I2"}).code == 2);
  CHECK(cli({"verify", "--type", "I2", "--m", "2"}).code == 2);
  CHECK(cli({"verify", "--type", "D", "--rank", "2"}).code == 2);
  CHECK(cli({"verify"}).code == 2);
  CHECK(cli({"verify", "--type", "B", "--rank", "2", "--suite", "bk,nope"}).code == 2);
  CHECK(cli({"verify", "--type", "B", "--rank", "2", "--kmax", "0"}).code == 2);
  CHECK(cli({"verify", "--type", "B", "--rank", "2", "--format", "xml"}).code == 2);
  CHECK(cli({"verify", "--type", "B", "--rank", "2", "--perturb", "bk:2:3:1"}).code == 2);
  CHECK(cli({"basis", "--type", "B", "--rank", "2"}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"verify", "--invariants", kData + "/missing.inv"}).code == 2);

  fs::path dir = scratch("exit2");
  const std::string group =
      "[group]\nrank = 2\nexponents = 1 3\ngram = 1 0 0 1\n"
      "form = 1 0\nform = 0 1\nform = 1 -1\nform = 1 1\n";
  {
    std::ofstream(dir / "dependent.inv") << group
                                         << "[invariant]\nterm = 2 0 : 1\nterm = 0 2 : 1\n"
                                            "[invariant]\nterm = 4 0 : 1\nterm = 2 2 : 2\nterm = 0 4 : 1\n";
    std::ofstream(dir / "malformed.inv") << group << "[invariant]\nterm = 2 0 : one\n";
  }
  Outcome dep = cli({"verify", "--invariants", (dir / "dependent.inv").string()});
  CHECK(dep.code == 2);
  CHECK(dep.err.find("JacobianCriterionFailed") != std::string::npos);
  Outcome bad = cli({"verify", "--invariants", (dir / "malformed.inv").string()});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("line 10, column 14") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("exit code 3 for integrity errors") {
  using namespace coxsaito;
  CHECK(cli::exit_code_for(NonPolynomialEntry("B^(2) entry (1,1)")) == 3);
  CHECK(cli::exit_code_for(NonPolynomialCoefficients("xi")) == 3);
  CHECK(cli::exit_code_for(SingularMatrix("J")) == 3);
  CHECK(cli::exit_code_for(std::runtime_error("other")) == 3);
  CHECK(cli::exit_code_for(ParseError("x", 1, 1)) == 2);
  CHECK(cli::exit_code_for(ValidationError("NotInvariant", "x")) == 2);
  CHECK(cli::exit_code_for(RankOutOfRange("x")) == 2);
}

TEST_CASE("help exits 0") { CHECK(cli({"--help"}).code == 0); }

TEST_CASE("text and JSON reports agree; --out writes the file") {
  fs::path dir = scratch("out");
  const std::string path = (dir / "report.json").string();
  Outcome o = cli({"verify", "--type", "I2", "--m", "5", "--format", "json", "--out", path});
  CHECK(o.code == 0);
  CHECK(o.out.empty());
  std::ifstream f(path);
  auto j = nlohmann::json::parse(f);
  Outcome t = cli({"verify", "--type", "I2", "--m", "5"});
  std::vector<std::pair<std::string, std::string>> from_text;
  std::istringstream in(t.out);
  std::string line;
  while (std::getline(in, line)) {
    const std::string tag = line.substr(0, 4);
    if (tag != "PASS" && tag != "FAIL" && tag != "SKIP") continue;
    std::istringstream ls(line.substr(6));
    std::string name;
    ls >> name;
    from_text.emplace_back(name, tag == "PASS" ? "pass" : tag == "FAIL" ? "fail" : "skipped");
  }
  CHECK(from_text == name_status(j));
  fs::remove_all(dir);
}

TEST_CASE("B2 file and built-in give identical reports") {
  auto a = nlohmann::json::parse(cli({"verify", "--type", "B", "--rank", "2", "--format", "json"}).out);
  auto b = nlohmann::json::parse(cli({"verify", "--invariants", kData + "/b2_catalogue.inv", "--format", "json"}).out);
  CHECK(name_status(a) == name_status(b));
  auto flat = nlohmann::json::parse(cli({"verify", "--invariants", kData + "/b2_flat.inv", "--format", "json"}).out);
  CHECK(flat["summary"]["skipped"] == 0);
  CHECK(flat["summary"]["fail"] == 0);
}

TEST_CASE("H3 file through the CLI") {
  Outcome o = cli({"verify", "--invariants", kData + "/h3.inv", "--suite", "bk,flat", "--kmax", "1"});
  CHECK(o.code == 0);
  CHECK(o.out.find("group H3  field Q(sqrt 5)") != std::string::npos);
  Outcome b = cli({"basis", "--invariants", kData + "/h3.inv", "-m", "1"});
  CHECK(b.code == 0);
  CHECK(b.out.find("xi^(1)_3  degree 9") != std::string::npos);
}

TEST_CASE("cache directory round trip") {
  fs::path dir = scratch("cache");
  setenv("COXSAITO_CACHE_DIR", dir.c_str(), 1);
  Outcome first = cli({"verify", "--type", "A", "--rank", "3", "--suite", "bk", "--format", "json"});
  size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir)) files += e.path().extension() == ".dkx";
  CHECK(files == 1);
  Outcome second = cli({"verify", "--type", "A", "--rank", "3", "--suite", "bk", "--format", "json"});
  unsetenv("COXSAITO_CACHE_DIR");
  CHECK(first.code == 0);
  CHECK(second.code == 0);
  CHECK(name_status(nlohmann::json::parse(first.out)) == name_status(nlohmann::json::parse(second.out)));
  fs::remove_all(dir);
}
