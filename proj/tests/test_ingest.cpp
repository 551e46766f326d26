#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "coxsaito/dkx_cache.hpp"
#include "coxsaito/invariants_file.hpp"
#include "coxsaito/report.hpp"
#include "json.hpp"

using namespace coxsaito;
namespace fs = std::filesystem;

namespace {

const std::string kData = COXSAITO_DATA_DIR;

ContextPtr builtin(const char* type, unsigned n) {
  CoxeterDatum d = build_datum(type, n);
  BasicInvariants b = builtin_invariants(d);
  return build_context(std::move(d), std::move(b));
}

fs::path scratch_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("coxsaito_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// Line and column of the ParseError raised by `text`.
std::pair<int, int> parse_error_at(const std::string& text) {
  try {
    parse_invariants(text);
  } catch (const ParseError& e) {
    return {e.line(), e.column()};
  }
  return {0, 0};
}

const char* kB2Group =
    "[group]\n"
    "rank = 2\n"
    "exponents = 1 3\n"
    "gram = 1 0 0 1\n"
    "form = 1 0\n"
    "form = 0 1\n"
    "form = 1 -1\n"
    "form = 1 1\n";

}  // namespace

TEST_CASE("B2 file reproduces the built-in path") {
  auto file = ingest_invariants(kData + "/b2_catalogue.inv");
  auto ref = builtin("B", 2);
  CHECK(file.invariants.polys() == ref->invariants().polys());
  CHECK(file.datum.exponents == ref->datum().exponents);
  CHECK(file.datum.hyperplane_forms == ref->datum().hyperplane_forms);

  auto ctx = build_context(file.datum, file.invariants);
  CheckReport a = run_suites(*ctx, {}, SuiteBounds{});
  CheckReport b = run_suites(*ref, {}, SuiteBounds{});
  REQUIRE(a.checks.size() == b.checks.size());
  for (size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].name == b.checks[i].name);
    CHECK(a.checks[i].status == b.checks[i].status);
  }
  for (unsigned k = 1; k <= 3; ++k) CHECK(bk_matrix(k, *ctx) == bk_matrix(k, *ref));
}

TEST_CASE("invariants for a built-in group may omit the group block") {
  auto b2 = build_datum("B", 2);
  auto in = parse_invariants("[invariant]\nterm = 2 0 : 1/8\nterm = 0 2 : 1/8\n"
                             "[invariant]\nterm = 4 0 : 1\nterm = 0 4 : 1\n",
                             b2);
  CHECK(in.datum.id() == "B2");
  CHECK(in.invariants.polys()[0].terms().front().coeff == Scalar(1, 8));

  // a [field] block must agree with the group's field
  auto i2 = build_datum("I2", 5);
  CHECK_THROWS_AS(parse_invariants("[field]\nminpoly = -2 0 1\n[invariant]\nterm = 2 0 : 1\n", i2), ParseError);
  CHECK_THROWS_AS(parse_invariants(std::string(kB2Group) + "[invariant]\nterm = 2 0 : 1\n", b2), ParseError);
}

TEST_CASE("format and parse round-trip every built-in") {
  const std::pair<const char*, unsigned> groups[] = {{"A", 1}, {"A", 3}, {"B", 3}, {"D", 4},
                                                     {"I2", 5}, {"I2", 6}, {"I2", 8}};
  for (const auto& [t, n] : groups) {
    CAPTURE(t);
    CAPTURE(n);
    CoxeterDatum d = build_datum(t, n);
    BasicInvariants b = builtin_invariants(d);
    auto back = parse_invariants(format_invariants_file(d, b.polys()));
    CHECK(back.datum.rank == d.rank);
    CHECK(back.datum.exponents == d.exponents);
    CHECK(back.datum.gram_A == d.gram_A);
    CHECK(back.datum.generators == d.generators);
    CHECK(back.datum.hyperplane_forms.size() == d.hyperplane_forms.size());
    CHECK(back.invariants.polys().size() == b.polys().size());
    for (size_t j = 0; j < b.polys().size(); ++j) CHECK(back.invariants.polys()[j].to_string() == b.polys()[j].to_string());
    CHECK(format_invariants_file(back.datum, back.invariants.polys()) == format_invariants_file(d, b.polys()));
  }
}

TEST_CASE("parse errors carry line and column") {
  CHECK(parse_error_at("rank = 2\n") == std::pair{1, 1});
  CHECK(parse_error_at("[group]\nrank = 2\ngram = 1 0 0 x\n") == std::pair{3, 14});
  CHECK(parse_error_at("[group]\nrank = 2\nform = [1, 2\n") == std::pair{3, 8});
  CHECK(parse_error_at("# header\n[groups]\n") == std::pair{2, 2});
  CHECK(parse_error_at(std::string(kB2Group) + "[invariant]\nterm = 2 0 2 : 1\n") == std::pair{10, 1});
  CHECK(parse_error_at(std::string(kB2Group) + "[invariant]\nterm = 2 0 : 1/0\n") == std::pair{10, 14});
  CHECK(parse_error_at("[field]\nminpoly = -5 0 2\n") == std::pair{2, 16});
  CHECK(parse_error_at("[group]\n   1 0\n") == std::pair{2, 4});
  CHECK(parse_error_at("[group]\nrank = 2\nweight = 3\n") == std::pair{3, 1});
  CHECK(parse_error_at("[group]\nrank = 0\n") == std::pair{2, 8});
  CHECK(parse_error_at(std::string(kB2Group)) == std::pair{1, 1});
  CHECK_THROWS_AS(ingest_invariants(kData + "/does_not_exist.inv"), ConfigError);
}

TEST_CASE("invalid invariants are rejected with the validation kind") {
  auto kind_of = [](const std::string& text) -> std::string {
    try {
      parse_invariants(text);
    } catch (const ValidationError& e) {
      return e.kind();
    }
    return "";
  };
  // P2 = P1^2 is invariant of the right degree but dependent
  CHECK(kind_of(std::string(kB2Group) +
                "[invariant]\nterm = 2 0 : 1\nterm = 0 2 : 1\n"
                "[invariant]\nterm = 4 0 : 1\nterm = 2 2 : 2\nterm = 0 4 : 1\n") == "JacobianCriterionFailed");
  CHECK(kind_of(std::string(kB2Group) +
                "[invariant]\nterm = 2 0 : 1\nterm = 0 2 : 1\n"
                "[invariant]\nterm = 4 0 : 1\nterm = 0 3 : 1\n") == "NotInvariant");
  CHECK(kind_of(std::string(kB2Group) + "[invariant]\nterm = 2 0 : 1\nterm = 0 2 : 1\n") == "WrongDegrees");
  // forms not permuted by the reflections they generate
  CHECK(kind_of("[group]\nrank = 2\nexponents = 1 3\ngram = 1 0 0 1\nform = 1 0\nform = 1 2\n"
                "[invariant]\nterm = 2 0 : 1\n[invariant]\nterm = 4 0 : 1\n") == "InvalidDatum");
}

TEST_CASE("H3 over Q(sqrt 5) validates and its suites run") {
  auto in = ingest_invariants(kData + "/h3.inv");
  CHECK(in.datum.rank == 3);
  REQUIRE(in.datum.field);
  CHECK(in.datum.field->degree() == 2);
  CHECK(in.datum.hyperplane_forms.size() == 15);
  CHECK(in.datum.coxeter_number == 10);
  CHECK_FALSE(in.invariants.jacobian_constant().is_zero());
  auto ctx = build_context(in.datum, in.invariants);
  CheckReport r = run_suites(*ctx, {"bk", "flat"}, SuiteBounds{1, 1, 1});
  CHECK(r.ok());
  CHECK(r.count(Status::Pass) > 0);
  // degrees of xi^(1): h * 0 + m_j
  auto xi = xi_basis(1, *ctx);
  CHECK(xi[0].degree == 1);
  CHECK(xi[1].degree == 5);
  CHECK(xi[2].degree == 9);
}

TEST_CASE("persisted D^k[X] tables load back identically") {
  fs::path dir = scratch_dir("dkx");
  auto a = builtin("B", 3);
  for (unsigned k = 1; k <= 3; ++k) a->dkx(k);
  std::string path = store_dkx_cache(*a, dir.string());
  CHECK(fs::exists(path));

  auto b = builtin("B", 3);
  CHECK(load_dkx_cache(*b, dir.string()) == 3);
  CHECK(b->cached_dkx_orders() == std::vector<unsigned>{1, 2, 3});
  auto fresh = builtin("B", 3);
  for (unsigned k = 1; k <= 3; ++k) CHECK(b->dkx(k) == fresh->dkx(k));
  CHECK(bk_matrix(3, *b) == bk_matrix(3, *fresh));

  // other invariants hash to another file
  auto in = ingest_invariants(kData + "/b2_flat.inv");
  auto other = build_context(in.datum, in.invariants);
  auto b2 = builtin("B", 2);
  CHECK(dkx_cache_key(*other) != dkx_cache_key(*b2));
  CHECK(load_dkx_cache(*b2, dir.string()) == 0);

  // corrupted tables are ignored
  std::string text;
  {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  text[text.size() - 3] = text[text.size() - 3] == '1' ? '2' : '1';
  std::ofstream(path, std::ios::trunc) << text;
  auto c = builtin("B", 3);
  CHECK(load_dkx_cache(*c, dir.string()) == 0);
  CHECK(c->cached_dkx_orders().empty());
  fs::remove_all(dir);
}

TEST_CASE("JSON and text reports list the same checks") {
  auto ctx = builtin("B", 2);
  Perturbation p;
  PolyMatrix b = bk_matrix(2, *ctx);
  b(0, 1) += MultiPoly::constant(2, Scalar(1));
  p.bk[2] = b;
  CheckReport r = run_suites(*ctx->perturbed(p), {"bk", "flat"}, SuiteBounds{});
  r.invariants = "catalogue";
  auto j = nlohmann::json::parse(render_json(r));

  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  std::sort(keys.begin(), keys.end());
  CHECK(keys == std::vector<std::string>{"checks", "field", "group", "invariants", "summary"});
  CHECK(j["group"] == "B2");
  CHECK(j["field"] == "Q");
  REQUIRE(j["checks"].size() == r.checks.size());
  size_t fails = 0;
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("name"));
    CHECK(c.contains("paper_ref"));
    CHECK(c.contains("ms"));
    const std::string s = c["status"];
    CHECK((s == "pass" || s == "fail" || s == "skipped"));
    CHECK(c.contains("witness") == (s != "pass"));
    fails += s == "fail";
  }
  CHECK(fails > 0);
  CHECK(j["summary"]["fail"] == fails);
  CHECK(j["summary"]["total"] == r.checks.size());
  CHECK(j["summary"]["ok"] == false);

  std::string text = render_text(r);
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> names;
  while (std::getline(in, line)) {
    if (line.rfind("PASS  ", 0) == 0 || line.rfind("FAIL  ", 0) == 0 || line.rfind("SKIP  ", 0) == 0) {
      std::istringstream ls(line.substr(6));
      std::string name;
      ls >> name;
      names.push_back(name);
    }
  }
  REQUIRE(names.size() == j["checks"].size());
  for (size_t i = 0; i < names.size(); ++i) CHECK(names[i] == j["checks"][i]["name"]);
}
