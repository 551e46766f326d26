#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "coxsaito/coxeter.hpp"

using namespace coxsaito;

namespace {

MultiPoly X(size_t n, size_t i) { return MultiPoly::variable(n, i); }
MultiPoly C(size_t n, long c) { return MultiPoly::constant(n, Scalar(c)); }

struct Builtin {
  const char* type;
  unsigned n;
};

const Builtin kBuiltins[] = {{"A", 1}, {"A", 2}, {"A", 3}, {"B", 1}, {"B", 2}, {"B", 3}, {"D", 3},
                             {"I2", 3}, {"I2", 4}, {"I2", 5}, {"I2", 6}, {"I2", 7}, {"I2", 8}};

PolyMatrix jacobian(const std::vector<MultiPoly>& p) {
  const size_t l = p.size();
  PolyMatrix j(l, l, MultiPoly(l));
  for (size_t a = 0; a < l; ++a)
    for (size_t b = 0; b < l; ++b) j(a, b) = p[b].partial(a);
  return j;
}

}  // namespace

TEST_CASE("B2 realization") {
  CoxeterDatum d = build_datum("B", 2);
  MultiPoly x = X(2, 0), y = X(2, 1);
  REQUIRE(d.hyperplane_forms.size() == 4);
  for (const auto& f : {x, y, x - y, x + y})
    CHECK(std::find(d.hyperplane_forms.begin(), d.hyperplane_forms.end(), f) != d.hyperplane_forms.end());
  CHECK(d.exponents == std::vector<unsigned>{1, 3});
  CHECK(d.coxeter_number == 4);
  CHECK(d.id() == "B2");
}

TEST_CASE("A1 realization") {
  CoxeterDatum d = build_datum("A", 1);
  REQUIRE(d.hyperplane_forms.size() == 1);
  CHECK(d.hyperplane_forms[0] == X(1, 0));
  CHECK(d.exponents == std::vector<unsigned>{1});
  CHECK(d.coxeter_number == 2);
}

TEST_CASE("I2(5) realization") {
  CoxeterDatum d = build_datum("I2", 5);
  CHECK(d.hyperplane_forms.size() == 5);
  CHECK(d.exponents == std::vector<unsigned>{1, 4});
  CHECK(d.coxeter_number == 5);
  REQUIRE(d.field);
  CHECK(d.field->degree() == 4);
  CHECK(d.id() == "I2(5)");
}

TEST_CASE("A_l Gram matrix uses the projection recipe") {
  CoxeterDatum d = build_datum("A", 3);
  CHECK(d.gram_A(0, 0) == Scalar(3, 4));
  CHECK(d.gram_A(0, 1) == Scalar(-1, 4));
  CHECK(d.hyperplane_forms.size() == 6);
}

TEST_CASE("unsupported types and ranks") {
  CHECK_THROWS_AS(build_datum("E", 6), UnsupportedType);
  CHECK_THROWS_AS(build_datum("A", 0), RankOutOfRange);
  CHECK_THROWS_AS(build_datum("D", 2), RankOutOfRange);
  CHECK_THROWS_AS(build_datum("I2", 2), RankOutOfRange);
  CHECK_THROWS_AS(builtin_invariants(make_custom_datum("custom-B2", nullptr, build_datum("B", 2).gram_A,
                                                       build_datum("B", 2).hyperplane_forms,
                                                       build_datum("B", 2).generators, {1, 3})),
                  UnsupportedType);
}

TEST_CASE("dihedral minimal polynomials annihilate 2cos(pi/2m)") {
  for (unsigned m = 3; m <= 12; ++m) {
    FieldContext f(dihedral_minimal_polynomial(m), "");
    Scalar t = Scalar::generator(&f);
    // C_k(2cos phi) = 2cos(k phi); C_{2m} at phi = pi/2m is 2cos(pi) = -2
    Scalar a(2), b = t;
    for (unsigned k = 2; k <= 2 * m; ++k) {
      Scalar c = t * b - a;
      a = b;
      b = c;
    }
    CHECK(b == Scalar(-2));
  }
}

TEST_CASE("catalogue invariants") {
  MultiPoly x = X(2, 0), y = X(2, 1);
  SUBCASE("B2") {
    CoxeterDatum d = build_datum("B", 2);
    BasicInvariants b = builtin_invariants(d);
    CHECK(b.polys()[0] == x * x + y * y);
    CHECK(b.polys()[1] == x.pow(4) + y.pow(4));
    CHECK(b.jacobian_constant() == Scalar(-8));
    CHECK(determinant(jacobian(b.polys())) == C(2, 8) * (x * y.pow(3) - x.pow(3) * y));
  }
  SUBCASE("A1") {
    CoxeterDatum d = build_datum("A", 1);
    BasicInvariants b = builtin_invariants(d);
    CHECK(b.polys()[0] == X(1, 0) * X(1, 0));
    CHECK(b.jacobian_constant() == Scalar(2));
  }
  SUBCASE("I2(4)") {
    BasicInvariants b = builtin_invariants(build_datum("I2", 4));
    CHECK(b.polys()[1] == x.pow(4) - C(2, 6) * x * x * y * y + y.pow(4));
  }
}

TEST_CASE("validation errors") {
  CoxeterDatum d = build_datum("B", 2);
  MultiPoly x = X(2, 0), y = X(2, 1);
  MultiPoly p1 = x * x + y * y;
  try {
    validate_invariants(d, {p1, p1 * p1});
    FAIL("expected JacobianCriterionFailed");
  } catch (const ValidationError& e) {
    CHECK(e.kind() == "JacobianCriterionFailed");
  }
  try {
    validate_invariants(d, {p1, x.pow(4) + y.pow(3)});
    FAIL("expected NotInvariant");
  } catch (const ValidationError& e) {
    CHECK(e.kind() == "NotInvariant");
    CHECK(std::string(e.what()).find("generator") != std::string::npos);
  }
  try {
    validate_invariants(d, {p1 * p1, p1});
    FAIL("expected WrongDegrees");
  } catch (const ValidationError& e) {
    CHECK(e.kind() == "WrongDegrees");
  }
}

TEST_CASE("anti-invariant Q") {
  MultiPoly x = X(2, 0), y = X(2, 1);
  CoxeterDatum d = build_datum("B", 2);
  MultiPoly q = anti_invariant_Q(d);
  CHECK(q == x * y * (x - y) * (x + y));
  CHECK(anti_invariant_Q(build_datum("A", 1)) == X(1, 0));
  Matrix<Scalar> swap(2, 2, std::vector<Scalar>{0, 1, 1, 0});
  CHECK(q.subst_linear(swap) == -q);
}

TEST_CASE("Poincare closed forms") {
  RationalFunction a1 = poincare_closed_form({1}, {2});
  CHECK(a1.num == UPoly({0, 1}));
  CHECK(a1.den == UPoly({1, 0, -1}));
  CHECK(poincare_closed_form({}, {2, 4}).num.is_zero());
  // B2, p = 2: sum over k >= 2 of T-module pieces vs the R-module closed form
  const unsigned h = 4;
  std::vector<unsigned> gens = {(2 - 1) * h + 1, (2 - 1) * h + 3};
  RationalFunction lhs = poincare_closed_form(gens, {2, h});
  RationalFunction rhs = poincare_closed_form(gens, {2, 4});
  CHECK(lhs == rhs);
  auto s = a1.series(6);
  CHECK(s == std::vector<mpq_class>{0, 1, 0, 1, 0, 1});
}

TEST_CASE("property: built-in data satisfy the structural invariants") {
  for (const auto& b : kBuiltins) {
    CAPTURE(b.type);
    CAPTURE(b.n);
    CoxeterDatum d = build_datum(b.type, b.n);
    unsigned sum = std::accumulate(d.exponents.begin(), d.exponents.end(), 0u);
    CHECK(d.hyperplane_forms.size() == sum);
    CHECK(2 * sum == d.rank * d.coxeter_number);
    ScalarMatrix id = ScalarMatrix::identity(d.rank, Scalar(0), Scalar(1));
    for (const auto& m : d.generators) {
      CHECK(m * m == id);
      CHECK(m * d.gram_A * m.transpose() == d.gram_A);
    }
    BasicInvariants inv = builtin_invariants(d);
    CHECK(inv.validated());
    MultiPoly q = anti_invariant_Q(d);
    CHECK(*q.total_degree() == sum);
    for (const auto& m : d.generators) CHECK(q.subst_linear(m) == -q);
  }
}

TEST_CASE("property: rescaling hyperplane forms does not change validation") {
  CoxeterDatum d = build_datum("B", 3);
  auto base = builtin_invariants(d);
  CoxeterDatum scaled = d;
  for (size_t i = 0; i < scaled.hyperplane_forms.size(); ++i)
    scaled.hyperplane_forms[i] = scaled.hyperplane_forms[i] * Scalar(static_cast<long>(i) + 2);
  // validate_invariants only uses divisibility, which ignores scale
  auto again = validate_invariants(scaled, base.polys());
  CHECK(again.validated());
  CHECK_FALSE(again.jacobian_constant() == base.jacobian_constant());
}
