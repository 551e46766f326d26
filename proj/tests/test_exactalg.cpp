#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <memory>

#include "coxsaito/fraction.hpp"
#include "coxsaito/poly.hpp"
#include "generators.hpp"
#include "properties.hpp"

using namespace coxsaito;
using coxsaito::testing::Gen;

namespace {

std::shared_ptr<FieldContext> sqrt5() {
  return std::make_shared<FieldContext>(UPoly({-5, 0, 1}), "sqrt(5)");
}

MultiPoly X(size_t n, size_t i) { return MultiPoly::variable(n, i); }
MultiPoly C(size_t n, long c) { return MultiPoly::constant(n, Scalar(c)); }

// Iteration count for the randomized property suites.
constexpr int kInstances = 1000;
constexpr uint64_t kSeed = 20261018;

}  // namespace

TEST_CASE("scalar arithmetic in Q") {
  CHECK(Scalar(2, 3) + Scalar(1, 6) == Scalar(5, 6));
  CHECK_THROWS_AS(Scalar(1) / Scalar(0), DivisionByZero);
}

TEST_CASE("scalar arithmetic in Q(sqrt 5)") {
  auto f = sqrt5();
  Scalar t = Scalar::generator(f.get());
  CHECK(t * t == Scalar(5));
  Scalar golden = (Scalar(1) + t) / Scalar(2);
  CHECK(Scalar(1) / golden == (t - Scalar(1)) / Scalar(2));
  CHECK_FALSE(t.is_rational());
  CHECK(t.to_string() == "(t)");
}

TEST_CASE("reducible minimal polynomial surfaces as NonInvertible") {
  auto f = std::make_shared<FieldContext>(UPoly({-1, 0, 1}), "not a field");
  Scalar t = Scalar::generator(f.get());
  CHECK_THROWS_AS((t - Scalar(1)).inverse(), NonInvertible);
}

TEST_CASE("field reduction table handles cubic extensions") {
  // t^3 = 2
  auto f = std::make_shared<FieldContext>(UPoly({-2, 0, 0, 1}), "cbrt(2)");
  Scalar t = Scalar::generator(f.get());
  CHECK(t.pow(3) == Scalar(2));
  CHECK(t.pow(4) == Scalar(2) * t);
  CHECK((t * t) * t.inverse() == t);
}

TEST_CASE("polynomial partials and substitution") {
  MultiPoly x = X(2, 0), y = X(2, 1);
  CHECK((x * x * y).partial(0) == C(2, 2) * x * y);
  Matrix<Scalar> swap(2, 2, std::vector<Scalar>{0, 1, 1, 0});
  CHECK((x * x - y * y).subst_linear(swap) == y * y - x * x);
  MultiPoly p1 = x * x + y * y;
  CHECK(p1.partial(0) == C(2, 2) * x);
  CHECK(p1.partial(1) == C(2, 2) * y);
  CHECK_THROWS_AS(x + X(3, 0), DimensionMismatch);
}

TEST_CASE("degree sentinel for the zero polynomial") {
  MultiPoly z(2);
  CHECK_FALSE(z.total_degree().has_value());
  CHECK(z.is_homogeneous());
  CHECK((X(2, 0) * X(2, 1)).total_degree() == 2u);
  CHECK_FALSE((X(2, 0) + C(2, 1)).is_homogeneous());
}

TEST_CASE("exact division") {
  MultiPoly x = X(2, 0), y = X(2, 1);
  auto q = exact_divide(x * x - y * y, x - y);
  REQUIRE(q);
  CHECK(*q == x + y);
  CHECK_FALSE(exact_divide(x * x + y * y, x));
  // det J(P) for B2 with P = (x^2+y^2, x^4+y^4) over Q = xy(x-y)(x+y)
  MultiPoly det = (C(2, 2) * x) * (C(2, 4) * y.pow(3)) - (C(2, 4) * x.pow(3)) * (C(2, 2) * y);
  MultiPoly q4 = x * y * (x - y) * (x + y);
  auto c = exact_divide(det, q4);
  REQUIRE(c);
  CHECK(*c == C(2, -8));
}

TEST_CASE("fraction simplification") {
  MultiPoly x = X(2, 0), y = X(2, 1);
  FactoredFraction a(C(2, 2) * x * x, Scalar(1), {{x, 1}});
  FactoredFraction s = a.simplify();
  CHECK(s.is_polynomial());
  CHECK(*s.as_polynomial() == C(2, 2) * x);

  FactoredFraction b(x * x + y * y, Scalar(1), {{x - y, 1}});
  FactoredFraction sb = b.simplify();
  CHECK(sb.denominator_factors().size() == 1);
  CHECK(sb.numerator() == x * x + y * y);

  // rank-1 bookkeeping: -1/(4x^3)
  FactoredFraction d2(C(1, -1), Scalar(4), {{X(1, 0), 3}});
  CHECK(d2.numerator() == MultiPoly::constant(1, Scalar(-1, 4)));
  CHECK(d2.denominator_factors().front().second == 3u);
  CHECK(d2.degree() == -3);
}

TEST_CASE("fraction arithmetic and the quotient rule") {
  MultiPoly x = X(1, 0);
  FactoredFraction inv2x(C(1, 1), Scalar(2), {{x, 1}});
  FactoredFraction d = inv2x.partial(0).simplify();
  CHECK(d == FactoredFraction(C(1, -1), Scalar(2), {{x, 2}}));
  CHECK((inv2x + inv2x) == FactoredFraction(C(1, 1), Scalar(1), {{x, 1}}));
  CHECK((inv2x * FactoredFraction(C(1, 2) * x)).simplify() == FactoredFraction(C(1, 1)));
  CHECK((inv2x - inv2x).is_zero());
}

TEST_CASE("matrix determinant and adjugate inverse") {
  MultiPoly x = X(1, 0);
  PolyMatrix j(1, 1, std::vector<MultiPoly>{C(1, 2) * x});
  CHECK(determinant(j) == C(1, 2) * x);
  FracMatrix inv = adjugate_inverse(j);
  CHECK(inv(0, 0) == FactoredFraction(C(1, 1), Scalar(2), {{x, 1}}));
  REQUIRE(inv(0, 0).denominator_factors().size() == 1);
  CHECK(inv(0, 0).denominator_factors()[0].first == x);

  PolyMatrix id = identity_poly_matrix(2, 2);
  CHECK(determinant(id) == C(2, 1));

  PolyMatrix sing(2, 2, std::vector<MultiPoly>{X(2, 0), X(2, 1), X(2, 0), X(2, 1)});
  CHECK_THROWS_AS(adjugate_inverse(sing), SingularMatrix);
}

TEST_CASE("lowest power of a linear form") {
  MultiPoly x = X(2, 0), y = X(2, 1);
  CHECK(lowest_power_in_form(C(2, -4) * x.pow(3), x) == 3u);
  CHECK(lowest_power_in_form(x * x - y * y, x - y) == 1u);
  CHECK_FALSE(lowest_power_in_form(MultiPoly(2), x).has_value());
  CHECK_THROWS_AS(lowest_power_in_form(x, MultiPoly(2)), ZeroForm);
  CHECK(lowest_power_in_form((x + y).pow(4) * (x - y), x + y) == 4u);
}

// ---------------------------------------------------------------------------
// Property suites
// ---------------------------------------------------------------------------

TEST_CASE("property: field axioms in Q(sqrt 5)") {
  auto r = coxsaito::testing::field_axioms(kSeed, kInstances);
  CHECK_MESSAGE(!r.failure, r.failure.value_or(""));
  CHECK(r.instances == kInstances);
}

TEST_CASE("property: exact_divide(f g, g) = f") {
  auto r = coxsaito::testing::exact_divide_round_trip(kSeed + 1, kInstances);
  CHECK_MESSAGE(!r.failure, r.failure.value_or(""));
  CHECK(r.instances == kInstances);
}

TEST_CASE("property: adjugate inverse of unimodular-times-diagonal 3x3 matrices") {
  auto r = coxsaito::testing::adjugate_inverse_identity(kSeed + 2, kInstances);
  CHECK_MESSAGE(!r.failure, r.failure.value_or(""));
  CHECK(r.instances == kInstances);
}

TEST_CASE("property: lowest_power_in_form is invariant under rescaling the form") {
  Gen g(kSeed + 3);
  auto f = sqrt5();
  for (int n = 0; n < kInstances; ++n) {
    std::vector<Scalar> a = {g.scalar(nullptr, 3), g.scalar(nullptr, 3), g.scalar(nullptr, 3)};
    if (a[0].is_zero() && a[1].is_zero() && a[2].is_zero()) a[0] = Scalar(1);
    MultiPoly alpha = MultiPoly::linear(a);
    unsigned k = static_cast<unsigned>(g.integer(0, 3));
    MultiPoly h = g.homogeneous(3, static_cast<unsigned>(g.integer(0, 2)), 3);
    MultiPoly p = alpha.pow(k) * h;
    Scalar c = g.nonzero_scalar(f.get(), 4);
    REQUIRE(lowest_power_in_form(p, alpha) == lowest_power_in_form(p, alpha * c));
    if (!h.is_zero()) REQUIRE(*lowest_power_in_form(p, alpha) >= k);
  }
}

TEST_CASE("property: substitution by M then by M^-1 is the identity") {
  auto r = coxsaito::testing::substitution_round_trip(kSeed + 4, kInstances);
  CHECK_MESSAGE(!r.failure, r.failure.value_or(""));
  CHECK(r.instances == kInstances);
}
