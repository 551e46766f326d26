#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "coxsaito/saito.hpp"

using namespace coxsaito;

namespace {

MultiPoly X(size_t n, size_t i) { return MultiPoly::variable(n, i); }
MultiPoly C(size_t n, const Scalar& c) { return MultiPoly::constant(n, c); }
FactoredFraction F(const MultiPoly& p) { return FactoredFraction(p); }

ContextPtr builtin(const char* type, unsigned n) {
  CoxeterDatum d = build_datum(type, n);
  BasicInvariants b = builtin_invariants(d);
  return build_context(std::move(d), std::move(b));
}

ContextPtr a1_quarter() {
  CoxeterDatum d = build_datum("A", 1);
  MultiPoly x = X(1, 0);
  BasicInvariants b = validate_invariants(d, {x * x * Scalar(1, 4)});
  return build_context(std::move(d), std::move(b));
}

// c * x^e in one variable, e possibly negative
FactoredFraction mono1(long num, long den, int e) {
  MultiPoly x = X(1, 0);
  if (e >= 0) return F(C(1, Scalar(num, den)) * x.pow(static_cast<unsigned>(e)));
  return FactoredFraction(C(1, Scalar(num, den)), Scalar(1), {{x, static_cast<unsigned>(-e)}});
}

}  // namespace

TEST_CASE("A1 with P = x^2: primitive derivation and its powers") {
  auto ctx = builtin("A", 1);
  MultiPoly x = X(1, 0);
  CHECK(ctx->jac_P()(0, 0) == C(1, 2) * x);
  CHECK(ctx->metric_G()(0, 0) == C(1, 4) * x * x);
  CHECK(dkx(0, *ctx)[0] == F(x));
  CHECK(dkx(1, *ctx)[0] == mono1(1, 2, -1));
  CHECK(dkx(2, *ctx)[0] == mono1(-1, 4, -3));
  CHECK(dkx(3, *ctx)[0] == mono1(3, 8, -5));
  CHECK(dkx(2, *ctx)[0].numerator() == C(1, Scalar(-1, 4)));
}

TEST_CASE("A1 with P = x^2: B^(k), Christoffel matrix and the xi basis") {
  auto ctx = builtin("A", 1);
  MultiPoly x = X(1, 0);
  CHECK(bk_matrix(0, *ctx)(0, 0) == C(1, 1));
  CHECK(bk_matrix(1, *ctx)(0, 0) == C(1, 2));
  CHECK(bk_matrix(2, *ctx)(0, 0) == C(1, 6));
  CHECK(bk_matrix(3, *ctx)(0, 0) == C(1, 10));
  CHECK(christoffel_star(1, *ctx)(0, 0) == C(1, 2));
  const MultiPoly expected[] = {C(1, 1), C(1, 2) * x, C(1, -2) * x * x, C(1, -4) * x.pow(3)};
  for (unsigned m = 0; m < 4; ++m) {
    auto xi = xi_basis(m, *ctx);
    CHECK(xi[0].coeffs[0] == F(expected[m]));
    CHECK(xi[0].degree == static_cast<int>(m));
  }
}

TEST_CASE("A1 with P = x^2 / 4: B^(k) = (k - 1) + 1/2") {
  auto ctx = a1_quarter();
  for (unsigned k = 1; k <= 4; ++k)
    CHECK(bk_matrix(k, *ctx)(0, 0) == C(1, Scalar(static_cast<long>(2 * k - 1), 2)));
  // D[g^11] = 1 for the normalized invariant
  FactoredFraction dg = ctx->apply_D(F(ctx->metric_G()(0, 0)));
  CHECK(dg == F(C(1, 1)));
}

TEST_CASE("frame conversion") {
  auto a1 = builtin("A", 1);
  MultiPoly x = X(1, 0);
  PolyDerivation ddx = make_derivation(Frame::X, {F(C(1, 1))}, *a1);
  PolyDerivation p = frame_convert(ddx, Frame::P, *a1);
  CHECK(p.coeffs[0] == F(C(1, 2) * x));
  CHECK(frame_convert(p, Frame::X, *a1).coeffs[0] == F(C(1, 1)));

  auto b2 = builtin("B", 2);
  PolyDerivation d = frame_convert(primitive_derivation(*b2), Frame::X, *b2);
  CHECK(d.coeffs == dkx(1, *b2));
  for (const auto& xi : xi_basis(1, *b2)) {
    PolyDerivation back = frame_convert(frame_convert(xi, Frame::P, *b2), Frame::X, *b2);
    CHECK(back.coeffs == xi.coeffs);
  }
}

TEST_CASE("nabla_D on A1 and T-linearity on B2") {
  auto a1 = builtin("A", 1);
  PolyDerivation xi1 = xi_basis(1, *a1)[0];
  PolyDerivation n = nabla_D(xi1, *a1);
  CHECK(n.frame == Frame::P);
  CHECK(n.coeffs[0] == F(C(1, 2)));

  auto b2 = builtin("B", 2);
  FactoredFraction p1 = F(b2->invariants().polys()[0]);
  CHECK(b2->apply_D(p1).is_zero());
  for (const auto& xi : xi_basis(3, *b2)) {
    PolyDerivation scaled = xi;
    for (auto& c : scaled.coeffs) c = (c * p1).simplify();
    PolyDerivation lhs = nabla_D(scaled, *b2);
    PolyDerivation rhs = nabla_D(xi, *b2);
    for (auto& c : rhs.coeffs) c = (c * p1).simplify();
    CHECK(lhs.coeffs == rhs.coeffs);
  }
}

TEST_CASE("hk_product in rank one") {
  auto a1 = builtin("A", 1);
  MultiPoly x = X(1, 0);
  CHECK(hk_product(0, *a1)(0, 0) == F(C(1, 1)));
  CHECK(hk_product(1, *a1)(0, 0) == F(C(1, -2) * x * x));
}

TEST_CASE("Lie brackets") {
  auto a1 = builtin("A", 1);
  MultiPoly x = X(1, 0);
  PolyDerivation ddx = make_derivation(Frame::X, {F(C(1, 1))}, *a1);
  PolyDerivation euler = make_derivation(Frame::X, {F(x)}, *a1);
  CHECK(derivation_bracket(ddx, euler, *a1).coeffs[0] == F(C(1, 1)));

  auto b2 = builtin("B", 2);
  PolyDerivation d = primitive_derivation(*b2);
  for (size_t i = 0; i < 2; ++i) {
    PolyDerivation br = derivation_bracket(d, coordinate_field(i, *b2), *b2);
    for (const auto& c : br.coeffs) CHECK(c.is_zero());
  }
}

TEST_CASE("B2 structural values") {
  auto b2 = builtin("B", 2);
  MultiPoly x = X(2, 0), y = X(2, 1);
  CHECK(b2->metric_G()(0, 0) == C(2, 4) * (x * x + y * y));
  CHECK(b2->metric_G() == b2->metric_G().transpose());
  for (unsigned k = 1; k <= 3; ++k) CHECK(bk_matrix(k, *b2)(0, 0).is_zero());
  CHECK(christoffel_star(2, *b2) == bk_matrix(1, *b2));
  auto xi3 = xi_basis(3, *b2);
  CHECK(xi3[0].degree == 5);
  CHECK(xi3[1].degree == 7);
  // gram_A = I, so xi^(1)_j is the gradient of P_j
  auto xi1 = xi_basis(1, *b2);
  for (size_t j = 0; j < 2; ++j)
    for (size_t i = 0; i < 2; ++i) CHECK(xi1[j].coeffs[i] == F(b2->jac_P()(i, j)));
}

TEST_CASE("property: D[P_i] = delta_il and metric symmetry on every built-in") {
  const std::pair<const char*, unsigned> groups[] = {{"A", 1}, {"A", 2}, {"A", 3}, {"B", 2}, {"B", 3},
                                                     {"D", 3}, {"I2", 4}, {"I2", 5}, {"I2", 6}};
  for (const auto& [t, n] : groups) {
    CAPTURE(t);
    CAPTURE(n);
    auto ctx = builtin(t, n);
    const size_t l = ctx->rank();
    for (size_t i = 0; i < l; ++i) {
      FactoredFraction v = ctx->apply_D(F(ctx->invariants().polys()[i]));
      CHECK(v == FactoredFraction::constant(l, Scalar(i + 1 == l ? 1 : 0)));
    }
    CHECK(ctx->metric_G() == ctx->metric_G().transpose());
    auto prod = as_poly_matrix(to_frac_matrix(ctx->jac_P()) * ctx->jac_P_inv());
    REQUIRE(prod);
    CHECK(*prod == identity_poly_matrix(l, l));
  }
}

TEST_CASE("perturbed contexts replace only the injected values") {
  auto b2 = builtin("B", 2);
  Perturbation p;
  PolyMatrix b = bk_matrix(2, *b2);
  b(0, 0) = b(0, 0) + C(2, 1);
  p.bk[2] = b;
  auto q = b2->perturbed(p);
  CHECK(bk_matrix(2, *q)(0, 0) == C(2, 1));
  CHECK(bk_matrix(1, *q) == bk_matrix(1, *b2));
  CHECK(bk_matrix(2, *b2)(0, 0).is_zero());
}
