#include "coxsaito/coxeter.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace coxsaito {

namespace {

// Ascending coefficients of the minimal polynomial of 2cos(pi/(2m)).
const std::map<unsigned, std::vector<long>>& dihedral_table() {
  static const std::map<unsigned, std::vector<long>> table = {
      {3, {-3, 0, 1}},
      {4, {2, 0, -4, 0, 1}},
      {5, {5, 0, -5, 0, 1}},
      {6, {1, 0, -4, 0, 1}},
      {7, {-7, 0, 14, 0, -7, 0, 1}},
      {8, {2, 0, -16, 0, 20, 0, -8, 0, 1}},
      {9, {-3, 0, 9, 0, -6, 0, 1}},
      {10, {1, 0, -12, 0, 19, 0, -8, 0, 1}},
      {11, {-11, 0, 55, 0, -77, 0, 44, 0, -11, 0, 1}},
      {12, {1, 0, -16, 0, 20, 0, -8, 0, 1}},
  };
  return table;
}

// One shared context per m so scalars of separately built data interoperate.
FieldPtr dihedral_field(unsigned m) {
  static std::mutex mu;
  static std::map<unsigned, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  auto f = std::make_shared<const FieldContext>(dihedral_minimal_polynomial(m),
                                                "2cos(pi/" + std::to_string(2 * m) + ")");
  cache.emplace(m, f);
  return f;
}

ScalarMatrix identity_scalar(size_t n) { return ScalarMatrix::identity(n, Scalar(0), Scalar(1)); }

MultiPoly form(const std::vector<Scalar>& a) { return normalize_form(MultiPoly::linear(a)); }

std::vector<Scalar> unit_vec(size_t n, size_t i, long c = 1) {
  std::vector<Scalar> v(n, Scalar(0));
  v[i] = Scalar(c);
  return v;
}

std::vector<Scalar> diff_vec(size_t n, size_t i, size_t j, long sj) {
  std::vector<Scalar> v(n, Scalar(0));
  v[i] = Scalar(1);
  v[j] = Scalar(sj);
  return v;
}

// Power sum of the given linear forms.
MultiPoly power_sum(const std::vector<MultiPoly>& coords, unsigned k) {
  MultiPoly s(coords.front().nvars());
  for (const auto& c : coords) s += c.pow(k);
  return s;
}

[[noreturn]] void invalid(const std::string& what) { throw ValidationError("InvalidDatum", what); }

bool contains_form(const std::vector<MultiPoly>& forms, const MultiPoly& f) {
  return std::find(forms.begin(), forms.end(), f) != forms.end();
}

// Image of a linear form under f -> f(M x): coefficient vector M^T a.
MultiPoly transform_form(const MultiPoly& alpha, const ScalarMatrix& m) { return alpha.subst_linear(m); }

}  // namespace

std::string CoxeterDatum::id() const {
  switch (kind) {
    case GroupKind::I2: return "I2(" + std::to_string(dihedral_m) + ")";
    case GroupKind::Custom: return label;
    default: return label + std::to_string(rank);
  }
}

UPoly dihedral_minimal_polynomial(unsigned m) {
  const auto& t = dihedral_table();
  auto it = t.find(m);
  if (it == t.end()) throw RankOutOfRange("I2(m) preset available for 3 <= m <= 12 only");
  std::vector<mpq_class> c;
  for (long v : it->second) c.emplace_back(v);
  return UPoly(std::move(c));
}

std::vector<Scalar> form_coefficients(const MultiPoly& alpha) {
  std::vector<Scalar> a(alpha.nvars(), Scalar(0));
  for (const auto& t : alpha.terms()) {
    if (t.mono.deg != 1) throw ZeroForm("not a linear form: " + alpha.to_string());
    for (size_t i = 0; i < alpha.nvars(); ++i)
      if (t.mono.e[i]) a[i] = t.coeff;
  }
  return a;
}

MultiPoly normalize_form(const MultiPoly& alpha) {
  if (alpha.is_zero()) throw ZeroForm("hyperplane form is zero");
  std::vector<Scalar> a = form_coefficients(alpha);
  size_t p = 0;
  while (a[p].is_zero()) ++p;
  Scalar inv = a[p].inverse();
  return alpha * inv;
}

ScalarMatrix reflection_matrix(const ScalarMatrix& gram, const std::vector<Scalar>& a) {
  const size_t n = a.size();
  // root vector dual to the form: A a; squared length a^T A a
  std::vector<Scalar> v(n, Scalar(0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) v[i] += gram(i, j) * a[j];
  Scalar len(0);
  for (size_t i = 0; i < n; ++i) len += a[i] * v[i];
  if (len.is_zero()) throw ValidationError("InvalidDatum", "isotropic hyperplane form");
  Scalar c = Scalar(2) / len;
  ScalarMatrix m = identity_scalar(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) m(i, j) -= c * v[i] * a[j];
  return m;
}

void check_datum(const CoxeterDatum& d) {
  const size_t l = d.rank;
  if (l < 1 || l > kMaxVars) invalid("rank must be between 1 and " + std::to_string(kMaxVars));
  if (d.gram_A.rows() != l || d.gram_A.cols() != l) invalid("Gram matrix has wrong shape");
  if (!(d.gram_A == d.gram_A.transpose())) invalid("Gram matrix is not symmetric");
  if (determinant(d.gram_A).is_zero()) invalid("Gram matrix is singular");
  if (d.exponents.size() != l) invalid("need one exponent per coordinate");
  if (!std::is_sorted(d.exponents.begin(), d.exponents.end())) invalid("exponents must be ascending");
  if (d.coxeter_number != d.exponents.back() + 1) invalid("Coxeter number must equal m_l + 1");
  unsigned sum = std::accumulate(d.exponents.begin(), d.exponents.end(), 0u);
  if (d.hyperplane_forms.size() != sum) invalid("number of hyperplanes must equal the sum of exponents");
  if (2 * sum != l * d.coxeter_number) invalid("number of hyperplanes must equal l h / 2");
  for (const auto& f : d.hyperplane_forms) {
    if (f.nvars() != l || f.total_degree() != 1u || !f.is_homogeneous()) invalid("hyperplane forms must be linear");
    if (!(normalize_form(f) == f)) invalid("hyperplane form not normalized: " + f.to_string());
  }
  for (size_t i = 0; i < d.hyperplane_forms.size(); ++i)
    for (size_t j = i + 1; j < d.hyperplane_forms.size(); ++j)
      if (d.hyperplane_forms[i] == d.hyperplane_forms[j]) invalid("duplicate hyperplane form");
  if (d.generators.empty()) invalid("at least one generator required");
  ScalarMatrix id = identity_scalar(l);
  for (size_t g = 0; g < d.generators.size(); ++g) {
    const auto& m = d.generators[g];
    std::string tag = "generator " + std::to_string(g + 1);
    if (m.rows() != l || m.cols() != l) invalid(tag + " has wrong shape");
    if (!(m * m == id)) invalid(tag + " is not an involution");
    if (!(m * d.gram_A * m.transpose() == d.gram_A)) invalid(tag + " does not preserve the Gram matrix");
    for (const auto& f : d.hyperplane_forms)
      if (!contains_form(d.hyperplane_forms, normalize_form(transform_form(f, m))))
        invalid(tag + " does not permute the arrangement");
  }
}

CoxeterDatum make_custom_datum(std::string label, FieldPtr field, ScalarMatrix gram_A,
                               std::vector<MultiPoly> hyperplane_forms, std::vector<ScalarMatrix> generators,
                               std::vector<unsigned> exponents) {
  CoxeterDatum d;
  d.kind = GroupKind::Custom;
  d.label = std::move(label);
  d.rank = gram_A.rows();
  d.field = std::move(field);
  d.gram_A = std::move(gram_A);
  for (auto& f : hyperplane_forms) d.hyperplane_forms.push_back(normalize_form(f));
  d.generators = std::move(generators);
  d.exponents = std::move(exponents);
  if (!d.exponents.empty()) d.coxeter_number = d.exponents.back() + 1;
  check_datum(d);
  return d;
}

CoxeterDatum build_datum(const std::string& type_label, unsigned n) {
  CoxeterDatum d;
  d.label = type_label;
  if (type_label == "A") {
    if (n < 1 || n > kMaxVars) throw RankOutOfRange("A_l requires 1 <= l <= 8");
    const size_t l = n;
    d.kind = GroupKind::A;
    d.rank = l;
    if (l == 1) {
      // A1 on the line with an orthonormal coordinate.
      d.gram_A = identity_scalar(1);
      d.hyperplane_forms = {MultiPoly::variable(1, 0)};
    } else {
      // X_i = x_i restricted to x_1 + ... + x_{l+1} = 0
      d.gram_A = ScalarMatrix(l, l, Scalar(0));
      for (size_t i = 0; i < l; ++i)
        for (size_t j = 0; j < l; ++j)
          d.gram_A(i, j) = Scalar(i == j ? 1 : 0) - Scalar(1, static_cast<long>(l) + 1);
      for (size_t i = 0; i < l; ++i)
        for (size_t j = i + 1; j < l; ++j) d.hyperplane_forms.push_back(form(diff_vec(l, i, j, -1)));
      for (size_t i = 0; i < l; ++i) {
        // x_i - x_{l+1} = X_i + sum_j X_j
        std::vector<Scalar> a(l, Scalar(1));
        a[i] = Scalar(2);
        d.hyperplane_forms.push_back(form(a));
      }
    }
    for (unsigned j = 1; j <= l; ++j) d.exponents.push_back(j);
    // simple roots x_i - x_{i+1}
    for (size_t i = 0; i + 1 < l; ++i) d.generators.push_back(reflection_matrix(d.gram_A, diff_vec(l, i, i + 1, -1)));
    if (l == 1) {
      d.generators.push_back(reflection_matrix(d.gram_A, unit_vec(1, 0)));
    } else {
      std::vector<Scalar> a(l, Scalar(1));
      a[l - 1] = Scalar(2);
      d.generators.push_back(reflection_matrix(d.gram_A, a));
    }
  } else if (type_label == "B") {
    if (n < 1 || n > kMaxVars) throw RankOutOfRange("B_l requires 1 <= l <= 8");
    const size_t l = n;
    d.kind = GroupKind::B;
    d.rank = l;
    d.gram_A = identity_scalar(l);
    for (size_t i = 0; i < l; ++i) d.hyperplane_forms.push_back(form(unit_vec(l, i)));
    for (size_t i = 0; i < l; ++i)
      for (size_t j = i + 1; j < l; ++j) {
        d.hyperplane_forms.push_back(form(diff_vec(l, i, j, -1)));
        d.hyperplane_forms.push_back(form(diff_vec(l, i, j, 1)));
      }
    for (unsigned j = 1; j <= l; ++j) d.exponents.push_back(2 * j - 1);
    for (size_t i = 0; i + 1 < l; ++i) d.generators.push_back(reflection_matrix(d.gram_A, diff_vec(l, i, i + 1, -1)));
    d.generators.push_back(reflection_matrix(d.gram_A, unit_vec(l, l - 1)));
  } else if (type_label == "D") {
    if (n < 3 || n > kMaxVars) throw RankOutOfRange("D_l requires 3 <= l <= 8 (D_2 is reducible)");
    const size_t l = n;
    d.kind = GroupKind::D;
    d.rank = l;
    d.gram_A = identity_scalar(l);
    for (size_t i = 0; i < l; ++i)
      for (size_t j = i + 1; j < l; ++j) {
        d.hyperplane_forms.push_back(form(diff_vec(l, i, j, -1)));
        d.hyperplane_forms.push_back(form(diff_vec(l, i, j, 1)));
      }
    for (unsigned j = 1; j < l; ++j) d.exponents.push_back(2 * j - 1);
    d.exponents.push_back(static_cast<unsigned>(l) - 1);
    std::sort(d.exponents.begin(), d.exponents.end());
    for (size_t i = 0; i + 1 < l; ++i) d.generators.push_back(reflection_matrix(d.gram_A, diff_vec(l, i, i + 1, -1)));
    d.generators.push_back(reflection_matrix(d.gram_A, diff_vec(l, l - 2, l - 1, 1)));
  } else if (type_label == "I2") {
    const unsigned m = n;
    if (m < 3) throw RankOutOfRange("I2(m) requires m >= 3");
    d.kind = GroupKind::I2;
    d.rank = 2;
    d.dihedral_m = m;
    d.field = dihedral_field(m);
    const FieldContext* f = d.field.get();
    d.gram_A = identity_scalar(2);
    // C_k(t) = 2cos(k pi/(2m)) via C_{k+1} = t C_k - C_{k-1}
    Scalar t = Scalar::generator(f);
    std::vector<Scalar> c = {Scalar(2), t};
    for (unsigned k = 2; k <= 2 * m; ++k) c.push_back(t * c[k - 1] - c[k - 2]);
    auto cos_k = [&](unsigned k) { return c[2 * k] / Scalar(2); };  // cos(k pi/m)
    auto sin_k = [&](unsigned k) {                                  // sin(k pi/m)
      int idx = static_cast<int>(m) - 2 * static_cast<int>(k);
      return c[static_cast<size_t>(std::abs(idx))] / Scalar(2);
    };
    // mirror k is the line at angle k pi/m: kernel of -sin x + cos y
    std::vector<std::vector<Scalar>> coeffs;
    for (unsigned k = 0; k < m; ++k) {
      coeffs.push_back({-sin_k(k), cos_k(k)});
      d.hyperplane_forms.push_back(form(coeffs.back()));
    }
    d.exponents = {1, m - 1};
    d.generators.push_back(reflection_matrix(d.gram_A, coeffs[0]));
    d.generators.push_back(reflection_matrix(d.gram_A, coeffs[1]));
  } else {
    throw UnsupportedType("unsupported Coxeter type '" + type_label + "' (built-ins: A, B, D, I2)");
  }
  d.coxeter_number = d.exponents.back() + 1;
  check_datum(d);
  return d;
}

MultiPoly anti_invariant_Q(const CoxeterDatum& d) {
  MultiPoly q = MultiPoly::constant(d.rank, Scalar(1));
  for (const auto& f : d.hyperplane_forms) q = q * f;
  return q;
}

BasicInvariants builtin_invariants(const CoxeterDatum& d) {
  const size_t l = d.rank;
  std::vector<MultiPoly> x;
  for (size_t i = 0; i < l; ++i) x.push_back(MultiPoly::variable(l, i));
  std::vector<MultiPoly> p;
  switch (d.kind) {
    case GroupKind::A: {
      if (l == 1) {
        p.push_back(x[0] * x[0]);
        break;
      }
      std::vector<MultiPoly> coords = x;
      MultiPoly last(l);
      for (const auto& xi : x) last -= xi;
      coords.push_back(last);
      for (unsigned k = 2; k <= l + 1; ++k) p.push_back(power_sum(coords, k));
      break;
    }
    case GroupKind::B:
      for (unsigned k = 1; k <= l; ++k) p.push_back(power_sum(x, 2 * k));
      break;
    case GroupKind::D: {
      for (unsigned k = 1; k + 1 <= l; ++k) p.push_back(power_sum(x, 2 * k));
      MultiPoly e = MultiPoly::constant(l, Scalar(1));
      for (const auto& xi : x) e = e * xi;
      p.push_back(e);
      std::stable_sort(p.begin(), p.end(),
                       [](const MultiPoly& a, const MultiPoly& b) { return *a.total_degree() < *b.total_degree(); });
      break;
    }
    case GroupKind::I2: {
      const unsigned m = d.dihedral_m;
      p.push_back(x[0] * x[0] + x[1] * x[1]);
      // Re (x + i y)^m = sum_{j even} C(m, j) (-1)^(j/2) x^(m-j) y^j
      std::vector<Term> terms;
      mpz_class binom = 1;
      for (unsigned j = 0; j <= m; ++j) {
        if (j > 0) binom = binom * (m - j + 1) / j;
        if (j % 2) continue;
        Monomial mono;
        mono.e[0] = static_cast<uint16_t>(m - j);
        mono.e[1] = static_cast<uint16_t>(j);
        mono.deg = m;
        mpq_class c(binom);
        if ((j / 2) % 2) c = -c;
        terms.push_back({mono, Scalar(c)});
      }
      p.push_back(MultiPoly(2, std::move(terms)));
      break;
    }
    case GroupKind::Custom:
      throw UnsupportedType("custom groups need user-supplied invariants");
  }
  return validate_invariants(d, std::move(p));
}

BasicInvariants validate_invariants(const CoxeterDatum& d, std::vector<MultiPoly> candidates) {
  const size_t l = d.rank;
  if (candidates.size() != l)
    throw ValidationError("WrongDegrees", "expected " + std::to_string(l) + " invariants, got " +
                                              std::to_string(candidates.size()));
  for (const auto& p : candidates)
    if (p.nvars() != l) throw ValidationError("WrongDegrees", "invariant in the wrong number of variables");
  for (size_t g = 0; g < d.generators.size(); ++g)
    for (size_t j = 0; j < l; ++j)
      if (!(candidates[j].subst_linear(d.generators[g]) == candidates[j]))
        throw ValidationError("NotInvariant", "P_" + std::to_string(j + 1) + " is not invariant under generator " +
                                                  std::to_string(g + 1));
  for (size_t j = 0; j < l; ++j) {
    const auto& p = candidates[j];
    if (p.is_zero() || !p.is_homogeneous() || *p.total_degree() != d.exponents[j] + 1)
      throw ValidationError("WrongDegrees", "P_" + std::to_string(j + 1) + " must be homogeneous of degree " +
                                                std::to_string(d.exponents[j] + 1));
  }
  PolyMatrix jac(l, l, MultiPoly(l));
  for (size_t i = 0; i < l; ++i)
    for (size_t j = 0; j < l; ++j) jac(i, j) = candidates[j].partial(i);
  MultiPoly det = determinant(jac);
  if (det.is_zero()) throw ValidationError("JacobianCriterionFailed", "det J(P) = 0 (dependent invariants)");
  MultiPoly rest = det;
  for (const auto& a : d.hyperplane_forms) {
    auto q = exact_divide(rest, a);
    if (!q)
      throw ValidationError("JacobianCriterionFailed",
                            "det J(P) is not divisible by the hyperplane form " + a.to_string());
    rest = std::move(*q);
  }
  if (!rest.is_constant())
    throw ValidationError("JacobianCriterionFailed", "det J(P) / Q = " + rest.to_string() + " is not constant");
  BasicInvariants b;
  b.polys_ = std::move(candidates);
  b.jac_const_ = rest.constant_term();
  b.validated_ = true;
  return b;
}

std::vector<mpq_class> RationalFunction::series(size_t n) const {
  if (den.coeff(0) == 0) throw DivisionByZero("power series of a rational function with den(0) = 0");
  std::vector<mpq_class> s(n);
  mpq_class d0 = den.coeff(0);
  for (size_t k = 0; k < n; ++k) {
    mpq_class acc = num.coeff(static_cast<int>(k));
    for (size_t i = 1; i <= k; ++i) acc -= den.coeff(static_cast<int>(i)) * s[k - i];
    s[k] = acc / d0;
  }
  return s;
}

RationalFunction poincare_closed_form(const std::vector<unsigned>& generator_degrees,
                                      const std::vector<unsigned>& ring_degrees) {
  RationalFunction r;
  for (unsigned g : generator_degrees) r.num = r.num + UPoly::monomial(1, static_cast<int>(g));
  r.den = UPoly::constant(1);
  for (unsigned d : ring_degrees) r.den = r.den * (UPoly::constant(1) - UPoly::monomial(1, static_cast<int>(d)));
  return r;
}

}  // namespace coxsaito
