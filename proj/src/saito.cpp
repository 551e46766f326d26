#include "coxsaito/saito.hpp"

#include <sstream>

namespace coxsaito {

namespace {

FracMatrix mul_simplified(const FracMatrix& a, const FracMatrix& b) { return simplify(a * b); }

PolyMatrix certify(const FracMatrix& m, const std::string& what) {
  std::pair<size_t, size_t> bad;
  auto p = as_poly_matrix(m, &bad);
  if (!p) {
    std::ostringstream os;
    os << what << " entry (" << bad.first + 1 << "," << bad.second + 1
       << ") is not a polynomial: " << m(bad.first, bad.second).simplify().to_string();
    throw NonPolynomialEntry(os.str());
  }
  return *p;
}

FracMatrix frac_identity(size_t n, size_t nv) { return to_frac_matrix(identity_poly_matrix(n, nv)); }

}  // namespace

template <class V, class F>
const V& SaitoContext::cached(Cache<V>& c, unsigned key, F&& compute) const {
  {
    std::lock_guard<std::mutex> lk(c.mu);
    auto it = c.values.find(key);
    if (it != c.values.end()) return it->second;
  }
  // Computed outside the lock so recursive fills (D^k needs D^(k-1)) work.
  // A concurrent fill of the same key produces the same value; first wins.
  V v = compute();
  std::lock_guard<std::mutex> lk(c.mu);
  return c.values.emplace(key, std::move(v)).first->second;
}

template <class V>
void SaitoContext::copy_cache(const Cache<V>& from, Cache<V>& to) {
  std::lock_guard<std::mutex> lk(const_cast<std::mutex&>(from.mu));
  to.values = from.values;
}

std::shared_ptr<const SaitoContext> SaitoContext::build(CoxeterDatum datum, BasicInvariants invariants) {
  if (!invariants.validated()) throw ValidationError("InvalidDatum", "invariants were not validated");
  std::shared_ptr<SaitoContext> c(new SaitoContext());
  c->datum_ = std::move(datum);
  c->inv_ = std::move(invariants);
  const size_t l = c->datum_.rank;
  const auto& p = c->inv_.polys();
  c->q_ = anti_invariant_Q(c->datum_);
  c->jac_ = PolyMatrix(l, l, MultiPoly(l));
  for (size_t i = 0; i < l; ++i)
    for (size_t j = 0; j < l; ++j) c->jac_(i, j) = p[j].partial(i);
  c->jac_inv_ = adjugate_inverse(c->jac_, c->primes());
  c->gram_poly_ = to_poly_matrix(c->datum_.gram_A, l);
  c->metric_ = c->jac_.transpose() * c->gram_poly_ * c->jac_;
  c->d_of_x_.reserve(l);
  for (size_t i = 0; i < l; ++i) c->d_of_x_.push_back(c->jac_inv_(l - 1, i));
  return c;
}

std::shared_ptr<const SaitoContext> SaitoContext::perturbed(const Perturbation& p) const {
  std::shared_ptr<SaitoContext> c(new SaitoContext());
  c->datum_ = datum_;
  c->inv_ = inv_;
  c->q_ = q_;
  c->jac_ = jac_;
  c->jac_inv_ = jac_inv_;
  c->metric_ = p.metric_G ? *p.metric_G : metric_;
  c->gram_poly_ = gram_poly_;
  c->d_of_x_ = d_of_x_;
  copy_cache(dkx_, c->dkx_);
  copy_cache(jac_dkx_, c->jac_dkx_);
  copy_cache(jac_dkx_inv_, c->jac_dkx_inv_);
  copy_cache(bk_, c->bk_);
  copy_cache(gamma_star_, c->gamma_star_);
  copy_cache(xi_, c->xi_);
  if (!p.metric_G) copy_cache(misc_, c->misc_);
  for (const auto& [k, m] : p.bk) c->bk_.values.insert_or_assign(k, m);
  for (const auto& [k, m] : p.xi) c->xi_.values.insert_or_assign(k, m);
  return c;
}

FactoredFraction SaitoContext::apply_D(const FactoredFraction& f) const {
  FactoredFraction acc(rank());
  for (size_t i = 0; i < rank(); ++i) {
    FactoredFraction d = f.partial(i);
    if (!d.is_zero()) acc += d_of_x_[i] * d;
  }
  return acc.simplify();
}

FracMatrix SaitoContext::apply_D(const FracMatrix& m) const {
  return m.map([this](const FactoredFraction& x) { return apply_D(x); });
}

FactoredFraction SaitoContext::apply_dP(size_t k, const FactoredFraction& f) const {
  FactoredFraction acc(rank());
  for (size_t i = 0; i < rank(); ++i) {
    FactoredFraction d = f.partial(i);
    if (!d.is_zero() && !jac_inv_(k, i).is_zero()) acc += jac_inv_(k, i) * d;
  }
  return acc.simplify();
}

const std::vector<FactoredFraction>& SaitoContext::dkx(unsigned k) const {
  return cached(dkx_, k, [&] {
    std::vector<FactoredFraction> out;
    if (k == 0) {
      for (size_t i = 0; i < rank(); ++i) out.emplace_back(MultiPoly::variable(rank(), i));
      return out;
    }
    for (const auto& f : dkx(k - 1)) out.push_back(apply_D(f));
    return out;
  });
}

void SaitoContext::preload_dkx(unsigned k, std::vector<FactoredFraction> v) const {
  if (v.size() != rank()) throw DimensionMismatch("preload_dkx: expected " + std::to_string(rank()) + " entries");
  std::lock_guard<std::mutex> lk(dkx_.mu);
  dkx_.values.emplace(k, std::move(v));
}

std::vector<unsigned> SaitoContext::cached_dkx_orders() const {
  std::lock_guard<std::mutex> lk(dkx_.mu);
  std::vector<unsigned> out;
  for (const auto& kv : dkx_.values) out.push_back(kv.first);
  return out;
}

const FracMatrix& SaitoContext::jac_dkx(unsigned k) const {
  return cached(jac_dkx_, k, [&] {
    const auto& v = dkx(k);
    const size_t l = rank();
    FracMatrix j(l, l, FactoredFraction(l));
    for (size_t a = 0; a < l; ++a)
      for (size_t b = 0; b < l; ++b) j(a, b) = v[b].partial(a).simplify();
    return j;
  });
}

const FracMatrix& SaitoContext::jac_dkx_inv(unsigned k) const {
  return cached(jac_dkx_inv_, k, [&] {
    if (k == 0) return frac_identity(rank(), rank());
    // Unwinding the definition of B^(k) gives the candidate
    //   J(D^k X)^{-1} = -J(D^{k-1} X)^{-1} J(P) (B^(k))^{-1} J(P)^T A,
    // whose inverse factor is cheap because det B^(k) is constant.  The
    // candidate is only accepted after exact multiplication back to I;
    // otherwise fall back to the adjugate.
    const size_t l = rank();
    try {
      FracMatrix binv = adjugate_inverse(bk(k), primes());
      FracMatrix cand = mul_simplified(jac_dkx_inv(k - 1), to_frac_matrix(jac_));
      cand = mul_simplified(cand, binv);
      cand = -mul_simplified(cand, to_frac_matrix(jac_.transpose() * gram_poly_));
      auto prod = as_poly_matrix(jac_dkx(k) * cand);
      if (prod && *prod == identity_poly_matrix(l, l)) return cand;
    } catch (const Error&) {
    }
    return adjugate_inverse(jac_dkx(k), primes());
  });
}

const PolyMatrix& SaitoContext::bk(unsigned k) const {
  return cached(bk_, k, [&] {
    if (k == 0) return identity_poly_matrix(rank(), rank());
    FracMatrix m = to_frac_matrix(jac_.transpose() * gram_poly_);
    m = mul_simplified(m, jac_dkx(k));
    m = mul_simplified(m, jac_dkx_inv(k - 1));
    m = mul_simplified(m, to_frac_matrix(jac_));
    return certify(-m, "B^(" + std::to_string(k) + ")");
  });
}

const PolyMatrix& SaitoContext::christoffel_star(unsigned k) const {
  if (k < 1 || k > rank()) throw DimensionMismatch("Christoffel index out of range");
  return cached(gamma_star_, k, [&] {
    const size_t l = rank();
    FracMatrix d(l, l, FactoredFraction(l));
    for (size_t a = 0; a < l; ++a)
      for (size_t b = 0; b < l; ++b) d(a, b) = apply_dP(k - 1, FactoredFraction(jac_(a, b)));
    FracMatrix m = mul_simplified(to_frac_matrix(jac_.transpose() * gram_poly_), d);
    return certify(m, "Gamma*_" + std::to_string(k));
  });
}

const FracMatrix& SaitoContext::metric_inverse() const {
  return cached(misc_, 1, [&] { return adjugate_inverse(metric_, primes()); });
}

const FracMatrix& SaitoContext::connection_l_transposed() const {
  return cached(misc_, 0, [&] {
    FracMatrix g = mul_simplified(metric_inverse(), to_frac_matrix(christoffel_star(rank())));
    return (-g).transpose();
  });
}

const PolyMatrix& SaitoContext::xi_coeffs(unsigned m) const {
  return cached(xi_, m, [&] {
    FracMatrix c = mul_simplified(to_frac_matrix(gram_poly_), jac_dkx_inv(m / 2));
    if (m % 2 == 1) c = mul_simplified(c, to_frac_matrix(jac_));
    return certify(c, "xi^(" + std::to_string(m) + ")");
  });
}

ContextPtr build_context(CoxeterDatum datum, BasicInvariants invariants) {
  return SaitoContext::build(std::move(datum), std::move(invariants));
}

PolyDerivation make_derivation(Frame frame, std::vector<FactoredFraction> coeffs, const SaitoContext& ctx) {
  if (coeffs.size() != ctx.rank()) throw DimensionMismatch("derivation needs one coefficient per coordinate");
  PolyDerivation d;
  d.frame = frame;
  d.coeffs = std::move(coeffs);
  std::optional<int> deg;
  bool ok = true;
  for (size_t i = 0; i < d.coeffs.size() && ok; ++i) {
    if (d.coeffs[i].is_zero()) continue;
    auto q = d.coeffs[i].degree();
    if (!q) {
      ok = false;
      break;
    }
    // theta(X_j) has degree q when coefficients on d/dP_i have degree q + m_i
    int shift = frame == Frame::X ? 0 : static_cast<int>(ctx.datum().exponents[i]);
    int this_deg = *q - shift;
    if (deg && *deg != this_deg) ok = false;
    deg = this_deg;
  }
  if (ok) d.degree = deg;
  return d;
}

PolyDerivation derivation_from_column(Frame frame, const FracMatrix& coeffs, size_t j, const SaitoContext& ctx) {
  return make_derivation(frame, coeffs.column(j), ctx);
}

PolyDerivation frame_convert(const PolyDerivation& theta, Frame target, const SaitoContext& ctx) {
  if (theta.frame == target) return theta;
  const size_t l = ctx.rank();
  std::vector<FactoredFraction> out(l, FactoredFraction(l));
  for (size_t a = 0; a < l; ++a) {
    FactoredFraction acc(l);
    for (size_t b = 0; b < l; ++b) {
      if (theta.coeffs[b].is_zero()) continue;
      if (target == Frame::P)
        acc += FactoredFraction(ctx.jac_P()(b, a)) * theta.coeffs[b];
      else
        acc += ctx.jac_P_inv()(b, a) * theta.coeffs[b];
    }
    out[a] = acc.simplify();
  }
  return make_derivation(target, std::move(out), ctx);
}

FactoredFraction derivation_apply(const PolyDerivation& theta, const FactoredFraction& f, const SaitoContext& ctx) {
  const size_t l = ctx.rank();
  FactoredFraction acc(l);
  for (size_t i = 0; i < l; ++i) {
    if (theta.coeffs[i].is_zero()) continue;
    FactoredFraction d = theta.frame == Frame::X ? f.partial(i) : ctx.apply_dP(i, f);
    if (!d.is_zero()) acc += theta.coeffs[i] * d;
  }
  return acc.simplify();
}

FactoredFraction primitive_derivation_apply(const FactoredFraction& f, const SaitoContext& ctx) {
  return ctx.apply_D(f);
}

const std::vector<FactoredFraction>& dkx(unsigned k, const SaitoContext& ctx) { return ctx.dkx(k); }
const PolyMatrix& bk_matrix(unsigned k, const SaitoContext& ctx) { return ctx.bk(k); }
const PolyMatrix& christoffel_star(unsigned k, const SaitoContext& ctx) { return ctx.christoffel_star(k); }

PolyDerivation nabla_D(const PolyDerivation& theta, const SaitoContext& ctx) {
  PolyDerivation t = frame_convert(theta, Frame::P, ctx);
  const size_t l = ctx.rank();
  const FracMatrix& gt = ctx.connection_l_transposed();
  std::vector<FactoredFraction> out;
  out.reserve(l);
  for (size_t i = 0; i < l; ++i) {
    FactoredFraction acc = ctx.apply_D(t.coeffs[i]);
    for (size_t j = 0; j < l; ++j)
      if (!t.coeffs[j].is_zero() && !gt(i, j).is_zero()) acc += gt(i, j) * t.coeffs[j];
    out.push_back(acc.simplify());
  }
  return make_derivation(Frame::P, std::move(out), ctx);
}

std::vector<PolyDerivation> xi_basis(unsigned m, const SaitoContext& ctx) {
  FracMatrix c = to_frac_matrix(ctx.xi_coeffs(m));
  std::vector<PolyDerivation> out;
  for (size_t j = 0; j < ctx.rank(); ++j) out.push_back(derivation_from_column(Frame::X, c, j, ctx));
  return out;
}

FracMatrix hk_product(unsigned k, const SaitoContext& ctx) {
  const size_t l = ctx.rank();
  FracMatrix h = frac_identity(l, l);
  FracMatrix g = to_frac_matrix(ctx.metric_G());
  for (unsigned i = 1; i <= k; ++i) {
    h = mul_simplified(h, adjugate_inverse(ctx.bk(i), ctx.primes()));
    h = mul_simplified(h, g);
  }
  return k % 2 == 1 ? -h : h;
}

PolyDerivation derivation_bracket(const PolyDerivation& theta, const PolyDerivation& eta, const SaitoContext& ctx) {
  PolyDerivation t = frame_convert(theta, Frame::X, ctx);
  PolyDerivation e = frame_convert(eta, Frame::X, ctx);
  std::vector<FactoredFraction> out;
  for (size_t i = 0; i < ctx.rank(); ++i)
    out.push_back((derivation_apply(t, e.coeffs[i], ctx) - derivation_apply(e, t.coeffs[i], ctx)).simplify());
  return make_derivation(Frame::X, std::move(out), ctx);
}

PolyDerivation coordinate_field(size_t i, const SaitoContext& ctx) {
  const size_t l = ctx.rank();
  std::vector<FactoredFraction> c(l, FactoredFraction(l));
  c[i] = FactoredFraction::constant(l, Scalar(1));
  return make_derivation(Frame::P, std::move(c), ctx);
}

PolyDerivation primitive_derivation(const SaitoContext& ctx) { return coordinate_field(ctx.rank() - 1, ctx); }

bool derivation_is_invariant(const PolyDerivation& theta, const ScalarMatrix& m) {
  if (theta.frame != Frame::X) throw DimensionMismatch("invariance is checked on X-frame derivations");
  const size_t l = theta.coeffs.size();
  ScalarMatrix minv = inverse(m);
  for (size_t i = 0; i < l; ++i) {
    FactoredFraction rhs(l);
    for (size_t j = 0; j < l; ++j)
      if (!minv(i, j).is_zero()) rhs += theta.coeffs[j] * minv(i, j);
    if (theta.coeffs[i].subst_linear(m) != rhs) return false;
  }
  return true;
}

FracMatrix to_p_frame(const FracMatrix& x_coeffs, const SaitoContext& ctx) {
  return mul_simplified(to_frac_matrix(ctx.jac_P().transpose()), x_coeffs);
}

}  // namespace coxsaito
