#include "coxsaito/fraction.hpp"

#include <algorithm>
#include <cstdint>

namespace coxsaito {

namespace {

bool is_linear_form(const MultiPoly& f) { return f.total_degree() == 1u && f.is_homogeneous(); }

// A point on the hyperplane prime = 0 with "generic" integer coordinates.
std::vector<Scalar> point_on_hyperplane(const MultiPoly& prime) {
  const size_t n = prime.nvars();
  static const long kCoords[] = {7, -3, 11, 5, -13, 17, 2, -19};
  std::vector<Scalar> a(n, Scalar(0));
  for (const auto& t : prime.terms())
    for (size_t i = 0; i < n; ++i)
      if (t.mono.e[i]) a[i] = t.coeff;
  size_t p = 0;
  while (a[p].is_zero()) ++p;
  std::vector<Scalar> v(n);
  Scalar s(0);
  for (size_t i = 0; i < n; ++i) {
    if (i == p) continue;
    v[i] = Scalar(kCoords[i % 8] + static_cast<long>(i));
    s += a[i] * v[i];
  }
  v[p] = -(s / a[p]);
  return v;
}

// Evaluation modulo the Mersenne prime 2^61 - 1.  Only rational data can be
// reduced; nullopt whenever a denominator vanishes mod p or a coefficient
// lies in a proper extension.
constexpr uint64_t kModP = (uint64_t{1} << 61) - 1;

uint64_t mulmod(uint64_t a, uint64_t b) {
  unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
  uint64_t lo = static_cast<uint64_t>(r & kModP), hi = static_cast<uint64_t>(r >> 61);
  uint64_t s = lo + hi;
  return s >= kModP ? s - kModP : s;
}

uint64_t powmod(uint64_t a, uint64_t e) {
  uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

std::optional<uint64_t> reduce_scalar(const Scalar& s) {
  if (!s.is_rational()) return std::nullopt;
  const mpq_class& q = s.rational_part();
  uint64_t den = mpz_fdiv_ui(q.get_den_mpz_t(), kModP);
  if (den == 0) return std::nullopt;
  uint64_t num = mpz_fdiv_ui(q.get_num_mpz_t(), kModP);
  return mulmod(num, powmod(den, kModP - 2));
}

std::optional<std::vector<uint64_t>> reduce_point(const std::vector<Scalar>& pt) {
  std::vector<uint64_t> out;
  for (const auto& s : pt) {
    auto r = reduce_scalar(s);
    if (!r) return std::nullopt;
    out.push_back(*r);
  }
  return out;
}

std::optional<uint64_t> evaluate_mod(const MultiPoly& f, const std::vector<uint64_t>& pt) {
  const size_t n = f.nvars();
  std::vector<std::vector<uint64_t>> powers(n, std::vector<uint64_t>{1});
  uint64_t acc = 0;
  for (const auto& t : f.terms()) {
    auto c = reduce_scalar(t.coeff);
    if (!c) return std::nullopt;
    uint64_t v = *c;
    for (size_t i = 0; i < n; ++i) {
      unsigned e = t.mono.e[i];
      if (!e) continue;
      auto& p = powers[i];
      while (p.size() <= e) p.push_back(mulmod(p.back(), pt[i]));
      v = mulmod(v, p[e]);
    }
    acc += v;
    if (acc >= kModP) acc -= kModP;
  }
  return acc;
}

}  // namespace

std::pair<MultiPoly, unsigned> strip_linear_factor(const MultiPoly& f, const MultiPoly& prime,
                                                   unsigned max_power) {
  MultiPoly cur = f;
  unsigned k = 0;
  if (f.is_zero()) return {cur, 0};
  std::vector<Scalar> pt = point_on_hyperplane(prime);
  auto pt_mod = reduce_point(pt);
  while (k < max_power && !cur.is_constant()) {
    // A nonzero residue proves the value is nonzero; otherwise fall back to
    // the exact test before dividing.
    if (pt_mod) {
      auto r = evaluate_mod(cur, *pt_mod);
      if (r && *r != 0) break;
      if (!r && !cur.evaluate(pt).is_zero()) break;
    } else if (!cur.evaluate(pt).is_zero()) {
      break;
    }
    auto q = exact_divide(cur, prime);
    if (!q) break;
    cur = std::move(*q);
    ++k;
  }
  return {cur, k};
}

std::pair<MultiPoly, unsigned> strip_linear_factor(const MultiPoly& f, const MultiPoly& prime) {
  return strip_linear_factor(f, prime, ~0u);
}

TrialFactorization trial_factor(const MultiPoly& f, const std::vector<MultiPoly>& primes) {
  if (f.is_zero()) throw DivisionByZero("trial_factor of zero");
  TrialFactorization out;
  MultiPoly cur = f;
  for (const auto& p0 : primes) {
    if (cur.is_constant()) break;
    MultiPoly p = p0.monic().first;
    unsigned k = 0;
    if (is_linear_form(p)) {
      auto [q, m] = strip_linear_factor(cur, p);
      cur = std::move(q);
      k = m;
    } else {
      while (!cur.is_constant()) {
        auto q = exact_divide(cur, p);
        if (!q) break;
        cur = std::move(*q);
        ++k;
      }
    }
    if (k) out.factors.emplace_back(p, k);
  }
  auto [m, lc] = cur.monic();
  out.unit = lc;
  out.rest = m;
  return out;
}

FactoredFraction::FactoredFraction(MultiPoly numerator) : num_(std::move(numerator)) {}

FactoredFraction::FactoredFraction(MultiPoly numerator, const Scalar& denominator_scalar,
                                   std::vector<Factor> factors)
    : num_(std::move(numerator)) {
  if (denominator_scalar.is_zero()) throw DivisionByZero("fraction with zero denominator scalar");
  if (!denominator_scalar.is_one()) num_ = num_ * denominator_scalar.inverse();
  factors_ = std::move(factors);
  normalize_factors();
}

void FactoredFraction::normalize_factors() {
  if (num_.is_zero()) {
    factors_.clear();
    return;
  }
  std::vector<Factor> out;
  Scalar fold(1);
  for (auto& [f, e] : factors_) {
    if (e == 0) continue;
    if (f.is_zero()) throw DivisionByZero("zero denominator factor");
    if (f.is_constant()) {
      fold *= f.constant_term().pow(e);
      continue;
    }
    auto [m, lc] = f.monic();
    if (!lc.is_one()) fold *= lc.pow(e);
    auto it = std::find_if(out.begin(), out.end(), [&](const Factor& g) { return g.first == m; });
    if (it != out.end())
      it->second += e;
    else
      out.emplace_back(std::move(m), e);
  }
  if (!fold.is_one()) num_ = num_ * fold.inverse();
  factors_ = std::move(out);
}

MultiPoly FactoredFraction::denominator() const {
  MultiPoly d = MultiPoly::constant(nvars(), Scalar(1));
  for (const auto& [f, e] : factors_) d = d * f.pow(e);
  return d;
}

std::optional<MultiPoly> FactoredFraction::as_polynomial() const {
  if (!factors_.empty()) return std::nullopt;
  return num_;
}

namespace {

unsigned exponent_of(const std::vector<FactoredFraction::Factor>& fs, const MultiPoly& f) {
  for (const auto& [g, e] : fs)
    if (g == f) return e;
  return 0;
}

bool same_factors(const std::vector<FactoredFraction::Factor>& a,
                  const std::vector<FactoredFraction::Factor>& b) {
  if (a.size() != b.size()) return false;
  for (const auto& [f, e] : a)
    if (exponent_of(b, f) != e) return false;
  return true;
}

}  // namespace

FactoredFraction FactoredFraction::operator+(const FactoredFraction& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  FactoredFraction r;
  if (same_factors(factors_, o.factors_)) {
    r.num_ = num_ + o.num_;
    r.factors_ = factors_;
    if (r.num_.is_zero()) r.factors_.clear();
    return r;
  }
  std::vector<Factor> lcm = factors_;
  for (const auto& [f, e] : o.factors_) {
    auto it = std::find_if(lcm.begin(), lcm.end(), [&](const Factor& g) { return g.first == f; });
    if (it == lcm.end())
      lcm.emplace_back(f, e);
    else
      it->second = std::max(it->second, e);
  }
  MultiPoly a = num_, b = o.num_;
  for (const auto& [f, e] : lcm) {
    unsigned ea = exponent_of(factors_, f), eb = exponent_of(o.factors_, f);
    if (e > ea) a = a * f.pow(e - ea);
    if (e > eb) b = b * f.pow(e - eb);
  }
  r.num_ = a + b;
  r.factors_ = std::move(lcm);
  if (r.num_.is_zero()) r.factors_.clear();
  return r;
}

FactoredFraction FactoredFraction::operator-() const {
  FactoredFraction r = *this;
  r.num_ = -r.num_;
  return r;
}

FactoredFraction FactoredFraction::operator-(const FactoredFraction& o) const { return *this + (-o); }

FactoredFraction FactoredFraction::operator*(const FactoredFraction& o) const {
  FactoredFraction r;
  r.num_ = num_ * o.num_;
  if (r.num_.is_zero()) return r;
  r.factors_ = factors_;
  for (const auto& [f, e] : o.factors_) {
    auto it = std::find_if(r.factors_.begin(), r.factors_.end(), [&](const Factor& g) { return g.first == f; });
    if (it == r.factors_.end())
      r.factors_.emplace_back(f, e);
    else
      it->second += e;
  }
  return r;
}

FactoredFraction FactoredFraction::operator*(const Scalar& s) const {
  FactoredFraction r = *this;
  r.num_ = r.num_ * s;
  if (r.num_.is_zero()) r.factors_.clear();
  return r;
}

FactoredFraction FactoredFraction::operator/(const Scalar& s) const {
  if (s.is_zero()) throw DivisionByZero("fraction divided by zero scalar");
  return *this * s.inverse();
}

FactoredFraction FactoredFraction::times_factor_power(const MultiPoly& f, unsigned e) const {
  if (e == 0 || is_zero()) return *this;
  if (f.is_constant()) return *this * f.constant_term().pow(e);
  auto [m, lc] = f.monic();
  FactoredFraction r = *this;
  if (!lc.is_one()) r.num_ = r.num_ * lc.pow(e);
  auto it = std::find_if(r.factors_.begin(), r.factors_.end(), [&](const Factor& g) { return g.first == m; });
  unsigned left = e;
  if (it != r.factors_.end()) {
    unsigned c = std::min(it->second, e);
    it->second -= c;
    left -= c;
    if (it->second == 0) r.factors_.erase(it);
  }
  if (left) r.num_ = r.num_ * m.pow(left);
  return r;
}

FactoredFraction FactoredFraction::divided_by_power(const MultiPoly& f, unsigned e) const {
  FactoredFraction r = *this;
  r.factors_.emplace_back(f, e);
  r.normalize_factors();
  return r;
}

FactoredFraction FactoredFraction::partial(size_t i) const {
  if (factors_.empty()) return FactoredFraction(num_.partial(i));
  // d(n / prod f^e) = (n' prod f - n sum e_j f_j' prod_{k != j} f_k) / prod f^(e+1)
  const size_t k = factors_.size();
  std::vector<MultiPoly> prefix(k + 1), suffix(k + 1);
  prefix[0] = MultiPoly::constant(nvars(), Scalar(1));
  for (size_t j = 0; j < k; ++j) prefix[j + 1] = prefix[j] * factors_[j].first;
  suffix[k] = MultiPoly::constant(nvars(), Scalar(1));
  for (size_t j = k; j-- > 0;) suffix[j] = factors_[j].first * suffix[j + 1];
  MultiPoly sum(nvars());
  for (size_t j = 0; j < k; ++j) {
    MultiPoly df = factors_[j].first.partial(i);
    if (df.is_zero()) continue;
    sum += (df * Scalar(static_cast<long>(factors_[j].second))) * (prefix[j] * suffix[j + 1]);
  }
  FactoredFraction r;
  r.num_ = num_.partial(i) * prefix[k] - num_ * sum;
  if (r.num_.is_zero()) return FactoredFraction(MultiPoly(nvars()));
  r.factors_ = factors_;
  for (auto& fe : r.factors_) fe.second += 1;
  return r;
}

FactoredFraction FactoredFraction::subst_linear(const Matrix<Scalar>& m) const {
  std::vector<Factor> fs;
  for (const auto& [f, e] : factors_) fs.emplace_back(f.subst_linear(m), e);
  return FactoredFraction(num_.subst_linear(m), Scalar(1), std::move(fs));
}

FactoredFraction FactoredFraction::simplify() const {
  if (num_.is_zero()) return FactoredFraction(MultiPoly(nvars()));
  FactoredFraction r = *this;
  for (auto& [f, e] : r.factors_) {
    if (is_linear_form(f)) {
      auto [q, k] = strip_linear_factor(r.num_, f, e);
      r.num_ = std::move(q);
      e -= k;
    } else {
      while (e > 0) {
        auto q = exact_divide(r.num_, f);
        if (!q) break;
        r.num_ = std::move(*q);
        --e;
      }
    }
  }
  r.factors_.erase(std::remove_if(r.factors_.begin(), r.factors_.end(), [](const Factor& f) { return f.second == 0; }),
                   r.factors_.end());
  return r;
}

FactoredFraction FactoredFraction::refine(const std::vector<MultiPoly>& primes) const {
  if (primes.empty() || num_.is_zero()) return *this;
  std::vector<Factor> out;
  Scalar unit(1);
  for (const auto& [f, e] : factors_) {
    TrialFactorization tf = trial_factor(f, primes);
    unit *= tf.unit.pow(e);
    for (const auto& [p, k] : tf.factors) out.emplace_back(p, k * e);
    if (!tf.rest.is_constant()) out.emplace_back(tf.rest, e);
  }
  return FactoredFraction(num_, unit, std::move(out));
}

std::optional<int> FactoredFraction::degree() const {
  if (num_.is_zero() || !is_homogeneous()) return std::nullopt;
  int d = static_cast<int>(*num_.total_degree());
  for (const auto& [f, e] : factors_) d -= static_cast<int>(*f.total_degree() * e);
  return d;
}

bool FactoredFraction::is_homogeneous() const {
  if (!num_.is_homogeneous()) return false;
  for (const auto& [f, e] : factors_)
    if (!f.is_homogeneous()) return false;
  return true;
}

bool FactoredFraction::operator==(const FactoredFraction& o) const {
  if (same_factors(factors_, o.factors_)) return num_ == o.num_;
  return (*this - o).is_zero();
}

std::string FactoredFraction::to_string() const {
  if (factors_.empty()) return num_.to_string();
  std::string s = "(" + num_.to_string() + ")/(";
  bool first = true;
  for (const auto& [f, e] : factors_) {
    if (!first) s += "*";
    first = false;
    s += "(" + f.to_string() + ")";
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s + ")";
}

PolyMatrix zero_poly_matrix(size_t rows, size_t cols, size_t nvars) {
  return PolyMatrix(rows, cols, MultiPoly(nvars));
}

PolyMatrix identity_poly_matrix(size_t n, size_t nvars) {
  return PolyMatrix::identity(n, MultiPoly(nvars), MultiPoly::constant(nvars, Scalar(1)));
}

PolyMatrix to_poly_matrix(const ScalarMatrix& m, size_t nvars) {
  return m.map([nvars](const Scalar& s) { return MultiPoly::constant(nvars, s); });
}

FracMatrix to_frac_matrix(const PolyMatrix& m) {
  return m.map([](const MultiPoly& p) { return FactoredFraction(p); });
}

FracMatrix adjugate_inverse(const PolyMatrix& m, const std::vector<MultiPoly>& primes) {
  if (!m.is_square()) throw DimensionMismatch("inverse of a non-square matrix");
  const size_t nv = m(0, 0).nvars();
  MultiPoly det = determinant(m);
  if (det.is_zero()) throw SingularMatrix("matrix determinant is zero");
  TrialFactorization tf = trial_factor(det, primes);
  std::vector<FactoredFraction::Factor> den = tf.factors;
  if (!tf.rest.is_constant()) den.emplace_back(tf.rest, 1);
  PolyMatrix adj = adjugate(m, MultiPoly::constant(nv, Scalar(1)));
  return adj.map([&](const MultiPoly& a) { return FactoredFraction(a, tf.unit, den).simplify(); });
}

FracMatrix adjugate_inverse(const FracMatrix& m, const std::vector<MultiPoly>& primes) {
  if (!m.is_square()) throw DimensionMismatch("inverse of a non-square matrix");
  std::vector<FactoredFraction::Factor> lcm;
  for (const auto& x : m.entries()) {
    for (const auto& [f, e] : x.denominator_factors()) {
      auto it = std::find_if(lcm.begin(), lcm.end(), [&](const auto& g) { return g.first == f; });
      if (it == lcm.end())
        lcm.emplace_back(f, e);
      else
        it->second = std::max(it->second, e);
    }
  }
  PolyMatrix n = m.map([&](const FactoredFraction& x) {
    MultiPoly p = x.numerator();
    if (p.is_zero()) return p;
    for (const auto& [f, e] : lcm) {
      unsigned have = exponent_of(x.denominator_factors(), f);
      if (e > have) p = p * f.pow(e - have);
    }
    return p;
  });
  FracMatrix inv = adjugate_inverse(n, primes);
  return inv.map([&](const FactoredFraction& x) {
    FactoredFraction y = x;
    for (const auto& [f, e] : lcm) y = y.times_factor_power(f, e);
    return y.simplify();
  });
}

ScalarMatrix inverse(const ScalarMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("inverse of a non-square matrix");
  const size_t n = m.rows();
  ScalarMatrix a = m;
  ScalarMatrix inv = ScalarMatrix::identity(n, Scalar(0), Scalar(1));
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && a(piv, c).is_zero()) ++piv;
    if (piv == n) throw SingularMatrix("scalar matrix is singular");
    if (piv != c)
      for (size_t j = 0; j < n; ++j) {
        std::swap(a(c, j), a(piv, j));
        std::swap(inv(c, j), inv(piv, j));
      }
    Scalar p = a(c, c).inverse();
    for (size_t j = 0; j < n; ++j) {
      a(c, j) *= p;
      inv(c, j) *= p;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c).is_zero()) continue;
      Scalar f = a(r, c);
      for (size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

FracMatrix simplify(const FracMatrix& m) {
  return m.map([](const FactoredFraction& x) { return x.simplify(); });
}

std::optional<PolyMatrix> as_poly_matrix(const FracMatrix& m, std::pair<size_t, size_t>* bad) {
  std::vector<MultiPoly> out;
  out.reserve(m.rows() * m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) {
      auto p = m(i, j).simplify().as_polynomial();
      if (!p) {
        if (bad) *bad = {i, j};
        return std::nullopt;
      }
      out.push_back(std::move(*p));
    }
  return PolyMatrix(m.rows(), m.cols(), std::move(out));
}

}  // namespace coxsaito
