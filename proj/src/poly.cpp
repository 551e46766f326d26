#include "coxsaito/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

namespace coxsaito {

Monomial Monomial::unit(size_t var, unsigned power) {
  Monomial m;
  m.e[var] = static_cast<uint16_t>(power);
  m.deg = power;
  return m;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  for (size_t i = 0; i < kMaxVars; ++i) {
    unsigned s = unsigned{e[i]} + o.e[i];
    if (s > 0xFFFFu) throw DimensionMismatch("monomial exponent overflow");
    r.e[i] = static_cast<uint16_t>(s);
  }
  r.deg = deg + o.deg;
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  if (deg > o.deg) return false;
  for (size_t i = 0; i < kMaxVars; ++i)
    if (e[i] > o.e[i]) return false;
  return true;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
  Monomial r;
  for (size_t i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<uint16_t>(o.e[i] - e[i]);
  r.deg = o.deg - deg;
  return r;
}

bool grlex_greater(const Monomial& a, const Monomial& b) {
  if (a.deg != b.deg) return a.deg > b.deg;
  return a.e > b.e;  // lexicographic with x1 most significant
}

size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  uint64_t h = 0xcbf29ce484222325ull;
  for (uint16_t x : m.e) {
    h ^= x;
    h *= 0x100000001b3ull;
  }
  return static_cast<size_t>(h ^ (h >> 29));
}

namespace {

struct GrlexCmp {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_greater(a, b); }
};

}  // namespace

MultiPoly::MultiPoly(size_t nvars) : nvars_(nvars) {
  if (nvars > kMaxVars) throw DimensionMismatch("too many variables");
}

MultiPoly::MultiPoly(size_t nvars, std::vector<Term> terms) : nvars_(nvars), terms_(std::move(terms)) {
  if (nvars > kMaxVars) throw DimensionMismatch("too many variables");
  sort_and_combine(terms_);
}

void MultiPoly::sort_and_combine(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return grlex_greater(a.mono, b.mono); });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
  terms = std::move(out);
}

MultiPoly MultiPoly::constant(size_t nvars, const Scalar& c) {
  MultiPoly p(nvars);
  if (!c.is_zero()) p.terms_.push_back({Monomial{}, c});
  return p;
}

MultiPoly MultiPoly::variable(size_t nvars, size_t i) {
  if (i >= nvars) throw DimensionMismatch("variable index out of range");
  MultiPoly p(nvars);
  p.terms_.push_back({Monomial::unit(i), Scalar(1)});
  return p;
}

MultiPoly MultiPoly::linear(const std::vector<Scalar>& coeffs) {
  std::vector<Term> t;
  for (size_t i = 0; i < coeffs.size(); ++i)
    if (!coeffs[i].is_zero()) t.push_back({Monomial::unit(i), coeffs[i]});
  return MultiPoly(coeffs.size(), std::move(t));
}

bool MultiPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.deg == 0); }

Scalar MultiPoly::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.deg == 0) return terms_.back().coeff;
  return Scalar(0);
}

const FieldContext* MultiPoly::field() const {
  for (const auto& t : terms_)
    if (t.coeff.field()) return t.coeff.field();
  return nullptr;
}

std::optional<unsigned> MultiPoly::total_degree() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.front().mono.deg;
}

bool MultiPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  return terms_.front().mono.deg == terms_.back().mono.deg;
}

std::optional<unsigned> MultiPoly::min_exponent(size_t i) const {
  if (terms_.empty()) return std::nullopt;
  unsigned m = ~0u;
  for (const auto& t : terms_) m = std::min<unsigned>(m, t.mono.e[i]);
  return m;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  if (nvars_ != o.nvars_) throw DimensionMismatch("polynomials in different variable counts");
  MultiPoly r(nvars_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    const Term& a = terms_[i];
    const Term& b = o.terms_[j];
    if (a.mono == b.mono) {
      Scalar s = a.coeff + b.coeff;
      if (!s.is_zero()) r.terms_.push_back({a.mono, std::move(s)});
      ++i;
      ++j;
    } else if (grlex_greater(a.mono, b.mono)) {
      r.terms_.push_back(a);
      ++i;
    } else {
      r.terms_.push_back(b);
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
  return r;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator*(const Scalar& s) const {
  if (s.is_zero()) return MultiPoly(nvars_);
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.coeff *= s;
  return r;
}

MultiPoly operator*(const Scalar& s, const MultiPoly& f) { return f * s; }

MultiPoly MultiPoly::mul_term(const Monomial& m, const Scalar& c) const {
  if (c.is_zero()) return MultiPoly(nvars_);
  MultiPoly r(nvars_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
  return r;  // monomial multiplication preserves the order
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  if (nvars_ != o.nvars_) throw DimensionMismatch("polynomials in different variable counts");
  if (is_zero() || o.is_zero()) return MultiPoly(nvars_);
  if (terms_.size() == 1) return o.mul_term(terms_[0].mono, terms_[0].coeff);
  if (o.terms_.size() == 1) return mul_term(o.terms_[0].mono, o.terms_[0].coeff);
  std::unordered_map<Monomial, Scalar, MonomialHash> acc;
  acc.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      Monomial m = a.mono * b.mono;
      auto [it, inserted] = acc.try_emplace(m);
      if (inserted)
        it->second = a.coeff * b.coeff;
      else
        it->second += a.coeff * b.coeff;
    }
  }
  MultiPoly r(nvars_);
  r.terms_.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (!c.is_zero()) r.terms_.push_back({m, std::move(c)});
  std::sort(r.terms_.begin(), r.terms_.end(),
            [](const Term& a, const Term& b) { return grlex_greater(a.mono, b.mono); });
  return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly r = constant(nvars_, Scalar(1));
  MultiPoly b = *this;
  while (e) {
    if (e & 1u) r = r * b;
    e >>= 1u;
    if (e) b = b * b;
  }
  return r;
}

MultiPoly MultiPoly::partial(size_t i) const {
  if (i >= nvars_) throw DimensionMismatch("partial derivative index out of range");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (t.mono.e[i] == 0) continue;
    Monomial m = t.mono;
    Scalar c = t.coeff * Scalar(static_cast<long>(m.e[i]));
    m.e[i] = static_cast<uint16_t>(m.e[i] - 1);
    m.deg -= 1;
    out.push_back({m, std::move(c)});
  }
  // Differentiation can reorder terms within a degree.
  return MultiPoly(nvars_, std::move(out));
}

MultiPoly MultiPoly::subst_linear(const Matrix<Scalar>& m) const {
  if (m.rows() != nvars_ || m.cols() != nvars_) throw DimensionMismatch("substitution matrix shape");
  std::vector<MultiPoly> forms;
  for (size_t i = 0; i < nvars_; ++i) {
    std::vector<Scalar> row;
    for (size_t j = 0; j < nvars_; ++j) row.push_back(m(i, j));
    forms.push_back(linear(row));
  }
  // powers[i][e] = forms[i]^e, filled lazily
  std::vector<std::vector<MultiPoly>> powers(nvars_);
  auto power = [&](size_t i, unsigned e) -> const MultiPoly& {
    auto& p = powers[i];
    if (p.empty()) p.push_back(constant(nvars_, Scalar(1)));
    while (p.size() <= e) p.push_back(p.back() * forms[i]);
    return p[e];
  };
  std::unordered_map<Monomial, Scalar, MonomialHash> acc;
  for (const auto& t : terms_) {
    MultiPoly prod = constant(nvars_, t.coeff);
    for (size_t i = 0; i < nvars_; ++i)
      if (t.mono.e[i]) prod = prod * power(i, t.mono.e[i]);
    for (auto& pt : prod.terms_) {
      auto [it, inserted] = acc.try_emplace(pt.mono);
      if (inserted)
        it->second = std::move(pt.coeff);
      else
        it->second += pt.coeff;
    }
  }
  MultiPoly r(nvars_);
  for (auto& [mono, c] : acc)
    if (!c.is_zero()) r.terms_.push_back({mono, std::move(c)});
  std::sort(r.terms_.begin(), r.terms_.end(),
            [](const Term& a, const Term& b) { return grlex_greater(a.mono, b.mono); });
  return r;
}

Scalar MultiPoly::evaluate(const std::vector<Scalar>& point) const {
  if (point.size() != nvars_) throw DimensionMismatch("evaluation point has wrong dimension");
  std::vector<std::vector<Scalar>> powers(nvars_, std::vector<Scalar>{Scalar(1)});
  Scalar acc(0);
  for (const auto& t : terms_) {
    Scalar v = t.coeff;
    for (size_t i = 0; i < nvars_; ++i) {
      unsigned e = t.mono.e[i];
      if (!e) continue;
      auto& p = powers[i];
      while (p.size() <= e) p.push_back(p.back() * point[i]);
      v *= p[e];
    }
    acc += v;
  }
  return acc;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].mono != o.terms_[i].mono || terms_[i].coeff != o.terms_[i].coeff) return false;
  return true;
}

std::pair<MultiPoly, Scalar> MultiPoly::monic() const {
  if (terms_.empty()) return {*this, Scalar(1)};
  Scalar lc = terms_.front().coeff;
  if (lc.is_one()) return {*this, lc};
  return {*this * lc.inverse(), lc};
}

std::vector<std::string> default_variable_names(size_t nvars) {
  static const char* small[] = {"x", "y", "z", "w"};
  std::vector<std::string> v;
  for (size_t i = 0; i < nvars; ++i) v.push_back(nvars <= 4 ? small[i] : "x" + std::to_string(i + 1));
  return v;
}

std::string MultiPoly::to_string() const { return to_string(default_variable_names(nvars_)); }

std::string MultiPoly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    std::string mono;
    for (size_t i = 0; i < nvars_; ++i) {
      if (!t.mono.e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (t.mono.e[i] > 1) mono += "^" + std::to_string(t.mono.e[i]);
    }
    const Scalar& c = t.coeff;
    if (c.is_rational()) {
      mpq_class q = c.rational_part();
      bool neg = q < 0;
      mpq_class a = abs(q);
      if (first)
        os << (neg ? "-" : "");
      else
        os << (neg ? " - " : " + ");
      if (mono.empty())
        os << a.get_str();
      else if (a == 1)
        os << mono;
      else
        os << a.get_str() << "*" << mono;
    } else {
      if (!first) os << " + ";
      os << c.to_string();
      if (!mono.empty()) os << "*" << mono;
    }
    first = false;
  }
  return os.str();
}

std::optional<MultiPoly> exact_divide(const MultiPoly& f, const MultiPoly& g) {
  if (g.is_zero()) throw DivisionByZero("exact_divide by the zero polynomial");
  if (f.nvars() != g.nvars()) throw DimensionMismatch("exact_divide: variable counts differ");
  const size_t n = f.nvars();
  if (f.is_zero()) return MultiPoly(n);
  const Term& lg = g.leading_term();
  if (g.size() == 1) {
    Scalar inv = lg.coeff.inverse();
    std::vector<Term> q;
    q.reserve(f.size());
    for (const auto& t : f.terms()) {
      if (!lg.mono.divides(t.mono)) return std::nullopt;
      q.push_back({lg.mono.quotient_of(t.mono), t.coeff * inv});
    }
    return MultiPoly(n, std::move(q));
  }
  if (!lg.mono.divides(f.leading_term().mono)) return std::nullopt;
  // Cheap degree test: the lowest-degree part of f must be divisible too.
  if (f.terms().back().mono.deg < g.terms().back().mono.deg) return std::nullopt;

  Scalar inv = lg.coeff.inverse();
  std::map<Monomial, Scalar, GrlexCmp> rem;
  for (const auto& t : f.terms()) rem.emplace_hint(rem.end(), t.mono, t.coeff);
  std::vector<Term> q;
  const auto& gt = g.terms();
  while (!rem.empty()) {
    auto top = rem.begin();
    if (!lg.mono.divides(top->first)) return std::nullopt;
    Monomial qm = lg.mono.quotient_of(top->first);
    Scalar qc = top->second * inv;
    rem.erase(top);
    for (size_t k = 1; k < gt.size(); ++k) {
      Monomial m = gt[k].mono * qm;
      Scalar c = gt[k].coeff * qc;
      auto [it, inserted] = rem.try_emplace(m);
      if (inserted) {
        it->second = -c;
      } else {
        it->second -= c;
        if (it->second.is_zero()) rem.erase(it);
      }
    }
    q.push_back({qm, std::move(qc)});
  }
  MultiPoly out(n, std::move(q));
  return out;
}

std::optional<unsigned> lowest_power_in_form(const MultiPoly& f, const MultiPoly& alpha) {
  if (alpha.is_zero()) throw ZeroForm("lowest_power_in_form: zero linear form");
  if (alpha.total_degree() != 1u || !alpha.is_homogeneous())
    throw ZeroForm("lowest_power_in_form: argument is not a linear form");
  if (f.is_zero()) return std::nullopt;
  const size_t n = f.nvars();
  std::vector<Scalar> a(n);
  for (const auto& t : alpha.terms())
    for (size_t i = 0; i < n; ++i)
      if (t.mono.e[i]) a[i] = t.coeff;
  size_t p = 0;
  while (a[p].is_zero()) ++p;
  // New coordinates: Y_p = alpha, Y_i = X_i otherwise.
  Matrix<Scalar> m = Matrix<Scalar>::identity(n, Scalar(0), Scalar(1));
  Scalar inv = a[p].inverse();
  for (size_t i = 0; i < n; ++i) m(p, i) = (i == p) ? inv : -(a[i] * inv);
  return f.subst_linear(m).min_exponent(p);
}

}  // namespace coxsaito
