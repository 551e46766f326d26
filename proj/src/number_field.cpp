#include "coxsaito/number_field.hpp"

#include <sstream>

#include "coxsaito/errors.hpp"

namespace coxsaito {

FieldContext::FieldContext(UPoly minimal_polynomial, std::string description, std::string symbol)
    : minpoly_(minimal_polynomial.monic()),
      description_(std::move(description)),
      symbol_(std::move(symbol)) {
  const int d = minpoly_.degree();
  if (d < 1) throw ConfigError("minimal polynomial must have degree >= 1");
  // t^d = -(p_0 + p_1 t + ... + p_{d-1} t^{d-1})
  std::vector<mpq_class> row(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) row[static_cast<size_t>(j)] = -minpoly_.coeff(j);
  for (int i = 0; i + 1 < d; ++i) {
    reduce_.push_back(row);
    // multiply by t and reduce the overflowing top coefficient
    std::vector<mpq_class> next(static_cast<size_t>(d));
    mpq_class top = row.back();
    for (int j = d - 1; j >= 1; --j) next[static_cast<size_t>(j)] = row[static_cast<size_t>(j - 1)];
    for (int j = 0; j < d; ++j) next[static_cast<size_t>(j)] += top * reduce_.front()[static_cast<size_t>(j)];
    row = std::move(next);
  }
}

Scalar::Scalar(long num, long den) : c0_(num, den) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  c0_.canonicalize();
}

Scalar::Scalar(const FieldContext* field, std::vector<mpq_class> coords) {
  if (field != nullptr && field->degree() == 1) {
    // Q[t]/(t - a): t is the rational a.
    mpq_class a = -field->minimal_polynomial().coeff(0);
    mpq_class acc = 0, pw = 1;
    for (auto& c : coords) {
      acc += c * pw;
      pw *= a;
    }
    c0_ = acc;
    return;
  }
  field_ = field;
  if (coords.empty()) return;
  const size_t d = field ? static_cast<size_t>(field->degree()) : 1;
  if (coords.size() > d) {
    // reduce an over-long coordinate vector through polynomial arithmetic
    if (!field) throw DimensionMismatch("coordinate vector longer than field degree");
    auto [q, r] = UPoly(coords).divmod(field->minimal_polynomial());
    coords = r.coeffs();
  }
  coords.resize(d);
  c0_ = coords[0];
  hi_.assign(coords.begin() + 1, coords.end());
  normalize();
}

Scalar Scalar::generator(const FieldContext* field) {
  if (!field) throw ConfigError("generator of Q requested");
  std::vector<mpq_class> c(static_cast<size_t>(field->degree()));
  if (c.size() == 1) return Scalar(field, {0, 1});
  c[1] = 1;
  return Scalar(field, std::move(c));
}

void Scalar::normalize() {
  for (auto& c : hi_)
    if (c != 0) return;
  hi_.clear();
}

std::vector<mpq_class> Scalar::coords() const {
  const size_t d = field_ ? static_cast<size_t>(field_->degree()) : 1;
  std::vector<mpq_class> r(d);
  r[0] = c0_;
  for (size_t i = 0; i < hi_.size(); ++i) r[i + 1] = hi_[i];
  return r;
}

bool Scalar::is_zero() const { return c0_ == 0 && hi_.empty(); }
bool Scalar::is_one() const { return c0_ == 1 && hi_.empty(); }
bool Scalar::is_rational() const { return hi_.empty(); }

const FieldContext* Scalar::common_field(const Scalar& a, const Scalar& b) {
  if (a.field_ == b.field_ || b.field_ == nullptr) return a.field_;
  if (a.field_ == nullptr) return b.field_;
  if (a.hi_.empty() && b.hi_.empty()) return a.field_;
  if (a.field_->minimal_polynomial() == b.field_->minimal_polynomial()) return a.field_;
  throw DimensionMismatch("scalars from different number fields");
}

void Scalar::promote(const FieldContext* f) {
  if (field_ == f || f == nullptr) return;
  field_ = f;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  const FieldContext* f = common_field(*this, o);
  promote(f);
  c0_ += o.c0_;
  if (!o.hi_.empty()) {
    if (hi_.size() < o.hi_.size()) hi_.resize(o.hi_.size());
    for (size_t i = 0; i < o.hi_.size(); ++i) hi_[i] += o.hi_[i];
    normalize();
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  const FieldContext* f = common_field(*this, o);
  promote(f);
  c0_ -= o.c0_;
  if (!o.hi_.empty()) {
    if (hi_.size() < o.hi_.size()) hi_.resize(o.hi_.size());
    for (size_t i = 0; i < o.hi_.size(); ++i) hi_[i] -= o.hi_[i];
    normalize();
  }
  return *this;
}

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar r = *this;
  r += o;
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
  Scalar r = *this;
  r -= o;
  return r;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.c0_ = -r.c0_;
  for (auto& c : r.hi_) c = -c;
  return r;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  const FieldContext* f = common_field(*this, o);
  promote(f);
  if (o.hi_.empty()) {
    c0_ *= o.c0_;
    for (auto& c : hi_) c *= o.c0_;
    if (o.c0_ == 0) hi_.clear();
    return *this;
  }
  if (hi_.empty()) {
    mpq_class s = c0_;
    c0_ = o.c0_ * s;
    hi_ = o.hi_;
    for (auto& c : hi_) c *= s;
    if (s == 0) hi_.clear();
    return *this;
  }
  const size_t d = static_cast<size_t>(f->degree());
  std::vector<mpq_class> a = coords(), b = o.coords();
  std::vector<mpq_class> prod(2 * d - 1);
  for (size_t i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < d; ++j) prod[i + j] += a[i] * b[j];
  }
  const auto& table = f->reduction_table();
  for (size_t k = d; k < 2 * d - 1; ++k) {
    if (prod[k] == 0) continue;
    const auto& row = table[k - d];
    for (size_t j = 0; j < d; ++j) prod[j] += prod[k] * row[j];
  }
  c0_ = prod[0];
  hi_.assign(prod.begin() + 1, prod.begin() + static_cast<std::ptrdiff_t>(d));
  normalize();
  return *this;
}

Scalar Scalar::operator*(const Scalar& o) const {
  Scalar r = *this;
  r *= o;
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero scalar");
  if (hi_.empty()) {
    Scalar r = *this;
    r.c0_ = 1 / c0_;
    return r;
  }
  auto [g, s] = gcdext_left(UPoly(coords()), field_->minimal_polynomial());
  if (g.degree() != 0)
    throw NonInvertible("element " + to_string() + " is a zero divisor; minimal polynomial " +
                        field_->minimal_polynomial().to_string() + " is reducible");
  return Scalar(field_, s.coeffs());
}

Scalar Scalar::operator/(const Scalar& o) const {
  if (o.is_zero()) throw DivisionByZero("scalar division by zero");
  return *this * o.inverse();
}

Scalar Scalar::pow(unsigned e) const {
  Scalar r(1);
  r.field_ = field_;
  Scalar b = *this;
  while (e) {
    if (e & 1u) r *= b;
    e >>= 1u;
    if (e) b *= b;
  }
  return r;
}

bool Scalar::operator==(const Scalar& o) const {
  if (c0_ != o.c0_) return false;
  if (hi_.size() != o.hi_.size()) {
    // trailing zero coordinates may differ in storage length only
    const auto& lo = hi_.size() < o.hi_.size() ? hi_ : o.hi_;
    const auto& hi = hi_.size() < o.hi_.size() ? o.hi_ : hi_;
    for (size_t i = 0; i < hi.size(); ++i)
      if ((i < lo.size() ? lo[i] : mpq_class(0)) != hi[i]) return false;
    return true;
  }
  if (!hi_.empty() && field_ != o.field_ && field_ && o.field_ &&
      !(field_->minimal_polynomial() == o.field_->minimal_polynomial()))
    return false;
  return hi_ == o.hi_;
}

std::string Scalar::to_string() const {
  if (hi_.empty()) return c0_.get_str();
  std::vector<mpq_class> c = coords();
  return "(" + UPoly(c).to_string(field_->symbol()) + ")";
}

}  // namespace coxsaito
