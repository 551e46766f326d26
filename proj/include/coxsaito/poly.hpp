#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coxsaito/matrix.hpp"
#include "coxsaito/number_field.hpp"

namespace coxsaito {

inline constexpr size_t kMaxVars = 8;

/// Exponent vector with cached total degree.  Variables beyond nvars are 0.
struct Monomial {
  std::array<uint16_t, kMaxVars> e{};
  uint32_t deg = 0;

  static Monomial unit(size_t var, unsigned power = 1);
  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  /// o / *this; requires divides(o).
  Monomial quotient_of(const Monomial& o) const;

  bool operator==(const Monomial& o) const { return deg == o.deg && e == o.e; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }
};

/// Graded lexicographic order with x1 > x2 > ... ; true when a is larger.
bool grlex_greater(const Monomial& a, const Monomial& b);

struct MonomialHash {
  size_t operator()(const Monomial& m) const noexcept;
};

struct Term {
  Monomial mono;
  Scalar coeff;
};

/// Sparse multivariate polynomial over Q or a number field.
///
/// Terms are kept sorted in decreasing graded-lex order with no zero
/// coefficients, so structural equality is polynomial equality.
class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(size_t nvars);
  /// Builds from arbitrary terms; like monomials are combined.
  MultiPoly(size_t nvars, std::vector<Term> terms);

  static MultiPoly constant(size_t nvars, const Scalar& c);
  static MultiPoly variable(size_t nvars, size_t i);
  /// Linear form sum_i coeffs[i] * X_i.
  static MultiPoly linear(const std::vector<Scalar>& coeffs);

  size_t nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term value; zero when absent.
  Scalar constant_term() const;
  const Term& leading_term() const { return terms_.front(); }
  const FieldContext* field() const;

  /// Total degree of the leading term; nullopt for the zero polynomial.
  std::optional<unsigned> total_degree() const;
  /// True for the zero polynomial and when all terms share one degree.
  bool is_homogeneous() const;
  /// Smallest exponent of variable i over all terms; nullopt for zero.
  std::optional<unsigned> min_exponent(size_t i) const;

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator*(const Scalar& s) const;
  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly pow(unsigned e) const;
  MultiPoly mul_term(const Monomial& m, const Scalar& c) const;

  /// Partial derivative with respect to variable i.
  MultiPoly partial(size_t i) const;
  /// f(M x): variable X_i is replaced by sum_j M(i, j) X_j.
  MultiPoly subst_linear(const Matrix<Scalar>& m) const;
  Scalar evaluate(const std::vector<Scalar>& point) const;

  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  /// Divides every coefficient so that the leading coefficient is 1; returns
  /// the removed factor (f = factor * monic()).
  std::pair<MultiPoly, Scalar> monic() const;

  /// Variables print as x, y, z, w for nvars <= 4 and x1, x2, ... otherwise.
  std::string to_string() const;
  std::string to_string(const std::vector<std::string>& names) const;

 private:
  static void sort_and_combine(std::vector<Term>& terms);
  size_t nvars_ = 0;
  std::vector<Term> terms_;
};

MultiPoly operator*(const Scalar& s, const MultiPoly& f);

std::vector<std::string> default_variable_names(size_t nvars);

/// Quotient q with f = q * g if g divides f in the polynomial ring, nullopt
/// otherwise.  Leading-term elimination in graded-lex order; exact whenever
/// the quotient exists.
std::optional<MultiPoly> exact_divide(const MultiPoly& f, const MultiPoly& g);

/// Largest m with alpha^m | f (nullopt stands for +infinity when f = 0).
/// alpha must be a nonzero linear form.
std::optional<unsigned> lowest_power_in_form(const MultiPoly& f, const MultiPoly& alpha);

}  // namespace coxsaito
