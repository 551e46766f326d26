#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace coxsaito {

/// Dense univariate polynomial over Q, coefficients in ascending order.
/// Trailing zeros are always trimmed; the zero polynomial has no coefficients.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<mpq_class> coeffs);
  static UPoly constant(const mpq_class& c);
  static UPoly monomial(const mpq_class& c, int degree);

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  mpq_class coeff(int i) const;
  const mpq_class& leading() const { return c_.back(); }

  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator-() const;
  UPoly operator*(const UPoly& o) const;
  UPoly operator*(const mpq_class& s) const;
  bool operator==(const UPoly& o) const { return c_ == o.c_; }

  /// Euclidean division: *this = q * d + r with deg r < deg d.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const;
  UPoly monic() const;

  mpq_class evaluate(const mpq_class& x) const;
  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<mpq_class> c_;
};

/// Extended gcd: returns (g, s) with s*a = g (mod b), g monic.
std::pair<UPoly, UPoly> gcdext_left(const UPoly& a, const UPoly& b);

}  // namespace coxsaito
