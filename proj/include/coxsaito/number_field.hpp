#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "coxsaito/univariate.hpp"

namespace coxsaito {

/// A simple real algebraic number field Q[t]/(p(t)).
///
/// The minimal polynomial is trusted to be irreducible.  A reducible p is a
/// configuration error and surfaces as NonInvertible the first time a zero
/// divisor is inverted.
class FieldContext {
 public:
  FieldContext(UPoly minimal_polynomial, std::string description, std::string symbol = "t");

  const UPoly& minimal_polynomial() const { return minpoly_; }
  const std::string& description() const { return description_; }
  const std::string& symbol() const { return symbol_; }
  int degree() const { return minpoly_.degree(); }

  /// Row i holds the coordinates of t^(d+i), i = 0..d-2.
  const std::vector<std::vector<mpq_class>>& reduction_table() const { return reduce_; }

 private:
  UPoly minpoly_;
  std::string description_;
  std::string symbol_;
  std::vector<std::vector<mpq_class>> reduce_;
};

using FieldPtr = std::shared_ptr<const FieldContext>;

/// Field element.  A null context means the element is rational; rational
/// scalars mix freely with elements of any field.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : c0_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(const mpq_class& v) : c0_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(long num, long den);
  /// Element with the given coordinates on the power basis 1, t, ..., t^(d-1).
  Scalar(const FieldContext* field, std::vector<mpq_class> coords);
  /// The generator t of `field`.
  static Scalar generator(const FieldContext* field);

  const FieldContext* field() const { return field_; }
  /// Coordinates on the power basis; length = field degree (1 for Q).
  std::vector<mpq_class> coords() const;
  const mpq_class& rational_part() const { return c0_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator-() const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar inverse() const;
  Scalar pow(unsigned e) const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  /// Rational numbers print as "p/q"; field elements as "(a + b*t + ...)".
  std::string to_string() const;

 private:
  static const FieldContext* common_field(const Scalar& a, const Scalar& b);
  void promote(const FieldContext* f);
  void normalize();

  mpq_class c0_;
  std::vector<mpq_class> hi_;  // coordinates of t, t^2, ...; empty for rationals
  const FieldContext* field_ = nullptr;
};

}  // namespace coxsaito
