#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coxsaito/matrix.hpp"
#include "coxsaito/poly.hpp"

namespace coxsaito {

/// Rational function numerator / (scalar * prod f_i^e_i) with the denominator
/// kept factored.
///
/// Factors are stored monic (leading coefficient 1) and pairwise distinct, so
/// repeated factors merge.  No gcd is ever taken: reduction happens only by
/// exact division of the numerator by known factors (simplify).  Equality is
/// value equality, decided by cross-multiplication.
class FactoredFraction {
 public:
  using Factor = std::pair<MultiPoly, unsigned>;

  FactoredFraction() = default;
  explicit FactoredFraction(size_t nvars) : num_(nvars) {}
  FactoredFraction(MultiPoly numerator);  // NOLINT(google-explicit-constructor)
  FactoredFraction(MultiPoly numerator, const Scalar& denominator_scalar, std::vector<Factor> factors);

  static FactoredFraction constant(size_t nvars, const Scalar& c) {
    return FactoredFraction(MultiPoly::constant(nvars, c));
  }

  size_t nvars() const { return num_.nvars(); }
  const MultiPoly& numerator() const { return num_; }
  /// Always 1: scalar denominators are folded into the numerator on construction.
  const Scalar& denominator_scalar() const { return den_scalar_; }
  const std::vector<Factor>& denominator_factors() const { return factors_; }
  MultiPoly denominator() const;

  bool is_zero() const { return num_.is_zero(); }
  /// True when no denominator factor remains (call simplify first to reduce).
  bool is_polynomial() const { return factors_.empty(); }
  std::optional<MultiPoly> as_polynomial() const;

  FactoredFraction operator+(const FactoredFraction& o) const;
  FactoredFraction operator-(const FactoredFraction& o) const;
  FactoredFraction operator-() const;
  FactoredFraction operator*(const FactoredFraction& o) const;
  FactoredFraction operator*(const Scalar& s) const;
  FactoredFraction operator/(const Scalar& s) const;
  FactoredFraction& operator+=(const FactoredFraction& o) { return *this = *this + o; }

  /// Multiplies by f^e, cancelling against a matching denominator factor first.
  FactoredFraction times_factor_power(const MultiPoly& f, unsigned e) const;
  /// Divides by f^e (f nonzero, nonconstant or constant).
  FactoredFraction divided_by_power(const MultiPoly& f, unsigned e) const;

  /// Partial derivative in X_i by the quotient rule.
  FactoredFraction partial(size_t i) const;
  FactoredFraction subst_linear(const Matrix<Scalar>& m) const;

  /// Cancels every denominator factor that exactly divides the numerator.
  FactoredFraction simplify() const;
  /// Splits every denominator factor by trial division against `primes`
  /// (typically hyperplane forms); leftovers stay as factors.
  FactoredFraction refine(const std::vector<MultiPoly>& primes) const;

  /// Degree of numerator minus degree of denominator when both are
  /// homogeneous; nullopt for zero or inhomogeneous values.
  std::optional<int> degree() const;
  bool is_homogeneous() const;

  bool operator==(const FactoredFraction& o) const;
  bool operator!=(const FactoredFraction& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  void normalize_factors();
  MultiPoly num_;
  Scalar den_scalar_{1};
  std::vector<Factor> factors_;
};

/// Multiplicity of `prime` in `f` restricted to linear primes: fast rejection
/// by evaluating at a point of the hyperplane before dividing.
std::pair<MultiPoly, unsigned> strip_linear_factor(const MultiPoly& f, const MultiPoly& prime);
std::pair<MultiPoly, unsigned> strip_linear_factor(const MultiPoly& f, const MultiPoly& prime,
                                                   unsigned max_power);

/// Factors a polynomial as c * prod primes^e * rest by trial division.
struct TrialFactorization {
  Scalar unit{1};
  std::vector<FactoredFraction::Factor> factors;
  MultiPoly rest;  // monic, possibly constant 1
};
TrialFactorization trial_factor(const MultiPoly& f, const std::vector<MultiPoly>& primes);

using PolyMatrix = Matrix<MultiPoly>;
using FracMatrix = Matrix<FactoredFraction>;
using ScalarMatrix = Matrix<Scalar>;

PolyMatrix zero_poly_matrix(size_t rows, size_t cols, size_t nvars);
PolyMatrix identity_poly_matrix(size_t n, size_t nvars);
PolyMatrix to_poly_matrix(const ScalarMatrix& m, size_t nvars);
FracMatrix to_frac_matrix(const PolyMatrix& m);

/// Inverse as adjugate / det; det is recorded as a denominator factor and,
/// when primes are given, split into them.  Throws SingularMatrix.
FracMatrix adjugate_inverse(const PolyMatrix& m, const std::vector<MultiPoly>& primes = {});
/// Inverse of a matrix of fractions via a common denominator.
FracMatrix adjugate_inverse(const FracMatrix& m, const std::vector<MultiPoly>& primes = {});
/// Exact inverse of a scalar matrix (Gauss-Jordan).  Throws SingularMatrix.
ScalarMatrix inverse(const ScalarMatrix& m);

FracMatrix simplify(const FracMatrix& m);
/// Entrywise simplify + polynomial certification; nullopt locates the first
/// non-polynomial entry through `bad`.
std::optional<PolyMatrix> as_poly_matrix(const FracMatrix& m, std::pair<size_t, size_t>* bad = nullptr);

}  // namespace coxsaito
