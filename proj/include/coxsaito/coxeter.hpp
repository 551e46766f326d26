#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coxsaito/fraction.hpp"
#include "coxsaito/number_field.hpp"
#include "coxsaito/poly.hpp"

namespace coxsaito {

enum class GroupKind { A, B, D, I2, Custom };

/// A realization of a finite irreducible Coxeter group on coordinates
/// X_1..X_l.
///
/// Conventions:
///  * gram_A(i, j) = I*(X_i, X_j), the inner product on linear forms.
///  * A generator matrix M acts on polynomials by substitution, f -> f(M x);
///    orthogonality reads M A M^T = A.
///  * Hyperplane forms are normalized so their first nonzero coefficient is 1.
struct CoxeterDatum {
  GroupKind kind = GroupKind::Custom;
  std::string label;  // "A", "B", "D", "I2" or a free-form custom label
  size_t rank = 0;
  unsigned dihedral_m = 0;  // I2(m) only
  FieldPtr field;           // null means Q
  ScalarMatrix gram_A;
  std::vector<MultiPoly> hyperplane_forms;
  std::vector<ScalarMatrix> generators;
  std::vector<unsigned> exponents;
  unsigned coxeter_number = 0;

  /// Short id such as "B2" or "I2(5)".
  std::string id() const;
  const FieldContext* field_ptr() const { return field.get(); }
};

/// Basic invariants P_1..P_l.  Only validate_invariants hands out a
/// validated bundle.
class BasicInvariants {
 public:
  const std::vector<MultiPoly>& polys() const { return polys_; }
  bool validated() const { return validated_; }
  /// c with det J(P) = c * Q.
  const Scalar& jacobian_constant() const { return jac_const_; }

 private:
  friend BasicInvariants validate_invariants(const CoxeterDatum&, std::vector<MultiPoly>);
  std::vector<MultiPoly> polys_;
  Scalar jac_const_;
  bool validated_ = false;
};

/// Built-in realizations: A_l (l >= 1), B_l (l >= 1), D_l (l >= 3), I2(m)
/// (m >= 3).  `n` is the rank for A/B/D and m for I2.
CoxeterDatum build_datum(const std::string& type_label, unsigned n);

/// Assembles a custom datum: normalizes the forms and checks every datum
/// invariant.  Throws ValidationError("InvalidDatum") on failure.
CoxeterDatum make_custom_datum(std::string label, FieldPtr field, ScalarMatrix gram_A,
                               std::vector<MultiPoly> hyperplane_forms, std::vector<ScalarMatrix> generators,
                               std::vector<unsigned> exponents);

/// Checks the structural invariants of a datum; throws ValidationError.
void check_datum(const CoxeterDatum& d);

/// Catalogue invariants for A, B, D and I2 (validated).
BasicInvariants builtin_invariants(const CoxeterDatum& d);

/// Validates candidate invariants: invariance under every generator, degrees
/// m_j + 1, and the Jacobian criterion det J(P) = c Q with c != 0.
BasicInvariants validate_invariants(const CoxeterDatum& d, std::vector<MultiPoly> candidates);

/// Q = product of all hyperplane forms.
MultiPoly anti_invariant_Q(const CoxeterDatum& d);

/// Normalizes a linear form so its first nonzero coefficient is 1.
MultiPoly normalize_form(const MultiPoly& alpha);

/// Orthogonal reflection (in the substitution convention) whose mirror is
/// the kernel of the linear form with coefficient vector `a`.
ScalarMatrix reflection_matrix(const ScalarMatrix& gram_A, const std::vector<Scalar>& a);

/// Coefficient vector of a linear form.
std::vector<Scalar> form_coefficients(const MultiPoly& alpha);

/// Minimal polynomial of 2cos(pi/(2m)) for 3 <= m <= 12.
UPoly dihedral_minimal_polynomial(unsigned m);

/// Exact univariate rational function num/den in t.
struct RationalFunction {
  UPoly num;
  UPoly den;
  bool operator==(const RationalFunction& o) const { return num * o.den == o.num * den; }
  /// First n power-series coefficients (den(0) must be nonzero).
  std::vector<mpq_class> series(size_t n) const;
};

/// (sum_j t^g_j) / prod_i (1 - t^d_i).
RationalFunction poincare_closed_form(const std::vector<unsigned>& generator_degrees,
                                      const std::vector<unsigned>& ring_degrees);

}  // namespace coxsaito
