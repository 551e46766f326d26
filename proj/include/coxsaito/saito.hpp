#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "coxsaito/coxeter.hpp"
#include "coxsaito/fraction.hpp"

namespace coxsaito {

/// Which basis a derivation is written in: X-frame means sum c_i d/dX_i,
/// P-frame means sum c_i d/dP_i.
enum class Frame { X, P };

struct PolyDerivation {
  Frame frame = Frame::X;
  std::vector<FactoredFraction> coeffs;
  /// Degree q of the derivation (theta(S_1) in S_q); nullopt when the
  /// X-frame coefficients are zero, not homogeneous or of mixed degree.
  std::optional<int> degree;
};

/// Values injected into a context by mutation tests.  Entries are 1-based
/// keys for B^(k) and xi^(m); the metric replaces G as a whole.
struct Perturbation {
  std::optional<PolyMatrix> metric_G;
  std::map<unsigned, PolyMatrix> bk;
  std::map<unsigned, PolyMatrix> xi;  // X-frame coefficient matrices
};

/// Everything derived from one (group, invariants) pair.
///
/// Immutable after construction apart from internal caches.  Cache fills are
/// value-identical whichever thread wins, so a context can be shared freely
/// across threads.
class SaitoContext {
 public:
  static std::shared_ptr<const SaitoContext> build(CoxeterDatum datum, BasicInvariants invariants);
  /// Copy of this context with some cached values replaced.
  std::shared_ptr<const SaitoContext> perturbed(const Perturbation& p) const;

  const CoxeterDatum& datum() const { return datum_; }
  const BasicInvariants& invariants() const { return inv_; }
  size_t rank() const { return datum_.rank; }
  const MultiPoly& Q() const { return q_; }
  const std::vector<MultiPoly>& primes() const { return datum_.hyperplane_forms; }

  /// J(P)(i, j) = dP_j / dX_i.
  const PolyMatrix& jac_P() const { return jac_; }
  const FracMatrix& jac_P_inv() const { return jac_inv_; }
  /// G = J(P)^T A J(P), the Gram matrix of dP_1..dP_l.
  const PolyMatrix& metric_G() const { return metric_; }
  const PolyMatrix& gram_poly() const { return gram_poly_; }

  /// D[f] = sum_i D[X_i] df/dX_i with D = d/dP_l.
  FactoredFraction apply_D(const FactoredFraction& f) const;
  FracMatrix apply_D(const FracMatrix& m) const;
  /// d/dP_k applied to f (k is 0-based here).
  FactoredFraction apply_dP(size_t k, const FactoredFraction& f) const;

  /// D^k[X] (cached).
  const std::vector<FactoredFraction>& dkx(unsigned k) const;
  /// J(D^k[X]) and its inverse (cached).
  const FracMatrix& jac_dkx(unsigned k) const;
  const FracMatrix& jac_dkx_inv(unsigned k) const;
  /// B^(k), certified polynomial; B^(0) = I.  Throws NonPolynomialEntry.
  const PolyMatrix& bk(unsigned k) const;
  /// Gamma*_k = J(P)^T A (d/dP_k)[J(P)], 1 <= k <= l.  Throws NonPolynomialEntry.
  const PolyMatrix& christoffel_star(unsigned k) const;
  /// Gamma_l^T with Gamma_l = -G^{-1} Gamma*_l (cached).
  const FracMatrix& connection_l_transposed() const;
  const FracMatrix& metric_inverse() const;
  /// X-frame coefficient matrix of xi^(m): column j holds xi^(m)_j.
  const PolyMatrix& xi_coeffs(unsigned m) const;

  /// Seeds D^k[X] from a persisted table.  The value must be what dkx(k)
  /// computes; like every cache fill the first writer wins.
  void preload_dkx(unsigned k, std::vector<FactoredFraction> v) const;
  /// Orders k whose D^k[X] is currently cached, ascending.
  std::vector<unsigned> cached_dkx_orders() const;

 private:
  SaitoContext() = default;
  template <class V>
  struct Cache {
    std::mutex mu;
    std::map<unsigned, V> values;
  };
  template <class V, class F>
  const V& cached(Cache<V>& c, unsigned key, F&& compute) const;
  template <class V>
  static void copy_cache(const Cache<V>& from, Cache<V>& to);

  CoxeterDatum datum_;
  BasicInvariants inv_;
  MultiPoly q_;
  PolyMatrix jac_;
  FracMatrix jac_inv_;
  PolyMatrix metric_;
  PolyMatrix gram_poly_;
  std::vector<FactoredFraction> d_of_x_;

  mutable Cache<std::vector<FactoredFraction>> dkx_;
  mutable Cache<FracMatrix> jac_dkx_;
  mutable Cache<FracMatrix> jac_dkx_inv_;
  mutable Cache<PolyMatrix> bk_;
  mutable Cache<PolyMatrix> gamma_star_;
  mutable Cache<FracMatrix> misc_;  // 0: Gamma_l^T, 1: G^{-1}
  mutable Cache<PolyMatrix> xi_;
};

using ContextPtr = std::shared_ptr<const SaitoContext>;

ContextPtr build_context(CoxeterDatum datum, BasicInvariants invariants);

PolyDerivation make_derivation(Frame frame, std::vector<FactoredFraction> coeffs, const SaitoContext& ctx);
/// Column j of a coefficient matrix as a derivation.
PolyDerivation derivation_from_column(Frame frame, const FracMatrix& coeffs, size_t j, const SaitoContext& ctx);

/// Rewrites theta in the other basis.  d/dX = (d/dP) J(P)^T, so P-frame
/// coefficients are J(P)^T times the X-frame ones.
PolyDerivation frame_convert(const PolyDerivation& theta, Frame target, const SaitoContext& ctx);

/// theta(f) for an X- or P-frame derivation.
FactoredFraction derivation_apply(const PolyDerivation& theta, const FactoredFraction& f, const SaitoContext& ctx);

FactoredFraction primitive_derivation_apply(const FactoredFraction& f, const SaitoContext& ctx);
const std::vector<FactoredFraction>& dkx(unsigned k, const SaitoContext& ctx);
const PolyMatrix& bk_matrix(unsigned k, const SaitoContext& ctx);
const PolyMatrix& christoffel_star(unsigned k, const SaitoContext& ctx);

/// Covariant derivative along D of a P-frame derivation:
/// coefficients c -> Gamma_l^T c + D[c].
PolyDerivation nabla_D(const PolyDerivation& theta, const SaitoContext& ctx);

/// xi^(m)_1..xi^(m)_l in the X-frame with certified polynomial coefficients.
std::vector<PolyDerivation> xi_basis(unsigned m, const SaitoContext& ctx);

/// H_k = (-1)^k (B^(1))^{-1} G (B^(2))^{-1} G ... (B^(k))^{-1} G, H_0 = I.
FracMatrix hk_product(unsigned k, const SaitoContext& ctx);

/// Lie bracket [theta, eta], computed in the X-frame.
PolyDerivation derivation_bracket(const PolyDerivation& theta, const PolyDerivation& eta, const SaitoContext& ctx);

/// The primitive derivation itself, in the P-frame (coefficient vector e_l).
PolyDerivation primitive_derivation(const SaitoContext& ctx);
/// d/dP_i (0-based) in the P-frame.
PolyDerivation coordinate_field(size_t i, const SaitoContext& ctx);

/// True when theta (X-frame, polynomial coefficients) commutes with the
/// substitution action of M: c(M x) = M^{-1} c(x).
bool derivation_is_invariant(const PolyDerivation& theta, const ScalarMatrix& m);

/// P-frame coefficient matrix of a derivation row given by X-frame coefficients.
FracMatrix to_p_frame(const FracMatrix& x_coeffs, const SaitoContext& ctx);

}  // namespace coxsaito
