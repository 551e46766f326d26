#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coxsaito/saito.hpp"

namespace coxsaito {

enum class Status { Pass, Fail, Skipped };
const char* status_name(Status s);

struct CheckResult {
  std::string name;       // e.g. "bk.difference/k=2"
  std::string paper_ref;  // the identity being checked, as a citation string
  Status status = Status::Pass;
  /// Present on failure (and carries the reason when skipped).
  std::optional<std::string> witness;
  double ms = 0;
};

struct CheckReport {
  std::string group;
  std::string invariants;
  std::string field;
  std::vector<CheckResult> checks;

  size_t count(Status s) const;
  bool ok() const { return count(Status::Fail) == 0; }
};

struct ContactOrder {
  bool pass = true;
  /// lowest power of alpha_H dividing theta(alpha_H), per hyperplane in
  /// datum order; nullopt when theta(alpha_H) = 0.
  std::vector<std::optional<unsigned>> orders;
};

/// Checks theta(alpha_H) in S alpha_H^m for every hyperplane.  Throws
/// NonPolynomialCoefficients when theta has fractional X-frame coefficients.
ContactOrder contact_order_check(const PolyDerivation& theta, unsigned m, const CoxeterDatum& datum);

/// B^(k) for k <= k_max: entries D-annihilated and W-invariant (membership
/// in T), constant nonzero determinant, degree law, and
/// B^(k+1) - B^(k) = B^(1) + B^(1)^T.
std::vector<CheckResult> check_bk_matrices(const SaitoContext& ctx, unsigned k_max);

/// Metric and connection: G recomputation and symmetry, compatibility
/// d/dP_k[G] = Gamma*_k + Gamma*_k^T, Gamma*_k = -G Gamma_k against an
/// independent Koszul-formula computation, Gamma*_l = B^(1), and the
/// torsion-free symmetry of Gamma*.
std::vector<CheckResult> check_connection(const SaitoContext& ctx);

/// The xi^(m) bases for m <= m_max (contact order, determinant criterion,
/// degree law) and, for k <= k_max, the xi recursion and the two nabla_D
/// identities.
std::vector<CheckResult> check_basis(const SaitoContext& ctx, unsigned k_max, unsigned m_max);

/// Hodge filtration pieces for p <= p_max: invariance of xi^(2p-1),
/// [D, nabla_D^p xi^(2p-1)] = 0, the discriminant condition, contact order,
/// the Poincare series comparison and the H_k product devices.
std::vector<CheckResult> check_hodge(const SaitoContext& ctx, unsigned p_max);

/// det D[G] constant nonzero, D^2[G] = 0, D[G] = B^(1) + B^(1)^T, and the
/// antidiagonal closed forms of B^(k) when the invariants are flat-normalized
/// (D[G] is the antidiagonal identity); otherwise those are skipped.
std::vector<CheckResult> check_flat_structure(const SaitoContext& ctx, unsigned k_max);

struct SuiteBounds {
  unsigned k_max = 3;
  unsigned m_max = 7;
  unsigned p_max = 3;
};

/// Suite names in canonical order: bk, connection, basis, hodge, flat.
const std::vector<std::string>& suite_names();

/// Runs the named suites (all when empty) and merges results in canonical
/// order.  `jobs` > 1 runs suites concurrently on the shared context.
/// Throws ConfigError for unknown suite names or zero bounds.
CheckReport run_suites(const SaitoContext& ctx, const std::vector<std::string>& suites, const SuiteBounds& bounds,
                       unsigned jobs = 1);

}  // namespace coxsaito
