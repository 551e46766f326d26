#include "coxsaito/verify.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <map>
#include <sstream>

namespace coxsaito {

namespace {

using Witness = std::optional<std::string>;

std::string entry(size_t i, size_t j) {
  return "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

class Recorder {
 public:
  template <class F>
  void run(std::string name, std::string ref, F&& check) {
    auto t0 = std::chrono::steady_clock::now();
    Witness w = check();
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    CheckResult r;
    r.name = std::move(name);
    r.paper_ref = std::move(ref);
    r.status = w ? Status::Fail : Status::Pass;
    r.witness = std::move(w);
    r.ms = ms;
    results.push_back(std::move(r));
  }
  void skip(std::string name, std::string ref, std::string reason) {
    CheckResult r;
    r.name = std::move(name);
    r.paper_ref = std::move(ref);
    r.status = Status::Skipped;
    r.witness = std::move(reason);
    results.push_back(std::move(r));
  }
  std::vector<CheckResult> results;
};

std::string suffix(const char* var, unsigned v) { return std::string("/") + var + "=" + std::to_string(v); }

Witness compare(const FracMatrix& lhs, const FracMatrix& rhs) {
  for (size_t i = 0; i < lhs.rows(); ++i)
    for (size_t j = 0; j < lhs.cols(); ++j) {
      FactoredFraction d = lhs(i, j) - rhs(i, j);
      if (!d.is_zero()) return entry(i, j) + ": lhs - rhs = " + d.simplify().to_string();
    }
  return std::nullopt;
}

Witness compare(const PolyMatrix& lhs, const PolyMatrix& rhs) {
  for (size_t i = 0; i < lhs.rows(); ++i)
    for (size_t j = 0; j < lhs.cols(); ++j) {
      MultiPoly d = lhs(i, j) - rhs(i, j);
      if (!d.is_zero()) return entry(i, j) + ": lhs - rhs = " + d.to_string();
    }
  return std::nullopt;
}

FracMatrix frac(const PolyMatrix& m) { return to_frac_matrix(m); }
FracMatrix mul(const FracMatrix& a, const FracMatrix& b) { return simplify(a * b); }

FracMatrix apply_D_times(const SaitoContext& ctx, FracMatrix m, unsigned times) {
  for (unsigned i = 0; i < times; ++i) m = ctx.apply_D(m);
  return m;
}

/// Nonzero constant value of a polynomial, or a witness.
Witness nonzero_constant(const MultiPoly& f, const std::string& what) {
  if (f.is_zero()) return what + " is zero";
  if (!f.is_constant()) return what + " is not constant: " + f.to_string();
  return std::nullopt;
}

FracMatrix p_frame(const SaitoContext& ctx, const PolyMatrix& x_coeffs) { return to_p_frame(frac(x_coeffs), ctx); }

/// Applies nabla_D to every column of a P-frame coefficient matrix.
FracMatrix nabla_columns(const SaitoContext& ctx, const FracMatrix& p_coeffs) {
  const size_t l = ctx.rank();
  FracMatrix out(l, l, FactoredFraction(l));
  for (size_t j = 0; j < l; ++j) {
    PolyDerivation d = nabla_D(derivation_from_column(Frame::P, p_coeffs, j, ctx), ctx);
    for (size_t i = 0; i < l; ++i) out(i, j) = d.coeffs[i];
  }
  return out;
}

FracMatrix poly_inverse(const SaitoContext& ctx, const PolyMatrix& m) { return adjugate_inverse(m, ctx.primes()); }

int expected_xi_degree(const CoxeterDatum& d, unsigned m, size_t j) {
  const int k = static_cast<int>(m / 2), h = static_cast<int>(d.coxeter_number);
  return m % 2 == 0 ? k * h : k * h + static_cast<int>(d.exponents[j]);
}

std::string orders_to_string(const std::vector<std::optional<unsigned>>& o) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < o.size(); ++i) {
    if (i) os << ", ";
    if (o[i])
      os << *o[i];
    else
      os << "inf";
  }
  os << "]";
  return os.str();
}

Witness contact_witness(const SaitoContext& ctx, unsigned m, unsigned order) {
  auto xi = xi_basis(m, ctx);
  for (size_t j = 0; j < xi.size(); ++j) {
    ContactOrder c = contact_order_check(xi[j], order, ctx.datum());
    if (!c.pass)
      return "xi_" + std::to_string(j + 1) + ": orders " + orders_to_string(c.orders) + " below " +
             std::to_string(order);
  }
  return std::nullopt;
}

}  // namespace

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Skipped:
      return "skipped";
  }
  return "?";
}

size_t CheckReport::count(Status s) const {
  return static_cast<size_t>(std::count_if(checks.begin(), checks.end(), [s](const CheckResult& r) { return r.status == s; }));
}

ContactOrder contact_order_check(const PolyDerivation& theta, unsigned m, const CoxeterDatum& datum) {
  if (theta.frame != Frame::X) throw NonPolynomialCoefficients("contact order needs an X-frame derivation");
  std::vector<MultiPoly> c;
  for (const auto& f : theta.coeffs) {
    auto p = f.simplify().as_polynomial();
    if (!p) throw NonPolynomialCoefficients("coefficient " + f.to_string() + " is not a polynomial");
    c.push_back(std::move(*p));
  }
  ContactOrder out;
  for (const auto& alpha : datum.hyperplane_forms) {
    std::vector<Scalar> a = form_coefficients(alpha);
    MultiPoly v(datum.rank);
    for (size_t i = 0; i < a.size(); ++i)
      if (!a[i].is_zero()) v += c[i] * a[i];
    auto o = lowest_power_in_form(v, alpha);
    if (o && *o < m) out.pass = false;
    out.orders.push_back(o);
  }
  return out;
}

std::vector<CheckResult> check_bk_matrices(const SaitoContext& ctx, unsigned k_max) {
  Recorder rec;
  const size_t l = ctx.rank();
  const auto& d = ctx.datum();
  for (unsigned k = 1; k <= k_max; ++k) {
    const PolyMatrix& b = ctx.bk(k);
    rec.run("bk.d_annihilated" + suffix("k", k), "every entry of B^(k) lies in T: D[B^(k)_ij] = 0", [&]() -> Witness {
      for (size_t i = 0; i < l; ++i)
        for (size_t j = 0; j < l; ++j) {
          FactoredFraction v = ctx.apply_D(FactoredFraction(b(i, j)));
          if (!v.is_zero()) return entry(i, j) + ": D[B_ij] = " + v.to_string();
        }
      return std::nullopt;
    });
    rec.run("bk.invariant" + suffix("k", k), "every entry of B^(k) lies in T: entries are W-invariant", [&]() -> Witness {
      for (size_t i = 0; i < l; ++i)
        for (size_t j = 0; j < l; ++j)
          for (size_t s = 0; s < d.generators.size(); ++s)
            if (b(i, j).subst_linear(d.generators[s]) != b(i, j))
              return entry(i, j) + " not fixed by generator " + std::to_string(s + 1) + ": " + b(i, j).to_string();
      return std::nullopt;
    });
    rec.run("bk.det_constant" + suffix("k", k), "det B^(k) is a nonzero constant",
            [&]() { return nonzero_constant(determinant(b), "det B^(" + std::to_string(k) + ")"); });
    rec.run("bk.degrees" + suffix("k", k), "deg B^(k)_ij = m_i + m_j - h (zero when negative)", [&]() -> Witness {
      for (size_t i = 0; i < l; ++i)
        for (size_t j = 0; j < l; ++j) {
          int want = static_cast<int>(d.exponents[i] + d.exponents[j]) - static_cast<int>(d.coxeter_number);
          const MultiPoly& e = b(i, j);
          if (e.is_zero()) continue;
          if (want < 0) return entry(i, j) + " should vanish but is " + e.to_string();
          if (!e.is_homogeneous() || static_cast<int>(*e.total_degree()) != want)
            return entry(i, j) + " is not homogeneous of degree " + std::to_string(want) + ": " + e.to_string();
        }
      return std::nullopt;
    });
    rec.run("bk.difference" + suffix("k", k), "B^(k+1) - B^(k) = B^(1) + B^(1)^T", [&]() {
      const PolyMatrix& b1 = ctx.bk(1);
      return compare(ctx.bk(k + 1) - b, b1 + b1.transpose());
    });
  }
  return rec.results;
}

std::vector<CheckResult> check_connection(const SaitoContext& ctx) {
  Recorder rec;
  const size_t l = ctx.rank();
  const PolyMatrix& g = ctx.metric_G();
  rec.run("metric.recompute", "G = J(P)^T A J(P)",
          [&]() { return compare(g, ctx.jac_P().transpose() * ctx.gram_poly() * ctx.jac_P()); });
  rec.run("metric.symmetric", "G is symmetric", [&]() { return compare(g, g.transpose()); });
  for (unsigned k = 1; k <= l; ++k) {
    rec.run("connection.metric_compatible" + suffix("k", k), "d/dP_k[G] = Gamma*_k + (Gamma*_k)^T", [&]() {
      FracMatrix lhs = frac(g).map([&](const FactoredFraction& x) { return ctx.apply_dP(k - 1, x); });
      const PolyMatrix& s = ctx.christoffel_star(k);
      return compare(lhs, frac(s + s.transpose()));
    });
  }
  // Levi-Civita symbols of the lower metric g_ij = (G^{-1})_ij in the flat
  // coordinates P, by the Koszul formula; nothing here reuses Gamma*.
  rec.run("connection.christoffel", "Gamma*_k = -G Gamma_k with Gamma_k the Levi-Civita symbols", [&]() -> Witness {
    const FracMatrix& lower = ctx.metric_inverse();
    std::vector<FracMatrix> dg;
    for (size_t t = 0; t < l; ++t)
      dg.push_back(lower.map([&](const FactoredFraction& x) { return ctx.apply_dP(t, x); }));
    // first[i][j][q] = (d_i g_jq + d_j g_iq - d_q g_ij) / 2
    auto first = [&](size_t i, size_t j, size_t q) {
      return ((dg[i](j, q) + dg[j](i, q) - dg[q](i, j)) / Scalar(2)).simplify();
    };
    FracMatrix gf = frac(g);
    for (size_t k = 0; k < l; ++k) {
      // (Gamma_k)_ij = Gamma^j_{ik} = sum_q G_jq first(i, k, q)
      FracMatrix gamma(l, l, FactoredFraction(l));
      for (size_t i = 0; i < l; ++i)
        for (size_t j = 0; j < l; ++j) {
          FactoredFraction acc(l);
          for (size_t q = 0; q < l; ++q)
            if (!g(j, q).is_zero()) acc += gf(j, q) * first(i, k, q);
          gamma(i, j) = acc.simplify();
        }
      FracMatrix lhs = -mul(gf, gamma);
      if (auto w = compare(frac(ctx.christoffel_star(static_cast<unsigned>(k + 1))), lhs))
        return "k=" + std::to_string(k + 1) + ", " + *w;
    }
    return std::nullopt;
  });
  rec.run("connection.primitive_is_b1", "Gamma*_l = B^(1)",
          [&]() { return compare(ctx.christoffel_star(static_cast<unsigned>(l)), ctx.bk(1)); });
  rec.run("connection.torsion_free", "sum_t g^kt (Gamma*_t)_ij = sum_t g^it (Gamma*_t)_kj", [&]() -> Witness {
    for (size_t i = 0; i < l; ++i)
      for (size_t j = 0; j < l; ++j)
        for (size_t k = 0; k < l; ++k) {
          MultiPoly a(l), b(l);
          for (size_t t = 0; t < l; ++t) {
            const PolyMatrix& s = ctx.christoffel_star(static_cast<unsigned>(t + 1));
            a += g(k, t) * s(i, j);
            b += g(i, t) * s(k, j);
          }
          if (a != b)
            return "indices (i,j,k) = (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                   std::to_string(k + 1) + "): difference " + (a - b).to_string();
        }
    return std::nullopt;
  });
  return rec.results;
}

std::vector<CheckResult> check_basis(const SaitoContext& ctx, unsigned k_max, unsigned m_max) {
  Recorder rec;
  const size_t l = ctx.rank();
  const auto& d = ctx.datum();
  for (unsigned m = 0; m <= m_max; ++m) {
    rec.run("basis.contact_order" + suffix("m", m), "xi^(m)_j(alpha_H) lies in S alpha_H^m",
            [&]() { return contact_witness(ctx, m, m); });
    rec.run("basis.saito_determinant" + suffix("m", m), "det of the xi^(m) coefficient matrix = c Q^m, c != 0",
            [&]() -> Witness {
              MultiPoly det = determinant(ctx.xi_coeffs(m));
              if (det.is_zero()) return std::string("determinant is zero");
              for (size_t h = 0; h < ctx.primes().size(); ++h) {
                const MultiPoly& alpha = ctx.primes()[h];
                auto [rest, k] = strip_linear_factor(det, alpha, m);
                if (k < m)
                  return "hyperplane " + alpha.to_string() + " divides the determinant only " + std::to_string(k) +
                         " times";
                det = std::move(rest);
              }
              return nonzero_constant(det, "determinant / Q^" + std::to_string(m));
            });
    rec.run("basis.degrees" + suffix("m", m), "deg xi^(m)_j = kh (m = 2k), kh + m_j (m = 2k+1)", [&]() -> Witness {
      auto xi = xi_basis(m, ctx);
      for (size_t j = 0; j < l; ++j) {
        int want = expected_xi_degree(d, m, j);
        if (xi[j].degree != want)
          return "xi_" + std::to_string(j + 1) + " has degree " +
                 (xi[j].degree ? std::to_string(*xi[j].degree) : std::string("undefined")) + ", expected " +
                 std::to_string(want);
      }
      return std::nullopt;
    });
  }
  for (unsigned k = 1; k <= k_max; ++k) {
    rec.run("basis.recursion" + suffix("k", k), "xi^(2k+1) = -xi^(2k-1) (B^(k))^{-1} G", [&]() {
      FracMatrix rhs = -mul(mul(frac(ctx.xi_coeffs(2 * k - 1)), poly_inverse(ctx, ctx.bk(k))), frac(ctx.metric_G()));
      return compare(frac(ctx.xi_coeffs(2 * k + 1)), rhs);
    });
    rec.run("basis.nabla_step" + suffix("k", k), "nabla_D xi^(2k+1) = -xi^(2k-1) (B^(k))^{-1} B^(k+1)", [&]() {
      FracMatrix lhs = nabla_columns(ctx, p_frame(ctx, ctx.xi_coeffs(2 * k + 1)));
      FracMatrix rhs =
          -mul(mul(p_frame(ctx, ctx.xi_coeffs(2 * k - 1)), poly_inverse(ctx, ctx.bk(k))), frac(ctx.bk(k + 1)));
      return compare(lhs, rhs);
    });
    rec.run("basis.nabla_power" + suffix("k", k), "nabla_D^k xi^(2k-1) = (-1)^(k-1) (d/dP) B^(k)", [&]() {
      FracMatrix c = p_frame(ctx, ctx.xi_coeffs(2 * k - 1));
      for (unsigned i = 0; i < k; ++i) c = nabla_columns(ctx, c);
      FracMatrix rhs = frac(ctx.bk(k));
      if (k % 2 == 0) rhs = -rhs;
      return compare(c, rhs);
    });
  }
  return rec.results;
}

std::vector<CheckResult> check_hodge(const SaitoContext& ctx, unsigned p_max) {
  Recorder rec;
  const size_t l = ctx.rank();
  const auto& d = ctx.datum();
  const unsigned k_cap = p_max + 1;  // highest xi^(2k-1) entering the series comparison
  for (unsigned p = 1; p <= p_max; ++p) {
    const unsigned m = 2 * p - 1;
    rec.run("hodge.invariant" + suffix("p", p), "xi^(2p-1)_j is W-invariant (lies in Der_R)", [&]() -> Witness {
      auto xi = xi_basis(m, ctx);
      for (size_t j = 0; j < l; ++j)
        for (size_t s = 0; s < d.generators.size(); ++s)
          if (!derivation_is_invariant(xi[j], d.generators[s]))
            return "xi_" + std::to_string(j + 1) + " not fixed by generator " + std::to_string(s + 1);
      return std::nullopt;
    });
    rec.run("hodge.commutes_with_D" + suffix("p", p), "[D, nabla_D^p xi^(2p-1)_j] = 0", [&]() -> Witness {
      FracMatrix c = p_frame(ctx, ctx.xi_coeffs(m));
      for (unsigned i = 0; i < p; ++i) c = nabla_columns(ctx, c);
      PolyDerivation dd = primitive_derivation(ctx);
      for (size_t j = 0; j < l; ++j) {
        PolyDerivation br = derivation_bracket(dd, derivation_from_column(Frame::P, c, j, ctx), ctx);
        for (size_t i = 0; i < l; ++i)
          if (!br.coeffs[i].is_zero())
            return "j=" + std::to_string(j + 1) + ", d/dX_" + std::to_string(i + 1) +
                   " coefficient of the bracket: " + br.coeffs[i].to_string();
      }
      return std::nullopt;
    });
    rec.run("hodge.discriminant" + suffix("p", p), "xi^(2p-1)_j(Q^2) lies in Q^2 R", [&]() -> Witness {
      auto xi = xi_basis(m, ctx);
      FactoredFraction q2(ctx.Q() * ctx.Q());
      for (size_t j = 0; j < l; ++j) {
        auto v = derivation_apply(xi[j], q2, ctx).as_polynomial();
        if (!v) return "xi_" + std::to_string(j + 1) + "(Q^2) is not a polynomial";
        MultiPoly rest = *v;
        if (rest.is_zero()) continue;
        for (const auto& alpha : ctx.primes()) {
          auto [r, k] = strip_linear_factor(rest, alpha, 2);
          if (k < 2) return "xi_" + std::to_string(j + 1) + "(Q^2) has " + alpha.to_string() + " only to power " +
                            std::to_string(k);
          rest = std::move(r);
        }
      }
      return std::nullopt;
    });
    rec.run("hodge.contact_order" + suffix("p", p), "xi^(2p-1)_j lies in D^(2p-1)",
            [&]() { return contact_witness(ctx, m, m); });
    rec.run("hodge.poincare" + suffix("p", p),
            "Poin(sum_{k>=p} T xi^(2k-1), t) = Poin(sum_j R xi^(2p-1)_j, t)", [&]() -> Witness {
              std::vector<unsigned> t_degrees, r_degrees;
              for (size_t j = 0; j < l; ++j) {
                r_degrees.push_back(d.exponents[j] + 1);
                if (j + 1 < l) t_degrees.push_back(d.exponents[j] + 1);
              }
              std::map<unsigned, std::vector<unsigned>> gens;
              for (unsigned k = p; k <= k_cap; ++k) {
                for (const auto& x : xi_basis(2 * k - 1, ctx)) {
                  if (!x.degree || *x.degree < 0)
                    return "xi^(" + std::to_string(2 * k - 1) + ") has no degree";
                  gens[k].push_back(static_cast<unsigned>(*x.degree));
                }
              }
              // terms of xi^(2k-1) with k > k_cap start at degree k_cap h + m_1
              const size_t n = k_cap * d.coxeter_number + d.exponents.front();
              std::vector<mpq_class> lhs(n, 0);
              for (const auto& [k, g] : gens) {
                auto s = poincare_closed_form(g, t_degrees).series(n);
                for (size_t i = 0; i < n; ++i) lhs[i] += s[i];
              }
              auto rhs = poincare_closed_form(gens[p], r_degrees).series(n);
              for (size_t i = 0; i < n; ++i)
                if (lhs[i] != rhs[i])
                  return "coefficient of t^" + std::to_string(i) + ": " + lhs[i].get_str() + " vs " + rhs[i].get_str();
              std::vector<unsigned> geometric = t_degrees;
              geometric.push_back(d.coxeter_number);
              if (!(poincare_closed_form(gens[p], geometric) == poincare_closed_form(gens[p], r_degrees)))
                return std::string("closed forms differ");
              return std::nullopt;
            });
    rec.run("hodge.hk_product" + suffix("k", p), "xi^(2k+1) = xi^(1) H_k", [&]() {
      return compare(frac(ctx.xi_coeffs(2 * p + 1)), mul(frac(ctx.xi_coeffs(1)), hk_product(p, ctx)));
    });
    // Entries of D^k[H_k] lie in T (they are constants only for flat
    // invariants); invertibility over T means a constant determinant.
    rec.run("hodge.hk_leading" + suffix("k", p), "D^k[H_k] is invertible over T and D^(k+1)[H_k] = 0",
            [&]() -> Witness {
              FracMatrix top = apply_D_times(ctx, hk_product(p, ctx), p);
              auto c = as_poly_matrix(top);
              if (!c) return std::string("D^k[H_k] is not polynomial");
              if (auto w = nonzero_constant(determinant(*c), "det D^k[H_k]")) return w;
              FracMatrix next = ctx.apply_D(top);
              for (size_t i = 0; i < l; ++i)
                for (size_t j = 0; j < l; ++j)
                  if (!next(i, j).is_zero()) return entry(i, j) + " of D^(k+1)[H_k] is " + next(i, j).to_string();
              return std::nullopt;
            });
  }
  return rec.results;
}

std::vector<CheckResult> check_flat_structure(const SaitoContext& ctx, unsigned k_max) {
  Recorder rec;
  const size_t l = ctx.rank();
  const auto& d = ctx.datum();
  FracMatrix dg = ctx.apply_D(frac(ctx.metric_G()));
  rec.run("flat.det_DG", "det D[G] is a nonzero constant", [&]() -> Witness {
    auto p = as_poly_matrix(dg);
    if (!p) return std::string("D[G] is not polynomial");
    return nonzero_constant(determinant(*p), "det D[G]");
  });
  rec.run("flat.second_derivative", "D^2[G] = 0", [&]() -> Witness {
    FracMatrix d2 = ctx.apply_D(dg);
    for (size_t i = 0; i < l; ++i)
      for (size_t j = 0; j < l; ++j)
        if (!d2(i, j).is_zero()) return entry(i, j) + ": " + d2(i, j).to_string();
    return std::nullopt;
  });
  rec.run("flat.DG_is_b1_symmetrized", "D[G] = B^(1) + (B^(1))^T", [&]() {
    const PolyMatrix& b1 = ctx.bk(1);
    return compare(dg, frac(b1 + b1.transpose()));
  });

  auto antidiagonal = [&](const Scalar& base, bool with_exponents) {
    PolyMatrix m = zero_poly_matrix(l, l, l);
    for (size_t i = 0; i < l; ++i) {
      size_t j = l - 1 - i;
      Scalar v = base;
      if (with_exponents) v += Scalar(static_cast<long>(d.exponents[j]), static_cast<long>(d.coxeter_number));
      m(i, j) = MultiPoly::constant(l, v);
    }
    return m;
  };
  const bool flat = !compare(dg, frac(antidiagonal(Scalar(1), false)));
  const std::string reason = "invariants not flat-normalized";
  const std::string b1_ref = "B^(1)_ij = (m_j / h) delta_{i+j,l+1}";
  const std::string bk_ref = "B^(k)_ij = ((k - 1) + m_j / h) delta_{i+j,l+1}";
  if (flat)
    rec.run("flat.b1_closed_form", b1_ref, [&]() { return compare(ctx.bk(1), antidiagonal(Scalar(0), true)); });
  else
    rec.skip("flat.b1_closed_form", b1_ref, reason);
  for (unsigned k = 1; k <= k_max; ++k) {
    const std::string name = "flat.bk_closed_form" + suffix("k", k);
    if (flat)
      rec.run(name, bk_ref, [&]() {
        return compare(ctx.bk(k), antidiagonal(Scalar(static_cast<long>(k) - 1), true));
      });
    else
      rec.skip(name, bk_ref, reason);
  }
  return rec.results;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"bk", "connection", "basis", "hodge", "flat"};
  return names;
}

CheckReport run_suites(const SaitoContext& ctx, const std::vector<std::string>& suites, const SuiteBounds& bounds,
                       unsigned jobs) {
  if (bounds.k_max < 1 || bounds.m_max < 1 || bounds.p_max < 1) throw ConfigError("bounds must be at least 1");
  const auto& all = suite_names();
  std::vector<std::string> chosen;
  for (const auto& name : all)
    if (suites.empty() || std::find(suites.begin(), suites.end(), name) != suites.end()) chosen.push_back(name);
  for (const auto& s : suites)
    if (std::find(all.begin(), all.end(), s) == all.end()) throw ConfigError("unknown suite '" + s + "'");

  auto run_one = [&ctx, &bounds](const std::string& s) -> std::vector<CheckResult> {
    if (s == "bk") return check_bk_matrices(ctx, bounds.k_max);
    if (s == "connection") return check_connection(ctx);
    if (s == "basis") return check_basis(ctx, bounds.k_max, bounds.m_max);
    if (s == "hodge") return check_hodge(ctx, bounds.p_max);
    return check_flat_structure(ctx, bounds.k_max);
  };

  std::vector<std::vector<CheckResult>> parts(chosen.size());
  if (jobs <= 1) {
    for (size_t i = 0; i < chosen.size(); ++i) parts[i] = run_one(chosen[i]);
  } else {
    std::vector<std::future<std::vector<CheckResult>>> fut;
    for (const auto& s : chosen) fut.push_back(std::async(std::launch::async, run_one, s));
    for (size_t i = 0; i < fut.size(); ++i) parts[i] = fut[i].get();
  }

  CheckReport rep;
  rep.group = ctx.datum().id();
  rep.field = ctx.datum().field ? ctx.datum().field->description() : "Q";
  for (auto& p : parts)
    for (auto& r : p) rep.checks.push_back(std::move(r));
  return rep;
}

}  // namespace coxsaito
