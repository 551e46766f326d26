#pragma once

// Deterministic random generators for the property suites.

#include <random>
#include <vector>

#include "coxsaito/fraction.hpp"
#include "coxsaito/poly.hpp"

namespace coxsaito::testing {

class Gen {
 public:
  explicit Gen(uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  mpq_class rational(long bound = 9) {
    long den = integer(1, bound);
    mpq_class q(integer(-bound, bound), den);
    q.canonicalize();
    return q;
  }

  Scalar scalar(const FieldContext* f, long bound = 9) {
    if (!f) return Scalar(rational(bound));
    std::vector<mpq_class> c;
    for (int i = 0; i < f->degree(); ++i) c.push_back(rational(bound));
    return Scalar(f, std::move(c));
  }

  Scalar nonzero_scalar(const FieldContext* f, long bound = 9) {
    for (;;) {
      Scalar s = scalar(f, bound);
      if (!s.is_zero()) return s;
    }
  }

  /// Random homogeneous polynomial of the given degree with up to `max_terms` terms.
  MultiPoly homogeneous(size_t nvars, unsigned degree, size_t max_terms, const FieldContext* f = nullptr) {
    std::vector<Term> terms;
    size_t n = static_cast<size_t>(integer(1, static_cast<long>(max_terms)));
    for (size_t k = 0; k < n; ++k) {
      Monomial m;
      unsigned left = degree;
      for (size_t i = 0; i + 1 < nvars; ++i) {
        unsigned e = static_cast<unsigned>(integer(0, left));
        m.e[i] = static_cast<uint16_t>(e);
        left -= e;
      }
      m.e[nvars - 1] = static_cast<uint16_t>(left);
      m.deg = degree;
      terms.push_back({m, scalar(f, 5)});
    }
    return MultiPoly(nvars, std::move(terms));
  }

  MultiPoly nonzero_homogeneous(size_t nvars, unsigned degree, size_t max_terms) {
    for (;;) {
      MultiPoly p = homogeneous(nvars, degree, max_terms);
      if (!p.is_zero()) return p;
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace coxsaito::testing
