#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coxsaito/coxeter.hpp"

namespace coxsaito {

/// A validated (group, invariants) pair read from an invariants file.
struct IngestedInvariants {
  CoxeterDatum datum;
  BasicInvariants invariants;
};

/// Parses the invariants file format:
///
///     # comment
///     [field]
///     minpoly = -5 0 1            # ascending coefficients of a monic polynomial
///     description = sqrt(5)
///
///     [group]
///     label = H3
///     rank = 3
///     exponents = 1 5 9
///     gram =                      # rank x rank, row-major, continuation lines indented
///       1 0 0
///       0 1 0
///       0 0 1
///     form = 1 0 0                # one line per hyperplane
///     generator = ...             # rank x rank; optional, default: reflections in all forms
///
///     [invariant]                 # one block per P_j, ascending degree
///     term = 2 0 0 : 1            # exponent vector : scalar
///
/// Scalars are rationals ("-3/4") or coordinate vectors over the field basis
/// 1, t, t^2, ... written "[a0, a1, ...]".
///
/// When `group` is given the file may omit the [group] block (and the
/// [field] block, which must otherwise agree with the group's field).
/// Throws ParseError with line/column, ValidationError from validation.
IngestedInvariants parse_invariants(const std::string& text, const std::optional<CoxeterDatum>& group = std::nullopt);

/// Reads and parses a file; ConfigError when it cannot be opened.
IngestedInvariants ingest_invariants(const std::string& path, const std::optional<CoxeterDatum>& group = std::nullopt);

/// Writes a file that parse_invariants reads back to the same datum and
/// polynomials.
std::string format_invariants_file(const CoxeterDatum& datum, const std::vector<MultiPoly>& polys);

}  // namespace coxsaito
