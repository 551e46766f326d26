#pragma once

#include <string>

#include "coxsaito/verify.hpp"

namespace coxsaito {

/// Stable JSON schema:
///   {group, field, invariants, checks: [{name, paper_ref, status, witness?, ms}],
///    summary: {total, pass, fail, skipped, ms, ok}}
std::string render_json(const CheckReport& report, int indent = 2);

/// One line per check (status, name, identity, time) with an indented
/// witness line on failure or skip, then a summary line.  Lists the same
/// checks in the same order as render_json.
std::string render_text(const CheckReport& report);

}  // namespace coxsaito
