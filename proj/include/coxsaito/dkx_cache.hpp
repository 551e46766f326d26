#pragma once

#include <string>

#include "coxsaito/saito.hpp"

namespace coxsaito {

/// Content address of a context's D^k[X] tables: group id plus a hash of the
/// canonical rendering of the datum and invariants.
std::string dkx_cache_key(const SaitoContext& ctx);

/// Loads a persisted D^k[X] table from `dir` into the context's cache.
/// Missing, foreign or corrupted files are ignored.  Returns the number of
/// orders loaded.
unsigned load_dkx_cache(const SaitoContext& ctx, const std::string& dir);

/// Writes every cached D^k[X] order to `dir` (created if needed).  Returns
/// the file path.  Throws ConfigError when the file cannot be written.
std::string store_dkx_cache(const SaitoContext& ctx, const std::string& dir);

}  // namespace coxsaito
