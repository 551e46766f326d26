// Command-line front end: group selection, invariant ingestion, suite
// execution and reports.
//
// Exit codes: 0 all checks passed, 1 a check failed, 2 configuration, parse
// or validation error, 3 internal integrity error.

#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coxsaito/dkx_cache.hpp"
#include "coxsaito/errors.hpp"
#include "coxsaito/invariants_file.hpp"
#include "coxsaito/report.hpp"
#include "coxsaito/verify.hpp"
#include "json.hpp"

namespace coxsaito::cli {

namespace {

struct GroupOptions {
  std::string type;
  unsigned rank = 0;
  unsigned dihedral_m = 0;
  std::string invariants_file;
};

struct OutputOptions {
  std::string format = "text";
  std::string out;
};

void add_group_options(CLI::App* cmd, GroupOptions& g) {
  cmd->add_option("--type", g.type, "Built-in group type")->check(CLI::IsMember({"A", "B", "D", "I2"}));
  cmd->add_option("--rank", g.rank, "Rank for A, B and D");
  cmd->add_option("--m", g.dihedral_m, "m for the dihedral group I2(m)");
  cmd->add_option("--invariants", g.invariants_file, "Invariants file (custom group, or invariants for --type)");
}

void add_output_options(CLI::App* cmd, OutputOptions& o) {
  cmd->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--out", o.out, "Write the report to this path instead of stdout");
}

ContextPtr make_context(const GroupOptions& g, std::string& invariants_label) {
  std::optional<CoxeterDatum> datum;
  if (!g.type.empty()) {
    if (g.type == "I2") {
      if (g.dihedral_m == 0) throw ConfigError("--type I2 needs --m");
      if (g.rank != 0 && g.rank != 2) throw ConfigError("I2(m) has rank 2");
      datum = build_datum("I2", g.dihedral_m);
    } else {
      if (g.rank == 0) throw ConfigError("--type " + g.type + " needs --rank");
      if (g.dihedral_m != 0) throw ConfigError("--m applies to --type I2 only");
      datum = build_datum(g.type, g.rank);
    }
  } else if (g.invariants_file.empty()) {
    throw ConfigError("give --type or --invariants");
  }
  if (!g.invariants_file.empty()) {
    IngestedInvariants in = ingest_invariants(g.invariants_file, datum);
    invariants_label = g.invariants_file;
    return build_context(std::move(in.datum), std::move(in.invariants));
  }
  invariants_label = "catalogue";
  BasicInvariants b = builtin_invariants(*datum);
  return build_context(std::move(*datum), std::move(b));
}

std::vector<std::string> split_suites(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

void emit(const OutputOptions& o, std::ostream& out, const std::string& text) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out, std::ios::trunc);
  if (!f) throw ConfigError("cannot write '" + o.out + "'");
  f << text;
}

const char* cache_dir() {
  const char* d = std::getenv("COXSAITO_CACHE_DIR");
  return d && *d ? d : nullptr;
}

void store_cache(const SaitoContext& ctx, unsigned loaded, std::ostream& err) {
  const char* dir = cache_dir();
  if (!dir) return;
  size_t orders = 0;
  for (unsigned k : ctx.cached_dkx_orders()) orders += k > 0;
  if (orders <= loaded) return;
  try {
    store_dkx_cache(ctx, dir);
  } catch (const ConfigError& e) {
    // the cache is an optimization; a read-only directory is not fatal
    err << "warning: " << e.what() << '\n';
  }
}

// "bk:K:I:J", "G:I:J" or "xi:M:I:J" (1-based): adds 1 to that entry.
Perturbation parse_perturbation(const std::string& spec, const SaitoContext& ctx) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  const bool keyed = !parts.empty() && (parts[0] == "bk" || parts[0] == "xi");
  if (parts.empty() || (parts[0] != "G" && !keyed) || parts.size() != (keyed ? 4u : 3u))
    throw ConfigError("--perturb expects bk:K:I:J, G:I:J or xi:M:I:J, got '" + spec + "'");
  std::vector<unsigned> n;
  for (size_t i = 1; i < parts.size(); ++i) {
    try {
      size_t used = 0;
      unsigned long v = std::stoul(parts[i], &used);
      if (used != parts[i].size()) throw std::invalid_argument(parts[i]);
      n.push_back(static_cast<unsigned>(v));
    } catch (const std::logic_error&) {
      throw ConfigError("--perturb: '" + parts[i] + "' is not a number");
    }
  }
  const size_t l = ctx.rank();
  const unsigned i = n[n.size() - 2], j = n[n.size() - 1];
  if (i < 1 || j < 1 || i > l || j > l) throw ConfigError("--perturb: entry out of range");
  const MultiPoly one = MultiPoly::constant(l, Scalar(1));
  Perturbation p;
  if (parts[0] == "G") {
    PolyMatrix g = ctx.metric_G();
    g(i - 1, j - 1) += one;
    p.metric_G = g;
  } else if (parts[0] == "bk") {
    if (n[0] < 1) throw ConfigError("--perturb: k must be at least 1");
    PolyMatrix b = ctx.bk(n[0]);
    b(i - 1, j - 1) += one;
    p.bk[n[0]] = b;
  } else {
    PolyMatrix x = ctx.xi_coeffs(n[0]);
    x(i - 1, j - 1) += one;
    p.xi[n[0]] = x;
  }
  return p;
}

int run_verify(const GroupOptions& g, const OutputOptions& o, const std::string& suites, const SuiteBounds& bounds,
               unsigned jobs, const std::string& perturb, std::ostream& out, std::ostream& err) {
  std::string label;
  ContextPtr ctx = make_context(g, label);
  const unsigned loaded = cache_dir() ? load_dkx_cache(*ctx, cache_dir()) : 0;
  ContextPtr run_ctx = perturb.empty() ? ctx : ctx->perturbed(parse_perturbation(perturb, *ctx));
  CheckReport r = run_suites(*run_ctx, split_suites(suites), bounds, jobs);
  r.invariants = perturb.empty() ? label : label + " (perturbed " + perturb + ")";
  store_cache(*ctx, loaded, err);
  emit(o, out, o.format == "json" ? render_json(r) : render_text(r));
  return r.ok() ? kExitOk : kExitCheckFailed;
}

int run_basis(const GroupOptions& g, const OutputOptions& o, unsigned m, std::ostream& os) {
  std::string label;
  ContextPtr ctx = make_context(g, label);
  const CoxeterDatum& d = ctx->datum();
  std::vector<PolyDerivation> xi = xi_basis(m, *ctx);
  auto coeff_strings = [&](const PolyDerivation& t) {
    std::vector<std::string> s;
    for (const auto& c : t.coeffs) s.push_back(c.to_string());
    return s;
  };
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["group"] = d.id();
    j["invariants"] = label;
    j["m"] = m;
    j["coxeter_number"] = d.coxeter_number;
    j["exponents"] = d.exponents;
    j["derivations"] = nlohmann::ordered_json::array();
    for (size_t i = 0; i < xi.size(); ++i) {
      nlohmann::ordered_json e;
      e["index"] = i + 1;
      e["degree"] = xi[i].degree ? nlohmann::ordered_json(*xi[i].degree) : nlohmann::ordered_json(nullptr);
      e["coefficients"] = coeff_strings(xi[i]);
      j["derivations"].push_back(std::move(e));
    }
    emit(o, os, j.dump(2) + "\n");
    return kExitOk;
  }
  std::ostringstream out;
  const auto names = default_variable_names(d.rank);
  out << "xi^(" << m << ") for " << d.id() << " (h = " << d.coxeter_number << ", exponents";
  for (unsigned e : d.exponents) out << ' ' << e;
  out << ")\n";
  for (size_t i = 0; i < xi.size(); ++i) {
    out << "xi^(" << m << ")_" << i + 1 << "  degree "
        << (xi[i].degree ? std::to_string(*xi[i].degree) : std::string("undefined")) << '\n';
    auto cs = coeff_strings(xi[i]);
    for (size_t a = 0; a < cs.size(); ++a) out << "  d/d" << names[a] << ": " << cs[a] << '\n';
  }
  emit(o, os, out.str());
  return kExitOk;
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const ValidationError*>(&e) ||
      dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const UnsupportedType*>(&e) ||
      dynamic_cast<const RankOutOfRange*>(&e))
    return kExitConfig;
  return kExitIntegrity;
}

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification of the contact-order and Hodge filtration machinery for Coxeter arrangements"};
  app.name("coxsaito");
  app.require_subcommand(1);

  GroupOptions group;
  OutputOptions output;
  std::string suites;
  SuiteBounds bounds;
  unsigned jobs = 1;
  unsigned order = 0;
  std::string perturb;

  CLI::App* verify = app.add_subcommand("verify", "Run check suites and report");
  add_group_options(verify, group);
  add_output_options(verify, output);
  verify->add_option("--suite", suites, "Comma-separated subset of: bk,connection,basis,hodge,flat");
  verify->add_option("--kmax", bounds.k_max, "Largest k for B^(k) and the basis recursion")->capture_default_str();
  verify->add_option("--mmax", bounds.m_max, "Largest contact order m")->capture_default_str();
  verify->add_option("--pmax", bounds.p_max, "Largest Hodge index p")->capture_default_str();
  verify->add_option("--jobs", jobs, "Suites run concurrently")->capture_default_str();
  verify->add_option("--perturb", perturb, "Mutation testing: add 1 to entry bk:K:I:J, G:I:J or xi:M:I:J");

  CLI::App* basis = app.add_subcommand("basis", "Print the basis xi^(m) with degrees");
  add_group_options(basis, group);
  add_output_options(basis, output);
  basis->add_option("--order", order, "Contact order m (also -m)")->required();

  // CLI11 treats -m and --m as one name; "-m" is the contact order and
  // "--m" the dihedral parameter, so the short form is rewritten first.
  std::vector<std::string> args;
  for (auto it = argv.rbegin(); it != argv.rend(); ++it) {
    std::string a = *it;
    if (a == "-m") a = "--order";
    else if (a.rfind("-m", 0) == 0 && a.size() > 2 && a[2] != '-') a = "--order=" + a.substr(2);
    args.push_back(a);
  }

  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*verify) return run_verify(group, output, suites, bounds, jobs, perturb, out, err);
    return run_basis(group, output, order, out);
  } catch (const Error& e) {
    err << "error (" << e.kind() << "): " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace coxsaito::cli
