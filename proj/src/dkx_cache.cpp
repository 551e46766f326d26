#include "coxsaito/dkx_cache.hpp"

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "coxsaito/errors.hpp"
#include "coxsaito/invariants_file.hpp"

namespace coxsaito {

namespace {

// Table layout: a header "coxsaito-dkx 1 <key> <checksum>" followed by, per
// order k, a line "k <k>" and one line per D^k[X_i]:
//   P <nterms> (<e1,..,el> <c0,..,cd-1>)* (F <power> P <nterms> ...)*
constexpr const char* kMagic = "coxsaito-dkx";
constexpr int kVersion = 1;

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_poly(std::ostream& out, const MultiPoly& p) {
  out << "P " << p.size();
  for (const auto& t : p.terms()) {
    out << ' ';
    for (size_t i = 0; i < p.nvars(); ++i) out << (i ? "," : "") << t.mono.e[i];
    out << ' ';
    auto c = t.coeff.coords();
    for (size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << c[i].get_str();
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

// Throws std::runtime_error on malformed input; the caller discards the file.
MultiPoly read_poly(std::istream& in, size_t nvars, const FieldContext* field) {
  std::string tag;
  size_t n = 0;
  if (!(in >> tag >> n) || tag != "P") throw std::runtime_error("bad polynomial");
  std::vector<Term> terms;
  for (size_t t = 0; t < n; ++t) {
    std::string es, cs;
    if (!(in >> es >> cs)) throw std::runtime_error("truncated term");
    auto ev = split(es, ',');
    if (ev.size() != nvars) throw std::runtime_error("bad exponent vector");
    Monomial m;
    for (size_t i = 0; i < nvars; ++i) {
      m.e[i] = static_cast<uint16_t>(std::stoul(ev[i]));
      m.deg += m.e[i];
    }
    std::vector<mpq_class> coords;
    for (const auto& c : split(cs, ',')) {
      mpq_class q;
      if (q.set_str(c, 10) != 0 || q.get_den() == 0) throw std::runtime_error("bad coefficient");
      q.canonicalize();
      coords.push_back(q);
    }
    const size_t d = field ? static_cast<size_t>(field->degree()) : 1;
    if (coords.size() != d) throw std::runtime_error("bad coefficient length");
    terms.push_back({m, field ? Scalar(field, std::move(coords)) : Scalar(coords[0])});
  }
  return MultiPoly(nvars, std::move(terms));
}

std::string body_of(const SaitoContext& ctx) {
  std::ostringstream out;
  for (unsigned k : ctx.cached_dkx_orders()) {
    if (k == 0) continue;
    out << "k " << k << '\n';
    for (const auto& f : ctx.dkx(k)) {
      write_poly(out, f.numerator());
      for (const auto& [g, e] : f.denominator_factors()) {
        out << " F " << e << ' ';
        write_poly(out, g);
      }
      out << '\n';
    }
  }
  return out.str();
}

std::string path_for(const SaitoContext& ctx, const std::string& dir) {
  return (std::filesystem::path(dir) / (dkx_cache_key(ctx) + ".dkx")).string();
}

}  // namespace

std::string dkx_cache_key(const SaitoContext& ctx) {
  std::string id = ctx.datum().id();
  for (char& c : id)
    if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
  return id + "-" + hex(fnv1a(format_invariants_file(ctx.datum(), ctx.invariants().polys())));
}

unsigned load_dkx_cache(const SaitoContext& ctx, const std::string& dir) {
  std::ifstream in(path_for(ctx, dir));
  if (!in) return 0;
  std::string header;
  std::getline(in, header);
  std::istringstream hs(header);
  std::string magic, key, sum;
  int version = 0;
  if (!(hs >> magic >> version >> key >> sum) || magic != kMagic || version != kVersion || key != dkx_cache_key(ctx))
    return 0;
  std::stringstream rest;
  rest << in.rdbuf();
  const std::string body = rest.str();
  if (hex(fnv1a(body)) != sum) return 0;

  const size_t l = ctx.rank();
  const FieldContext* field = ctx.datum().field_ptr();
  std::vector<std::pair<unsigned, std::vector<FactoredFraction>>> tables;
  try {
    std::istringstream bs(body);
    std::string line;
    while (std::getline(bs, line)) {
      std::istringstream ls(line);
      std::string tag;
      unsigned k = 0;
      if (!(ls >> tag >> k) || tag != "k" || k == 0) return 0;
      std::vector<FactoredFraction> v;
      for (size_t i = 0; i < l; ++i) {
        if (!std::getline(bs, line)) return 0;
        std::istringstream fs(line);
        MultiPoly num = read_poly(fs, l, field);
        std::vector<FactoredFraction::Factor> factors;
        std::string f;
        while (fs >> f) {
          unsigned e = 0;
          if (f != "F" || !(fs >> e) || e == 0) return 0;
          factors.emplace_back(read_poly(fs, l, field), e);
        }
        v.emplace_back(std::move(num), Scalar(1), std::move(factors));
      }
      tables.emplace_back(k, std::move(v));
    }
  } catch (const std::exception&) {
    return 0;
  }
  for (auto& [k, v] : tables) ctx.preload_dkx(k, std::move(v));
  return static_cast<unsigned>(tables.size());
}

std::string store_dkx_cache(const SaitoContext& ctx, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const std::string path = path_for(ctx, dir);
  const std::string body = body_of(ctx);
  // write then rename so concurrent readers never see a partial table
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw ConfigError("cannot write cache file '" + tmp + "'");
    out << kMagic << ' ' << kVersion << ' ' << dkx_cache_key(ctx) << ' ' << hex(fnv1a(body)) << '\n' << body;
    if (!out) throw ConfigError("cannot write cache file '" + tmp + "'");
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw ConfigError("cannot write cache file '" + path + "': " + ec.message());
  return path;
}

}  // namespace coxsaito
