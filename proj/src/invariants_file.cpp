#include "coxsaito/invariants_file.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "coxsaito/errors.hpp"

namespace coxsaito {

namespace {

struct Token {
  std::string text;
  int line;
  int column;
};

/// key = value entry; value tokens may span indented continuation lines.
struct Entry {
  Token key;
  std::vector<Token> values;
};

struct Section {
  Token header;
  std::vector<Entry> entries;
};

[[noreturn]] void fail(const Token& t, const std::string& what) { throw ParseError(what, t.line, t.column); }

// Splits one line into tokens: bracketed vectors "[a, b]" and ":" are single
// tokens, everything else splits on whitespace.
std::vector<Token> tokenize(const std::string& s, int line, size_t from) {
  std::vector<Token> out;
  size_t i = from;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    const int col = static_cast<int>(i) + 1;
    if (s[i] == '[') {
      size_t close = s.find(']', i);
      if (close == std::string::npos) throw ParseError("unterminated '['", line, col);
      out.push_back({s.substr(i, close - i + 1), line, col});
      i = close + 1;
    } else if (s[i] == ':') {
      out.push_back({":", line, col});
      ++i;
    } else {
      size_t j = i;
      while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != ':' && s[j] != '[') ++j;
      out.push_back({s.substr(i, j - i), line, col});
      i = j;
    }
  }
  return out;
}

std::vector<Section> split_sections(const std::string& text) {
  std::vector<Section> sections;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw.substr(0, raw.find('#'));
    if (!s.empty() && s.back() == '\r') s.pop_back();
    size_t first = s.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const int col = static_cast<int>(first) + 1;
    if (first == 0 && s[0] == '[') {
      size_t close = s.find(']', first);
      if (close == std::string::npos) throw ParseError("unterminated section header", line, col);
      if (s.find_first_not_of(" \t", close + 1) != std::string::npos)
        throw ParseError("unexpected text after section header", line, static_cast<int>(close) + 2);
      sections.push_back({{s.substr(first + 1, close - first - 1), line, col + 1}, {}});
      continue;
    }
    if (first > 0) {
      // continuation of the previous entry
      if (sections.empty() || sections.back().entries.empty())
        throw ParseError("continuation line without a preceding entry", line, col);
      auto more = tokenize(s, line, first);
      auto& v = sections.back().entries.back().values;
      v.insert(v.end(), more.begin(), more.end());
      continue;
    }
    if (sections.empty()) throw ParseError("entry outside of any section", line, col);
    size_t eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line, col);
    size_t key_end = s.find_last_not_of(" \t", eq == 0 ? 0 : eq - 1);
    if (eq == 0 || key_end == std::string::npos || key_end < first) throw ParseError("missing key", line, col);
    Entry e{{s.substr(first, key_end - first + 1), line, col}, tokenize(s, line, eq + 1)};
    sections.back().entries.push_back(std::move(e));
  }
  return sections;
}

mpq_class parse_rational(const Token& t, const std::string& text) {
  if (text.empty()) fail(t, "expected a rational number");
  mpq_class q;
  size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  bool ok = start < text.size();
  int slashes = 0;
  for (size_t i = start; i < text.size() && ok; ++i) {
    if (text[i] == '/') {
      ok = ++slashes == 1 && i > start && i + 1 < text.size();
    } else {
      ok = std::isdigit(static_cast<unsigned char>(text[i])) != 0;
    }
  }
  if (!ok) fail(t, "malformed rational '" + text + "'");
  std::string body = text[0] == '+' ? text.substr(1) : text;
  if (q.set_str(body, 10) != 0) fail(t, "malformed rational '" + text + "'");
  if (q.get_den() == 0) fail(t, "zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

Scalar parse_scalar(const Token& t, const FieldContext* field) {
  if (t.text.front() != '[') return Scalar(parse_rational(t, t.text));
  std::string inner = t.text.substr(1, t.text.size() - 2);
  std::vector<mpq_class> coords;
  std::stringstream ss(inner);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t a = item.find_first_not_of(" \t"), b = item.find_last_not_of(" \t");
    if (a == std::string::npos) fail(t, "empty coordinate in field element");
    coords.push_back(parse_rational(t, item.substr(a, b - a + 1)));
  }
  if (coords.empty()) fail(t, "empty field element");
  const int d = field ? field->degree() : 1;
  if (static_cast<int>(coords.size()) > d)
    fail(t, "field element has " + std::to_string(coords.size()) + " coordinates, field degree is " +
                std::to_string(d));
  coords.resize(static_cast<size_t>(d));
  if (!field) return Scalar(coords[0]);
  return Scalar(field, std::move(coords));
}

unsigned parse_unsigned(const Token& t) {
  if (t.text.empty() || t.text.size() > 6 ||
      !std::all_of(t.text.begin(), t.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    fail(t, "expected a nonnegative integer, got '" + t.text + "'");
  return static_cast<unsigned>(std::stoul(t.text));
}

const Token& single(const Entry& e) {
  if (e.values.size() != 1) fail(e.key, "'" + e.key.text + "' takes exactly one value");
  return e.values.front();
}

std::string joined(const Entry& e) {
  std::string s;
  for (const auto& t : e.values) s += (s.empty() ? "" : " ") + t.text;
  return s;
}

ScalarMatrix parse_square(const Entry& e, size_t rank, const FieldContext* field) {
  if (e.values.size() != rank * rank)
    fail(e.key, "'" + e.key.text + "' needs " + std::to_string(rank * rank) + " entries, got " +
                    std::to_string(e.values.size()));
  ScalarMatrix m(rank, rank, Scalar(0));
  for (size_t i = 0; i < rank * rank; ++i) m(i / rank, i % rank) = parse_scalar(e.values[i], field);
  return m;
}

FieldPtr parse_field(const Section& s) {
  std::optional<UPoly> minpoly;
  std::string description;
  for (const auto& e : s.entries) {
    if (e.key.text == "minpoly") {
      std::vector<mpq_class> c;
      for (const auto& t : e.values) c.push_back(parse_rational(t, t.text));
      UPoly p(c);
      if (p.degree() < 1) fail(e.key, "minimal polynomial must have degree >= 1");
      if (p.leading() != 1) fail(e.values.back(), "minimal polynomial must be monic");
      minpoly = p;
    } else if (e.key.text == "description") {
      description = joined(e);
    } else {
      fail(e.key, "unknown key '" + e.key.text + "' in [field]");
    }
  }
  if (!minpoly) fail(s.header, "[field] needs 'minpoly'");
  if (minpoly->degree() == 1) return nullptr;
  return std::make_shared<const FieldContext>(*minpoly, description.empty() ? "Q[t]/(p)" : description);
}

struct GroupBlock {
  std::string label;
  size_t rank = 0;
  std::vector<unsigned> exponents;
  std::optional<ScalarMatrix> gram;
  std::vector<MultiPoly> forms;
  std::vector<ScalarMatrix> generators;
};

GroupBlock parse_group(const Section& s, const FieldContext* field) {
  GroupBlock g;
  // rank first so that matrix entries can be sized regardless of key order
  for (const auto& e : s.entries)
    if (e.key.text == "rank") {
      g.rank = parse_unsigned(single(e));
      if (g.rank < 1 || g.rank > kMaxVars) fail(single(e), "rank must be between 1 and " + std::to_string(kMaxVars));
    }
  if (g.rank == 0) fail(s.header, "[group] needs 'rank'");
  for (const auto& e : s.entries) {
    const std::string& k = e.key.text;
    if (k == "rank") continue;
    if (k == "label") {
      g.label = joined(e);
    } else if (k == "exponents") {
      for (const auto& t : e.values) g.exponents.push_back(parse_unsigned(t));
    } else if (k == "gram") {
      g.gram = parse_square(e, g.rank, field);
    } else if (k == "generator") {
      g.generators.push_back(parse_square(e, g.rank, field));
    } else if (k == "form") {
      if (e.values.size() != g.rank) fail(e.key, "'form' needs " + std::to_string(g.rank) + " coefficients");
      std::vector<Scalar> a;
      for (const auto& t : e.values) a.push_back(parse_scalar(t, field));
      MultiPoly f = MultiPoly::linear(a);
      if (f.is_zero()) fail(e.key, "zero hyperplane form");
      g.forms.push_back(f);
    } else {
      fail(e.key, "unknown key '" + k + "' in [group]");
    }
  }
  if (!g.gram) fail(s.header, "[group] needs 'gram'");
  if (g.forms.empty()) fail(s.header, "[group] needs at least one 'form'");
  if (g.exponents.size() != g.rank) fail(s.header, "[group] needs 'exponents' with rank entries");
  if (g.label.empty()) g.label = "custom";
  return g;
}

MultiPoly parse_invariant(const Section& s, size_t nvars, const FieldContext* field) {
  std::vector<Term> terms;
  for (const auto& e : s.entries) {
    if (e.key.text != "term") fail(e.key, "unknown key '" + e.key.text + "' in [invariant]");
    if (e.values.size() != nvars + 2 || e.values[nvars].text != ":")
      fail(e.key, "'term' needs " + std::to_string(nvars) + " exponents, ':' and a scalar");
    Monomial m;
    for (size_t i = 0; i < nvars; ++i) {
      unsigned p = parse_unsigned(e.values[i]);
      if (p > 0xFFFF) fail(e.values[i], "exponent too large");
      m.e[i] = static_cast<uint16_t>(p);
      m.deg += p;
    }
    terms.push_back({m, parse_scalar(e.values[nvars + 1], field)});
  }
  return MultiPoly(nvars, std::move(terms));
}

std::string scalar_token(const Scalar& s) {
  if (s.is_rational()) return s.rational_part().get_str();
  std::string out = "[";
  auto c = s.coords();
  for (size_t i = 0; i < c.size(); ++i) out += (i ? ", " : "") + c[i].get_str();
  return out + "]";
}

}  // namespace

IngestedInvariants parse_invariants(const std::string& text, const std::optional<CoxeterDatum>& group) {
  std::vector<Section> sections = split_sections(text);
  const Section* field_sec = nullptr;
  const Section* group_sec = nullptr;
  std::vector<const Section*> inv_secs;
  for (const auto& s : sections) {
    const std::string& h = s.header.text;
    if (h == "field" || h == "group") {
      const Section*& slot = h == "field" ? field_sec : group_sec;
      if (slot) fail(s.header, "duplicate [" + h + "] section");
      if (!inv_secs.empty()) fail(s.header, "[" + h + "] must precede the [invariant] sections");
      slot = &s;
    } else if (h == "invariant") {
      inv_secs.push_back(&s);
    } else {
      fail(s.header, "unknown section [" + h + "]");
    }
  }

  FieldPtr field;
  if (field_sec) field = parse_field(*field_sec);
  CoxeterDatum datum;
  if (group) {
    datum = *group;
    if (field_sec) {
      const bool same = (!field && !datum.field) ||
                        (field && datum.field && field->minimal_polynomial() == datum.field->minimal_polynomial());
      if (!same) fail(field_sec->header, "[field] does not match the field of " + datum.id());
    }
    if (group_sec) fail(group_sec->header, "[group] given together with a built-in group type");
  } else {
    if (!group_sec) throw ParseError("missing [group] section (or give a built-in group type)", 1, 1);
    GroupBlock g = parse_group(*group_sec, field.get());
    std::vector<ScalarMatrix> gens = g.generators;
    if (gens.empty())
      for (const auto& f : g.forms) gens.push_back(reflection_matrix(*g.gram, form_coefficients(f)));
    datum = make_custom_datum(g.label, field, *g.gram, g.forms, gens, g.exponents);
  }

  if (inv_secs.empty()) throw ParseError("no [invariant] sections", 1, 1);
  std::vector<MultiPoly> polys;
  for (const Section* s : inv_secs) {
    MultiPoly p = parse_invariant(*s, datum.rank, datum.field_ptr());
    if (p.is_zero()) fail(s->header, "invariant is zero");
    polys.push_back(std::move(p));
  }
  BasicInvariants inv = validate_invariants(datum, std::move(polys));
  return {std::move(datum), std::move(inv)};
}

IngestedInvariants ingest_invariants(const std::string& path, const std::optional<CoxeterDatum>& group) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open invariants file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_invariants(ss.str(), group);
}

std::string format_invariants_file(const CoxeterDatum& d, const std::vector<MultiPoly>& polys) {
  std::ostringstream out;
  if (d.field) {
    out << "[field]\nminpoly =";
    for (const auto& c : d.field->minimal_polynomial().coeffs()) out << ' ' << c.get_str();
    out << "\ndescription = " << d.field->description() << "\n\n";
  }
  auto matrix = [&](const char* key, const ScalarMatrix& m) {
    out << key << " =\n";
    for (size_t i = 0; i < m.rows(); ++i) {
      out << " ";
      for (size_t j = 0; j < m.cols(); ++j) out << ' ' << scalar_token(m(i, j));
      out << '\n';
    }
  };
  out << "[group]\nlabel = " << d.id() << "\nrank = " << d.rank << "\nexponents =";
  for (unsigned m : d.exponents) out << ' ' << m;
  out << '\n';
  matrix("gram", d.gram_A);
  for (const auto& f : d.hyperplane_forms) {
    out << "form =";
    for (const auto& c : form_coefficients(f)) out << ' ' << scalar_token(c);
    out << '\n';
  }
  for (const auto& g : d.generators) matrix("generator", g);
  for (const auto& p : polys) {
    out << "\n[invariant]\n";
    for (const auto& t : p.terms()) {
      out << "term =";
      for (size_t i = 0; i < d.rank; ++i) out << ' ' << t.mono.e[i];
      out << " : " << scalar_token(t.coeff) << '\n';
    }
  }
  return out.str();
}

}  // namespace coxsaito
