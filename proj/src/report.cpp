#include "coxsaito/report.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace coxsaito {

namespace {

double total_ms(const CheckReport& r) {
  double ms = 0;
  for (const auto& c : r.checks) ms += c.ms;
  return ms;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

std::string render_json(const CheckReport& r, int indent) {
  nlohmann::ordered_json j;
  j["group"] = r.group;
  j["field"] = r.field;
  j["invariants"] = r.invariants;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["paper_ref"] = c.paper_ref;
    e["status"] = status_name(c.status);
    if (c.witness) e["witness"] = *c.witness;
    e["ms"] = c.ms;
    j["checks"].push_back(std::move(e));
  }
  j["summary"] = {{"total", r.checks.size()},          {"pass", r.count(Status::Pass)},
                  {"fail", r.count(Status::Fail)},      {"skipped", r.count(Status::Skipped)},
                  {"ms", total_ms(r)},                  {"ok", r.ok()}};
  return j.dump(indent) + "\n";
}

std::string render_text(const CheckReport& r) {
  std::ostringstream out;
  out << "group " << r.group << "  field " << r.field << "  invariants " << r.invariants << '\n';
  size_t width = 0;
  for (const auto& c : r.checks) width = std::max(width, c.name.size());
  for (const auto& c : r.checks) {
    std::string tag = c.status == Status::Pass ? "PASS" : c.status == Status::Fail ? "FAIL" : "SKIP";
    out << tag << "  " << c.name << std::string(width - c.name.size(), ' ') << "  " << fixed(c.ms, 1) << " ms  "
        << c.paper_ref << '\n';
    if (c.witness) out << "      " << (c.status == Status::Fail ? "witness: " : "reason: ") << *c.witness << '\n';
  }
  out << "summary: " << r.count(Status::Pass) << " pass, " << r.count(Status::Fail) << " fail, "
      << r.count(Status::Skipped) << " skipped of " << r.checks.size() << " checks in " << fixed(total_ms(r) / 1000, 2)
      << " s\n";
  return out.str();
}

}  // namespace coxsaito
