#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "coxsaito/errors.hpp"
#include "coxsaito/invariants_file.hpp"
#include "coxsaito/report.hpp"
#include "coxsaito/verify.hpp"

namespace py = pybind11;
using namespace coxsaito;

namespace {

// pybind11 holders must be non-const; every bound method is const.
using Handle = std::shared_ptr<SaitoContext>;

Handle handle(ContextPtr c) { return std::const_pointer_cast<SaitoContext>(std::move(c)); }

template <class M>
std::vector<std::vector<std::string>> strings(const M& m) {
  std::vector<std::vector<std::string>> out(m.rows());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) out[i].push_back(m(i, j).to_string());
  return out;
}

Handle builtin(const std::string& type, unsigned n) {
  CoxeterDatum d = build_datum(type, n);
  BasicInvariants b = builtin_invariants(d);
  return handle(build_context(std::move(d), std::move(b)));
}

Handle from_file(const std::string& path, const std::optional<std::string>& type, unsigned n) {
  std::optional<CoxeterDatum> group;
  if (type) group = build_datum(*type, n);
  IngestedInvariants in = ingest_invariants(path, group);
  return handle(build_context(std::move(in.datum), std::move(in.invariants)));
}

Handle from_polynomials(const std::string& type, unsigned n, const std::string& text) {
  IngestedInvariants in = parse_invariants(text, build_datum(type, n));
  return handle(build_context(std::move(in.datum), std::move(in.invariants)));
}

py::dict derivation(const PolyDerivation& t) {
  py::dict d;
  d["degree"] = t.degree;
  std::vector<std::string> c;
  for (const auto& f : t.coeffs) c.push_back(f.to_string());
  d["coefficients"] = c;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact Saito structure and contact-order bases for finite Coxeter groups";

  // Library errors surface as coxsaito.Error subclasses with a `kind`
  // attribute carrying the stable tag (e.g. "JacobianCriterionFailed").
  // The type objects live as long as the interpreter, so they are leaked
  // rather than destroyed after finalization.
  static PyObject* error = py::exception<Error>(m, "Error").release().ptr();
  static PyObject* parse_error = py::exception<ParseError>(m, "ParseError", error).release().ptr();
  static PyObject* validation_error = py::exception<ValidationError>(m, "ValidationError", error).release().ptr();
  static PyObject* config_error = py::exception<ConfigError>(m, "ConfigError", error).release().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    auto raise = [](PyObject* type, const Error& e) {
      py::object exc = py::handle(type)(e.what());
      exc.attr("kind") = e.kind();
      if (auto* pe = dynamic_cast<const ParseError*>(&e)) {
        exc.attr("line") = pe->line();
        exc.attr("column") = pe->column();
      }
      PyErr_SetObject(type, exc.ptr());
    };
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      raise(parse_error, e);
    } catch (const ValidationError& e) {
      raise(validation_error, e);
    } catch (const ConfigError& e) {
      raise(config_error, e);
    } catch (const Error& e) {
      raise(error, e);
    }
  });

  py::class_<SaitoContext, Handle>(m, "Context")
      .def_static("builtin", &builtin, py::arg("type"), py::arg("n"),
                  "Catalogue invariants of A_n, B_n, D_n or I2(n)")
      .def_static("from_file", &from_file, py::arg("path"), py::arg("type") = py::none(), py::arg("n") = 0,
                  "Invariants file; with `type` the file may hold only [invariant] blocks")
      .def_static("from_polynomials", &from_polynomials, py::arg("type"), py::arg("n"), py::arg("text"),
                  "Built-in group with invariants given as [invariant] blocks")
      .def_property_readonly("group", [](const SaitoContext& c) { return c.datum().id(); })
      .def_property_readonly("rank", &SaitoContext::rank)
      .def_property_readonly("exponents", [](const SaitoContext& c) { return c.datum().exponents; })
      .def_property_readonly("coxeter_number", [](const SaitoContext& c) { return c.datum().coxeter_number; })
      .def_property_readonly("field",
                             [](const SaitoContext& c) {
                               return c.datum().field ? c.datum().field->description() : std::string("Q");
                             })
      .def("invariants",
           [](const SaitoContext& c) {
             std::vector<std::string> out;
             for (const auto& p : c.invariants().polys()) out.push_back(p.to_string());
             return out;
           })
      .def("metric", [](const SaitoContext& c) { return strings(c.metric_G()); }, "G = J(P)^T A J(P)")
      .def("dkx",
           [](const SaitoContext& c, unsigned k) {
             std::vector<std::string> out;
             for (const auto& f : c.dkx(k)) out.push_back(f.to_string());
             return out;
           },
           py::arg("k"), "D^k[X_1], ..., D^k[X_l]")
      .def("bk", [](const SaitoContext& c, unsigned k) { return strings(c.bk(k)); }, py::arg("k"), "B^(k)")
      .def("xi",
           [](const SaitoContext& c, unsigned m) {
             py::list out;
             for (const auto& t : xi_basis(m, c)) out.append(derivation(t));
             return out;
           },
           py::arg("m"), "Basis xi^(m)_j: degree and X-frame coefficients")
      .def("verify_json",
           [](const SaitoContext& c, const std::vector<std::string>& suites, unsigned k_max, unsigned m_max,
              unsigned p_max, unsigned jobs) {
             CheckReport r;
             {
               py::gil_scoped_release release;
               r = run_suites(c, suites, SuiteBounds{k_max, m_max, p_max}, jobs);
             }
             return render_json(r);
           },
           py::arg("suites") = std::vector<std::string>{}, py::arg("kmax") = 3, py::arg("mmax") = 7,
           py::arg("pmax") = 3, py::arg("jobs") = 1);

  m.def("suite_names", &suite_names);
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command line; returns (exit code, stdout, stderr)");
}
