#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pilp/cli.hpp"
#include "pilp/eqp.hpp"
#include "pilp/error.hpp"
#include "pilp/hull.hpp"
#include "pilp/io.hpp"
#include "pilp/oracle.hpp"

namespace py = pybind11;
using namespace pilp;

namespace {

Integer to_integer(const py::int_& v) { return Integer(py::str(v).cast<std::string>()); }

py::object from_integer(const Integer& v) {
  return py::reinterpret_steal<py::object>(PyLong_FromString(to_string(v).c_str(), nullptr, 10));
}

py::object from_extended(const ExtendedInteger& v) { return v ? from_integer(*v) : py::none(); }

py::object from_rational(const Rational& q) {
  static const py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(from_integer(q.get_num()), from_integer(q.get_den()));
}

py::list from_points(const std::vector<IntVector>& pts) {
  py::list out;
  for (const auto& x : pts) {
    py::tuple tup(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) tup[k] = from_integer(x[k]);
    out.append(tup);
  }
  return out;
}

InferenceConfig make_config(std::size_t d_max, unsigned deg_max, std::size_t validate_count, const py::int_& t_start,
                            const py::int_& t_cap) {
  InferenceConfig cfg;
  cfg.d_max = d_max;
  cfg.deg_max = deg_max;
  cfg.validate_count = validate_count;
  cfg.t_start = to_integer(t_start);
  cfg.t_cap = to_integer(t_cap);
  return cfg;
}

QuasiPolynomial unwrap(const InferenceResult& res) {
  if (const auto* nf = std::get_if<NoFit>(&res)) {
    throw py::value_error("NO_FIT: " + nf->reason + " (" + std::to_string(nf->samples_evaluated) + " samples)");
  }
  return std::get<EqpCertificate>(res).qp;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Parametric integer linear programs: oracle, reductions and eventual quasi-polynomials";

  static py::exception<Error> base(m, "Error");
  static py::exception<ParseError> parse_error(m, "ParseError", base.ptr());
  static py::exception<UnboundedError> unbounded_error(m, "UnboundedError", base.ptr());
  static py::exception<FormError> form_error(m, "FormError", base.ptr());
  static py::exception<PreconditionError> precondition_error(m, "PreconditionError", base.ptr());
  static py::exception<OutOfRangeError> out_of_range_error(m, "OutOfRangeError", base.ptr());
  static py::exception<LimitExceeded> limit_exceeded(m, "LimitExceeded", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::set_error(parse_error, e.what());
    } catch (const UnboundedError& e) {
      py::set_error(unbounded_error, e.what());
    } catch (const FormError& e) {
      py::set_error(form_error, e.what());
    } catch (const PreconditionError& e) {
      py::set_error(precondition_error, e.what());
    } catch (const OutOfRangeError& e) {
      py::set_error(out_of_range_error, e.what());
    } catch (const LimitExceeded& e) {
      py::set_error(limit_exceeded, e.what());
    } catch (const Error& e) {
      py::set_error(base, e.what());
    }
  });

  py::class_<Pilp>(m, "Program")
      .def_static("parse", [](const std::string& text) { return io::parse_pilp(text); })
      .def_static("load", [](const std::string& path) { return io::load_pilp(path); })
      .def_property_readonly("form", [](const Pilp& p) { return std::string(to_string(p.form)); })
      .def_readonly("n", &Pilp::n)
      .def_readonly("m", &Pilp::m)
      .def("to_json", [](const Pilp& p) { return io::serialize(p); })
      .def("__eq__", [](const Pilp& a, const Pilp& b) { return a == b; });

  py::class_<QuasiPolynomial>(m, "QuasiPolynomial")
      .def_readonly("period", &QuasiPolynomial::period)
      .def_property_readonly("threshold", [](const QuasiPolynomial& q) { return from_integer(q.threshold); })
      .def_property_readonly("branches",
                             [](const QuasiPolynomial& q) {
                               std::vector<std::string> out;
                               for (const auto& b : q.branches) out.push_back(to_string(b));
                               return out;
                             })
      .def("__call__",
           [](const QuasiPolynomial& q, const py::int_& t) -> py::object {
             const ExtendedRational v = qp_eval(q, to_integer(t));
             return v ? from_rational(*v) : py::none();
           })
      .def("to_json", [](const QuasiPolynomial& q) { return io::to_json(q).dump(); })
      .def("__str__", [](const QuasiPolynomial& q) { return to_string(q); })
      .def("__repr__", [](const QuasiPolynomial& q) { return "<QuasiPolynomial " + to_string(q) + ">"; });

  m.def(
      "f_ell",
      [](const Pilp& p, const py::int_& t, std::size_t ell_max, bool distinct) {
        py::list out;
        for (const auto& v : f_ell(p, to_integer(t), ell_max, distinct).values) out.append(from_extended(v));
        return out;
      },
      py::arg("program"), py::arg("t"), py::arg("ell_max") = 1, py::arg("distinct") = false,
      "Largest ell_max objective values at t, None for missing values.");
  m.def(
      "count", [](const Pilp& p, const py::int_& t) { return from_integer(count_lattice_points(p, to_integer(t))); },
      py::arg("program"), py::arg("t"));
  m.def(
      "lattice_points", [](const Pilp& p, const py::int_& t) { return from_points(enumerate_lattice_points(p, to_integer(t)).points); },
      py::arg("program"), py::arg("t"));
  m.def(
      "hull_vertices", [](const Pilp& p, const py::int_& t) { return from_points(lattice_hull_vertices(p, to_integer(t))); },
      py::arg("program"), py::arg("t"));
  m.def(
      "infer",
      [](const Pilp& p, std::size_t ell, const std::string& mode, std::size_t d_max, unsigned deg_max,
         std::size_t validate_count, const py::int_& t_start, const py::int_& t_cap) {
        if (mode != "direct" && mode != "constructive") throw py::value_error("mode must be 'direct' or 'constructive'");
        const InferenceConfig cfg = make_config(d_max, deg_max, validate_count, t_start, t_cap);
        return unwrap(f_ell_structure(p, ell, cfg, mode == "direct" ? StructureMode::kDirect : StructureMode::kConstructive));
      },
      py::arg("program"), py::arg("ell") = 1, py::arg("mode") = "direct", py::arg("d_max") = 12, py::arg("deg_max") = 4,
      py::arg("validate_count") = 5, py::arg("t_start") = 8, py::arg("t_cap") = 1000,
      "Eventual quasi-polynomial for f_ell; raises ValueError on NO_FIT.");
  m.def(
      "infer_sequence",
      [](const py::function& f, std::size_t d_max, unsigned deg_max, std::size_t validate_count, const py::int_& t_start,
         const py::int_& t_cap) {
        const Sampler s = [&](const Integer& t) -> ExtendedInteger {
          const py::object v = f(from_integer(t));
          if (v.is_none()) return std::nullopt;
          return to_integer(v.cast<py::int_>());
        };
        return unwrap(infer_qp(s, make_config(d_max, deg_max, validate_count, t_start, t_cap)));
      },
      py::arg("sampler"), py::arg("d_max") = 12, py::arg("deg_max") = 4, py::arg("validate_count") = 5,
      py::arg("t_start") = 8, py::arg("t_cap") = 1000,
      "Fit an eventual quasi-polynomial to t -> sampler(t) (an int, or None for BOTTOM).");
  m.def(
      "hull_family",
      [](const Pilp& p) {
        const HullInference res = infer_hull_structure(p, {});
        if (const auto* nf = std::get_if<NoFit>(&res)) throw py::value_error("NO_FIT: " + nf->reason);
        const auto& fam = std::get<ParametricVertexFamily>(res);
        py::list classes;
        for (const auto& cls : fam.classes) {
          py::list vs;
          for (const auto& v : cls) {
            std::vector<std::string> coords;
            for (const auto& e : v) coords.push_back(to_string(e));
            vs.append(py::tuple(py::cast(coords)));
          }
          classes.append(vs);
        }
        py::dict out;
        out["period"] = fam.period;
        out["threshold"] = from_integer(fam.threshold);
        out["classes"] = classes;
        return out;
      },
      py::arg("program"));
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int status = cli::run(args, out, err);
        return py::make_tuple(status, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line tool in-process; returns (exit_status, stdout, stderr).");
}
