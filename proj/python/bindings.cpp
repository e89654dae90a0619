#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "noether/cech.hpp"
#include "noether/error.hpp"
#include "noether/etale.hpp"
#include "noether/groebner.hpp"
#include "noether/job.hpp"
#include "noether/ring.hpp"

namespace py = pybind11;
using namespace noether;

namespace {

std::string run_text(const std::string& text, bool timings) {
  JobSpec job;
  try {
    job = parse_job(text);
  } catch (const Error& e) {
    return error_report("", e).to_json(timings).dump();
  }
  return run_job(job).to_json(timings).dump();
}

std::vector<std::string> groebner(const std::string& field, const std::vector<std::string>& vars,
                                  const std::vector<std::string>& generators, const std::string& order) {
  RingPtr ring = PresentedRing::parse(Field::parse(field), vars, {}, {}, MonomialOrder::parse(order));
  auto basis = groebner_basis(IdealHandle::parse(ring, generators));
  std::vector<std::string> out;
  for (const auto& p : basis) out.push_back(ring->format(p));
  return out;
}

bool member(const std::string& field, const std::vector<std::string>& vars,
            const std::vector<std::string>& generators, const std::string& poly,
            const std::vector<std::string>& inverted) {
  RingPtr ring = PresentedRing::parse(Field::parse(field), vars, {}, inverted);
  return ideal_membership(ring->parse_polynomial(poly), IdealHandle::parse(ring, generators));
}

std::map<int, std::size_t> twisted(int n, int d) { return twisted_cohomology_dims(TwistData{n, d, 0}).dims; }

py::dict tower(int depth, const std::string& field, const std::string& rule) {
  auto rep = run_tower_suite(depth, Field::parse(field), parse_exponent_rule(rule));
  py::dict out;
  out["passed"] = rep.passed();
  out["strict_inclusions"] = rep.strict_inclusions;
  out["chain"] = rep.chain;
  out["failed_level"] = rep.failed_level ? py::object(py::int_(*rep.failed_level)) : py::object(py::none());
  out["failure"] = rep.failure;
  return out;
}

}  // namespace

PYBIND11_MODULE(_noether, m) {
  m.doc() = "Sheaves of ideals, Cech cohomology, Baer and etale checks";
  m.attr("__version__") = NOETHER_VERSION;

  // Later registrations are tried first, so the subclasses win over the base.
  auto base = py::register_exception<Error>(m, "NoetherError");
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<ValidationError>(m, "ValidationError", base);
  py::register_exception<DomainError>(m, "DomainError", base);
  py::register_exception<CapabilityError>(m, "CapabilityError", base);
  py::register_exception<ResourceError>(m, "ResourceError", base);
  py::register_exception<OracleError>(m, "OracleError", base);

  m.def("run_job_json", &run_text, py::arg("job"), py::arg("timings") = false,
        py::call_guard<py::gil_scoped_release>(),
        "Runs a job given as JSON text and returns the report as JSON text.");
  m.def("render_text", [](const std::string& report) { return render_text(Json::parse(report)); },
        py::arg("report"));
  m.def("command_names", [] {
    std::vector<std::string> out;
    for (const auto& c : command_table()) out.push_back(c.name);
    return out;
  });
  m.def("groebner_basis", &groebner, py::arg("field"), py::arg("vars"), py::arg("generators"),
        py::arg("order") = "degrevlex");
  m.def("ideal_membership", &member, py::arg("field"), py::arg("vars"), py::arg("generators"),
        py::arg("poly"), py::arg("inverted") = std::vector<std::string>{});
  m.def("twisted_cohomology_dims", &twisted, py::arg("n"), py::arg("d"));
  m.def("run_tower_suite", &tower, py::arg("depth"), py::arg("field") = "q", py::arg("rule") = "power");
}
