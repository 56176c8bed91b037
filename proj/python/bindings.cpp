#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jobs.hpp"
#include "kauffman/errors.hpp"
#include "kauffman/diagram.hpp"
#include "kauffman/skein.hpp"

namespace py = pybind11;
using kauffman::RingElem;

namespace {

kauffman::SkeinEngine& engine() {
  static kauffman::SkeinEngine e;
  return e;
}

std::string evaluate(const std::string& kind, const std::string& text, std::optional<int> soN, bool n2Fast,
                     bool mirror, bool normalized, bool oracleCheck, int maxCrossings) {
  kcli::JobSpec j;
  if (kind == "braid") j.kind = kcli::InputKind::Braid;
  else if (kind == "pd") j.kind = kcli::InputKind::Pd;
  else if (kind == "graph") j.kind = kcli::InputKind::Graph;
  else throw kauffman::Error(kauffman::ErrorKind::Parse, "unknown input kind '" + kind + "'");
  j.text = text;
  j.soN = soN;
  j.n2Fast = n2Fast;
  j.mirror = mirror;
  j.normalized = normalized;
  j.oracleCheck = oracleCheck;
  j.maxCrossings = maxCrossings;
  kcli::JobResult r;
  {
    py::gil_scoped_release nogil;
    r = kcli::run_job(j, engine());
  }
  return kcli::to_json(r, false).dump();
}

}  // namespace

PYBIND11_MODULE(_kauffman, m) {
  // the message starts with the error kind, e.g. "Parse: ..."
  py::register_exception<kauffman::Error>(m, "KauffmanError", PyExc_ValueError);
  py::register_exception<kcli::OracleMismatch>(m, "OracleMismatch", PyExc_RuntimeError);

  py::class_<RingElem>(m, "RingElem")
      .def(py::init<long long>(), py::arg("c") = 0)
      .def_static("parse", [](const std::string& s) { return kauffman::parse_ring(s); })
      .def_static("A", [](int e) { return RingElem::A(e); }, py::arg("e") = 1)
      .def_static("B", [](int e) { return RingElem::B(e); }, py::arg("e") = 1)
      .def_static("a", [](int e) { return RingElem::a(e); }, py::arg("e") = 1)
      .def("is_zero", &RingElem::is_zero)
      .def("mirrored", &RingElem::mirrored)
      .def("__str__", &RingElem::to_text)
      .def("__repr__", [](const RingElem& x) { return "RingElem('" + x.to_text() + "')"; })
      .def("__eq__", [](const RingElem& x, const RingElem& y) { return x == y; })
      .def("__hash__", [](const RingElem& x) { return py::hash(py::str(x.to_text())); })
      .def("__add__", [](const RingElem& x, const RingElem& y) { return x + y; })
      .def("__sub__", [](const RingElem& x, const RingElem& y) { return x - y; })
      .def("__mul__", [](const RingElem& x, const RingElem& y) { return x * y; })
      .def("__neg__", [](const RingElem& x) { return -x; })
      .def("__pow__", [](const RingElem& x, int e) { return kauffman::pow(x, e); });

  m.def("constants", [] {
    const auto& k = kauffman::constants();
    py::dict d;
    d["alpha"] = k.alpha;
    d["beta"] = k.beta;
    d["gamma"] = k.gamma;
    d["delta"] = k.delta;
    return d;
  });
  m.def("_evaluate", &evaluate, py::arg("kind"), py::arg("text"), py::arg("so_n") = py::none(),
        py::arg("n2_fast") = false, py::arg("mirror") = false, py::arg("normalized") = false,
        py::arg("oracle_check") = false, py::arg("max_crossings") = 14);
}
