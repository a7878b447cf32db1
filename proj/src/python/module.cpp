#include "tetra/crystal.hpp"
#include "tetra/equations.hpp"
#include "tetra/golden.hpp"
#include "tetra/ops3d.hpp"
#include "tetra/pbw.hpp"
#include "tetra/zrec.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace tetra;

namespace {

QVariant variant(const std::string& v) {
  if (v == "q") return QVariant::Q;
  if (v == "qinv") return QVariant::QInv;
  if (v == "q2") return QVariant::Q2;
  if (v == "negq") return QVariant::NegQ;
  throw py::value_error("variant must be q, qinv, q2 or negq");
}

py::dict report(const VerificationReport& r) {
  py::list mm;
  for (const auto& m : r.mismatches) mm.append(py::make_tuple(m.in, m.out, m.lhs.str(), m.rhs.str()));
  py::dict d;
  d["name"] = r.name;
  d["bound"] = r.cutoff;
  d["inputs"] = r.inputs;
  d["checked"] = r.checked;
  d["status"] = r.status.empty() ? (r.pass() ? "pass" : "fail") : r.status;
  d["passed"] = r.pass();
  d["mismatches"] = mm;
  return d;
}

}  // namespace

PYBIND11_MODULE(_tetra, m) {
  m.doc() = "Exact 3D operators and their equations";

  py::class_<QCoeff>(m, "QCoeff")
      .def(py::init([](long long v) { return QCoeff(v); }))
      .def_static("parse", [](const std::string& t) { return QCoeff::parse(t); })
      .def("__str__", &QCoeff::str)
      .def("__repr__", [](const QCoeff& c) { return "QCoeff('" + c.str() + "')"; })
      .def("__eq__", [](const QCoeff& a, const QCoeff& b) { return a == b; })
      .def("__add__", [](const QCoeff& a, const QCoeff& b) { return a + b; })
      .def("__sub__", [](const QCoeff& a, const QCoeff& b) { return a - b; })
      .def("__mul__", [](const QCoeff& a, const QCoeff& b) { return a * b; })
      .def("__truediv__", [](const QCoeff& a, const QCoeff& b) { return a / b; })
      .def("is_zero", &QCoeff::is_zero)
      .def("eval", [](const QCoeff& c, std::complex<double> s) { return c.eval(s); })
      .def("crystal_limit", [](const QCoeff& c) { return c.crystal_limit().str(); });

  py::class_<SparseOp>(m, "SparseOp")
      .def_property_readonly("name", &SparseOp::name)
      .def_property_readonly("signature", [](const SparseOp& op) {
        std::string s;
        for (auto k : op.signature()) s += slot_char(k);
        return s;
      })
      .def("element", &SparseOp::element, py::arg("out"), py::arg("inp"))
      .def("column",
           [](const SparseOp& op, const MultiIndex& in) {
             std::vector<std::pair<MultiIndex, QCoeff>> v;
             for (const auto& e : op.column(in)) v.emplace_back(e.out, e.coeff);
             return v;
           })
      .def("weight_classes", &SparseOp::weight_classes)
      .def("weight_class", &SparseOp::weight_class)
      .def("block", &SparseOp::block)
      .def("dump", &SparseOp::dump);

  m.def("family", [](const std::string& n, const std::string& v) { return family(n, variant(v)); }, py::arg("name"),
        py::arg("variant") = "q");
  m.def("family_names", &family_names);
  m.def("z_gamma", [](const Index8& x) { return z_gamma(x); });
  m.def("x_oracle", [](const Index8& x) { return x_oracle(x); });

  m.def("equation_names", [] {
    std::vector<std::string> v;
    for (const auto& e : eq::registry()) v.push_back(e.name);
    return v;
  });
  m.def(
      "verify",
      [](const std::string& n, int b, int jobs) {
        VerificationReport r;
        {
          py::gil_scoped_release nogil;
          r = eq::verify(n, b, jobs);
        }
        return report(r);
      },
      py::arg("name"), py::arg("bound") = 1, py::arg("jobs") = 1);
  m.def(
      "verify_mutated",
      [](const std::string& n, int b, const std::string& kind) {
        return report(eq::verify_mutated(n, b, kind == "sign" ? eq::Mutation::Sign : eq::Mutation::Coefficient));
      },
      py::arg("name"), py::arg("bound") = 1, py::arg("kind") = "coefficient");
  m.def("relation_names", &eq::relation_names);
  m.def("verify_relation", [](const std::string& n, int b) { return report(eq::verify_relation(n, b)); },
        py::arg("name"), py::arg("bound") = 2);
  m.def("verify_involution", [](const std::string& f, int b) { return report(eq::verify_involution(f, b)); },
        py::arg("family"), py::arg("bound") = 2);

  m.def("crystal_element", &crystal::crystal_element);
  m.def("verify_combinatorial",
        [](const std::string& n, int b) { return report(crystal::verify_combinatorial(n, b)); }, py::arg("name"),
        py::arg("bound") = 1);

  m.def(
      "pbw_transition",
      [](const std::string& id, const std::vector<int>& w) {
        const auto t = pbw::transition_matrix(pbw::diagram(id), w);
        std::vector<std::tuple<MultiIndex, MultiIndex, QCoeff>> v;
        for (const auto& [k, c] : t.coeff)
          if (!c.is_zero()) v.emplace_back(k.first, k.second, c);
        return v;
      },
      py::arg("diagram"), py::arg("weight"));
  m.def("operator_for", [](const std::string& id) { return pbw::operator_for(pbw::diagram(id)); });

  m.def("selftest", [] {
    const auto o = golden::run(golden::cases(4));
    return py::make_tuple(o.total, o.failures);
  });

  py::register_exception<crystal::CrystalError>(m, "CrystalError");
}
