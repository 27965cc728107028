#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fracto/expr.hpp"
#include "fracto/independence.hpp"
#include "fracto/spacefile.hpp"
#include "fracto/sphere.hpp"
#include "fracto/zline.hpp"

namespace py = pybind11;
using namespace fracto;

namespace {

// ConvPtr is a shared_ptr-to-const, which pybind11 cannot hold directly
struct ConvHandle {
  ConvPtr p;
};

Bits to_bits(int universe, const std::vector<int>& elems) {
  return Bits::of(universe, elems);
}

std::vector<std::vector<int>> family_lists(const SetFamily& fam) {
  std::vector<std::vector<int>> out;
  out.reserve(fam.size());
  for (const auto& s : fam.members()) out.push_back(s.elements());
  return out;
}

std::vector<ConvPtr> unwrap(const std::vector<ConvHandle>& hs) {
  std::vector<ConvPtr> out;
  out.reserve(hs.size());
  for (const auto& h : hs) out.push_back(h.p);
  return out;
}

py::dict report_dict(const Report& rep) {
  py::dict d;
  d["name"] = rep.name;
  d["status"] = rep.status;
  py::dict counts;
  for (const auto& [k, v] : rep.counts) counts[py::str(k)] = v;
  d["counts"] = counts;
  d["witnesses"] = rep.witnesses;
  d["timing_ms"] = rep.timing_ms;
  d["seed"] = rep.seed;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "finite-model engine for fractoconvexities over n-ary convexities";

  py::register_exception<Error>(m, "FractoError");

  py::class_<GroundSpace>(m, "GroundSpace")
      .def(py::init<int, int>(), py::arg("size"), py::arg("arity"))
      .def_readonly("size", &GroundSpace::size)
      .def_readonly("arity", &GroundSpace::arity);

  py::class_<ConvHandle>(m, "Convexity")
      .def_property_readonly("id",
                             [](const ConvHandle& h) { return h.p->id(); })
      .def_property_readonly("space",
                             [](const ConvHandle& h) { return h.p->space(); })
      .def("hull",
           [](const ConvHandle& h, const std::vector<int>& a) {
             return h.p->hull(to_bits(h.p->space().size, a)).elements();
           })
      .def("is_convex", [](const ConvHandle& h, const std::vector<int>& a) {
        return h.p->is_convex(to_bits(h.p->space().size, a));
      });

  py::class_<Fractoconvexity>(m, "Fractoconvexity")
      .def_property_readonly("space", &Fractoconvexity::space)
      .def_property_readonly("extensional_only",
                             &Fractoconvexity::extensional_only)
      .def("member", [](const Fractoconvexity& f, const std::vector<int>& a) {
        return f.member(to_bits(f.space().size, a));
      });

  py::class_<Registry>(m, "Registry")
      .def_property_readonly("space", &Registry::space)
      .def("ids", &Registry::ids)
      .def("get", [](const Registry& reg, const std::string& id) {
        return ConvHandle{reg.get(id)};
      });

  m.def("load_space_file", &load_space_file, py::arg("path"));
  m.def(
      "load_space",
      [](const std::string& text) { return load_space(json::parse(text)); },
      py::arg("text"));

  m.def("parse",
        [](const std::string& text) { return print_expr(parse_expr(text)); });
  m.def(
      "evaluate",
      [](const std::string& expr, const Registry& reg) {
        return eval_expr(parse_expr(expr), reg);
      },
      py::arg("expr"), py::arg("registry"));

  m.def(
      "enumerate_members",
      [](const Fractoconvexity& f, int cap) {
        return family_lists(enumerate_members(f, cap));
      },
      py::arg("f"), py::arg("cap") = kDefaultEnumCap);
  m.def(
      "family_equal",
      [](const Fractoconvexity& a, const Fractoconvexity& b, int cap) {
        return family_equal(a, b, cap);
      },
      py::arg("f1"), py::arg("f2"), py::arg("cap") = kDefaultEnumCap);
  m.def("normalize", &normalize);
  m.def("join", &join);
  m.def("meet", &meet);

  m.def(
      "pair_hull",
      [](const std::vector<ConvHandle>& convs, const std::vector<int>& a) {
        if (convs.empty()) throw EmptyList("pair_hull on empty list");
        int n = convs.front().p->space().size;
        return pair_hull(unwrap(convs), to_bits(n, a)).elements();
      },
      py::arg("convs"), py::arg("a"));
  m.def(
      "independence_domain",
      [](const std::vector<ConvHandle>& convs, int cap) {
        auto rep = independence_domain(unwrap(convs), cap);
        py::dict d;
        d["independent"] = rep.independent;
        d["domain"] = family_lists(rep.domain);
        py::list viol;
        for (const auto& [a, ph] : rep.violations)
          viol.append(py::make_tuple(a.elements(), ph.elements()));
        d["violations"] = viol;
        return d;
      },
      py::arg("convs"), py::arg("cap") = kDefaultEnumCap);
  m.def(
      "conically_independent",
      [](const ConvHandle& g1, const ConvHandle& g2, int cap) {
        return is_conically_independent(*g1.p, *g2.p, cap).independent;
      },
      py::arg("g1"), py::arg("g2"), py::arg("cap") = kDefaultEnumCap);

  m.def(
      "build_zline",
      [](int size, const std::vector<int>& perm) {
        ZLineModel model = build_zline(size, perm);
        py::dict d;
        d["g1"] = ConvHandle{model.g1};
        d["g2"] = ConvHandle{model.g2};
        d["perm"] = model.perm;
        return d;
      },
      py::arg("size"), py::arg("perm"));
  m.def(
      "check_prop4",
      [](int size, const std::vector<int>& perm, int cap) {
        return report_dict(check_prop4(build_zline(size, perm), cap));
      },
      py::arg("size"), py::arg("perm"), py::arg("cap") = 16);
}
