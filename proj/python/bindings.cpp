#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "posetlab/intres.hpp"
#include "posetlab/io.hpp"

namespace py = pybind11;
using namespace posetlab;

namespace {

std::shared_ptr<Poset> unconst(PosetPtr p) { return std::const_pointer_cast<Poset>(std::move(p)); }
std::shared_ptr<PersistenceModule> unconst(PmodPtr m) {
  return std::const_pointer_cast<PersistenceModule>(std::move(m));
}

std::vector<std::string> label_list(const Poset& p, const Bitset& s) {
  std::vector<std::string> out;
  for (int a : s.elements()) out.push_back(p.label(a));
  return out;
}

py::list multiplicity_list(const Poset& p, const std::vector<std::pair<Bitset, int>>& mults) {
  py::list out;
  for (const auto& [s, m] : mults) out.append(py::make_tuple(label_list(p, s), m));
  return out;
}

InteriorSystem system_of(PosetPtr p, const std::vector<std::string>& sub) {
  return interior_system(p, p->make_set_by_labels(sub));
}

}  // namespace

PYBIND11_MODULE(_posetlab, m) {
  m.doc() = "persistence modules over finite posets";

  py::register_exception<ParseError>(m, "PosetParseError");
  py::register_exception<DomainError>(m, "PosetDomainError");

  py::class_<Poset, std::shared_ptr<Poset>>(m, "Poset")
      .def_static(
          "from_covers",
          [](const std::string& name, const std::vector<std::string>& labels,
             const std::vector<std::pair<std::string, std::string>>& edges) {
            return unconst(share(Poset::from_covers(name, labels, edges)));
          },
          py::arg("name"), py::arg("labels"), py::arg("covers"))
      .def_static("parse", [](const std::string& text) { return unconst(share(parse_poset_text(text))); })
      .def_property_readonly("name", &Poset::name)
      .def_property_readonly("n", &Poset::n)
      .def_property_readonly("labels", &Poset::labels)
      .def_property_readonly("covers",
                             [](const Poset& p) {
                               std::vector<std::pair<std::string, std::string>> out;
                               for (auto [a, b] : p.covers()) out.emplace_back(p.label(a), p.label(b));
                               return out;
                             })
      .def("leq", [](const Poset& p, const std::string& a, const std::string& b) {
        return p.leq(p.index_of(a), p.index_of(b));
      })
      .def("opposite", [](const Poset& p) { return unconst(share(p.opposite())); })
      .def("to_text", [](const Poset& p) { return poset_to_text(p); })
      .def("dot", [](const Poset& p) { return poset_to_dot(p); })
      .def("__repr__", [](const Poset& p) {
        return "<Poset " + p.name() + " n=" + std::to_string(p.n()) + ">";
      });

  py::class_<PersistenceModule, std::shared_ptr<PersistenceModule>>(m, "Module")
      .def_property_readonly("total_dim", &PersistenceModule::total_dim)
      .def("dim", [](const PersistenceModule& mm, const std::string& a) {
        return mm.dim(mm.poset()->index_of(a));
      })
      .def("to_text", [](const PersistenceModule& mm) { return module_to_text(mm); })
      .def("__repr__", [](const PersistenceModule& mm) {
        return "<Module total_dim=" + std::to_string(mm.total_dim()) + ">";
      });

  m.def("parse_module",
        [](const std::string& text, PosetPtr p) { return unconst(parse_module_text(text, std::move(p))); });
  m.def("interval_module",
        [](PosetPtr p, const std::vector<std::string>& labels, unsigned field) {
          Bitset s = p->make_set_by_labels(labels);
          return unconst(interval_module(std::move(p), s, Field(field)));
        },
        py::arg("poset"), py::arg("labels"), py::arg("field") = 2);

  m.def("intervals", [](PosetPtr p) {
    py::list out;
    for (const Bitset& s : enumerate_intervals(*p)) out.append(label_list(*p, s));
    return out;
  });

  m.def(
      "gldim",
      [](PosetPtr p, unsigned field, int threads) {
        GldimResult r = intresgldim(p, Field(field), threads);
        py::dict out;
        out["gldim"] = r.gldim;
        out["witness_interval"] = label_list(*p, r.witness);
        py::list per;
        for (const auto& [s, d] : r.per_interval) per.append(py::make_tuple(label_list(*p, s), d));
        out["per_interval"] = per;
        return out;
      },
      py::arg("poset"), py::arg("field") = 2, py::arg("threads") = 1);

  m.def("tree_gldim", [](PosetPtr p) { return tree_gldim(*p); });
  m.def("gldim_closed_form", [](PosetPtr p) { return gldim_closed_form(*p); });

  m.def(
      "interior",
      [](PosetPtr p, const std::vector<std::string>& sub) {
        InteriorSystem is = system_of(p, sub);
        py::dict out;
        py::dict floor, fibers, nu;
        for (int a = 0; a < p->n(); ++a) floor[py::str(p->label(a))] = p->label(is.floor[a]);
        for (int y : is.sub.elements()) {
          fibers[py::str(p->label(y))] = label_list(*p, is.fiber_of[y]);
          if (is.aligned) nu[py::str(p->label(y))] = p->label(is.nu[y]);
        }
        out["floor"] = floor;
        out["fibers"] = fibers;
        out["aligned"] = is.aligned;
        out["nu"] = nu;
        return out;
      },
      py::arg("poset"), py::arg("sub"));

  m.def(
      "functor",
      [](const std::string& which, PosetPtr p, const std::vector<std::string>& sub, PmodPtr mod,
         const std::string& route) {
        InteriorSystem is = system_of(p, sub);
        if (which == "res") return unconst(restrict_module(is, *mod));
        if (which == "ind") return unconst(induct(is, *mod));
        if (which == "coind") return unconst(coinduct(is, *mod));
        if (which == "cont") {
          ContractRoute r = route == "colim" ? ContractRoute::Colimit
                          : route == "nu"    ? ContractRoute::Nu
                                             : ContractRoute::Auto;
          return unconst(contract(is, *mod, r));
        }
        throw DomainError("UnknownFunctor", which);
      },
      py::arg("which"), py::arg("poset"), py::arg("sub"), py::arg("module"), py::arg("route") = "auto");

  m.def("decompose", [](PmodPtr mod) {
    SummandList s = split_interval_summands(mod);
    return py::make_tuple(multiplicity_list(*mod->poset(), s.multiplicities), s.residual->total_dim());
  });

  m.def("cover_multiplicities", [](PmodPtr mod) {
    IntervalCover c = interval_cover(mod, enumerate_intervals(*mod->poset()));
    return multiplicity_list(*mod->poset(), c.multiplicities);
  });

  m.def("resolve", [](PmodPtr mod) {
    IntervalResolution r = interval_resolution(mod, enumerate_intervals(*mod->poset()));
    py::dict out;
    out["intresdim"] = r.dim;
    py::list terms;
    for (const auto& c : r.covers) terms.append(multiplicity_list(*mod->poset(), c.multiplicities));
    out["terms"] = terms;
    return out;
  });

  m.def("expand_diagram", [](const std::string& text) { return unconst(share(expand_diagram(parse_diagram_text(text)))); });
}
