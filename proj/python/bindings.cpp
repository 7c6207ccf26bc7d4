#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "flatcover/cli.hpp"
#include "flatcover/error.hpp"
#include "flatcover/io.hpp"
#include "flatcover/theorems.hpp"

namespace py = pybind11;
using namespace flatcover;

namespace {

std::vector<std::string> labels_of(const GroupTable& g, const SubgroupSet& s) {
  std::vector<std::string> out;
  for (Element x : s.members) out.push_back(g.label(x));
  return out;
}

Instance from_json(const std::string& text, std::size_t cap) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return Instance::build(parse_instance(doc), cap);
}

}  // namespace

PYBIND11_MODULE(_flatcover, m) {
  m.doc() = "Flat connections over coverings of finite 2-complexes";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);

  py::class_<GroupTable>(m, "Group")
      .def_property_readonly("order", &GroupTable::order)
      .def_property_readonly("labels", &GroupTable::labels)
      .def("mul", &GroupTable::mul)
      .def("inv", &GroupTable::inv)
      .def("label", [](const GroupTable& g, Element x) { return g.label(x); })
      .def("subgroups", [](const GroupTable& g) {
        std::vector<std::vector<std::string>> out;
        for (const auto& s : enumerate_subgroups(g)) out.push_back(labels_of(g, s));
        return out;
      });
  m.def("catalog_group", &catalog_group, py::arg("name"));
  m.def("catalog_names", &catalog_names);

  py::class_<Instance>(m, "Instance")
      .def_static("from_json", &from_json, py::arg("text"), py::arg("cap") = kDefaultCellCap,
                  "Parse and build an instance document.")
      .def_static(
          "from_file", [](const std::string& path, std::size_t cap) { return Instance::build(load_instance(path), cap); },
          py::arg("path"), py::arg("cap") = kDefaultCellCap)
      .def_property_readonly("name", &Instance::name)
      .def_property_readonly("group", &Instance::group)
      .def_property_readonly("holonomy_image",
                             [](const Instance& i) { return labels_of(i.group(), i.holonomy_image()); })
      .def_property_readonly("kernel_index", [](const Instance& i) { return i.kernel().state_count(); })
      .def_property_readonly("cover_degree", [](const Instance& i) { return i.cover().degree; })
      .def_property_readonly("cover_rank", [](const Instance& i) { return graph_rank(i.cover().total); })
      .def_property_readonly("subgroup_method", [](const Instance& i) { return to_string(i.subgroup_method()); })
      .def("is_regular", [](const Instance& i) { return is_normal_subgroup(i.subgroup()); })
      .def("induced_holonomy_image", [](const Instance& i) { return labels_of(i.group(), induced_holonomy_image(i)); })
      .def("restricted_holonomy_image",
           [](const Instance& i) { return labels_of(i.group(), restricted_holonomy_image(i)); })
      .def(
          "verify",
          [](const Instance& i, int samples, std::uint64_t seed, bool relaxed) {
            Json out = Json::array();
            for (const auto& r : verify_all(i, samples, seed, {relaxed})) out.push_back(report_to_json(r));
            return out.dump();
          },
          py::arg("samples") = 100, py::arg("seed"), py::arg("relaxed_gates") = false,
          "Every verification as a JSON array of reports.")
      .def(
          "to_dot",
          [](const Instance& i, const std::string& what) {
            const GroupTable& g = i.group();
            if (what == "base") return base_to_dot(i.base(), &g, &i.voltage());
            if (what == "cover") return cover_to_dot(i.base(), i.cover(), &g, &i.voltage());
            const DerivedBundle d = derived_bundle(i.base(), g, i.voltage());
            if (what == "bundle") return bundle_to_dot(i.base(), g, i.voltage(), d);
            if (what == "holonomy-bundle") return component_to_dot(i.base(), g, i.voltage(), holonomy_bundle(d));
            throw InputError("unknown export '" + what + "'");
          },
          py::arg("what") = "base");

  m.def(
      "random_instances",
      [](std::uint64_t seed, int count) {
        std::vector<std::string> out;
        for (const auto& d : random_corpus(seed, count)) out.push_back(instance_to_json(d).dump());
        return out;
      },
      py::arg("seed"), py::arg("count"), "Seeded random instance documents as JSON text.");

  m.def(
      "run_command",
      [](const std::vector<std::string>& args) {
        const CommandResult r = run_command(args);
        return py::make_tuple(r.exit_code, r.out, r.err);
      },
      py::arg("args"), "Run a CLI verb; returns (exit_code, stdout, stderr).");
}
