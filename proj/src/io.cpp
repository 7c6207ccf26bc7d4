#include "flatcover/io.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>

#include "flatcover/error.hpp"

namespace flatcover {

namespace {

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw InputError("expected an object", where);
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing field '") + key + "'", where);
  return *it;
}

int as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw InputError("expected an integer", where);
  return j.get<int>();
}

const std::string& as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) throw InputError("expected a string", where);
  return j.get_ref<const std::string&>();
}

const Json& as_array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw InputError("expected an array", where);
  return j;
}

// Re-raises location-free errors from the word parsers at `where`.
template <class F>
auto located(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const InputError& e) {
    if (!e.location().empty()) throw;
    throw InputError(e.what(), where);
  }
}

Element parse_element(const Json& j, const GroupTable& g, const std::string& where) {
  if (j.is_number_integer()) {
    const int x = j.get<int>();
    if (!g.contains(x)) throw InputError("element index " + std::to_string(x) + " out of range", where);
    return x;
  }
  if (j.is_string()) {
    auto x = g.find_label(j.get_ref<const std::string&>());
    if (!x) throw InputError("unknown element label '" + j.get<std::string>() + "'", where);
    return *x;
  }
  throw InputError("expected an element index or label", where);
}

GroupTable relabel(const GroupTable& g, std::vector<std::string> labels) {
  const int n = g.order();
  std::vector<Element> product(static_cast<std::size_t>(n) * n);
  std::vector<Element> inverse(n);
  for (int a = 0; a < n; ++a) {
    inverse[a] = g.inv(a);
    for (int b = 0; b < n; ++b) product[static_cast<std::size_t>(a) * n + b] = g.mul(a, b);
  }
  return GroupTable(n, std::move(product), std::move(inverse), std::move(labels), g.permutations());
}

}  // namespace

GroupTable parse_group(const Json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return catalog_group(j.get<std::string>());
    } catch (const InputError& e) {
      throw InputError(e.what(), where);
    }
  }
  const int degree = as_int(require(j, "degree", where), where + "/degree");
  if (degree < 1) throw InputError("degree must be positive", where + "/degree");
  const Json& gens = as_array(require(j, "generators", where), where + "/generators");
  std::vector<Permutation> perms;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string at = where + "/generators/" + std::to_string(i);
    Permutation p;
    for (const Json& x : as_array(gens[i], at)) p.push_back(as_int(x, at));
    std::vector<int> sorted = p;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> expected(degree);
    std::iota(expected.begin(), expected.end(), 0);
    if (sorted != expected) throw InputError("not a permutation of 0..degree-1", at);
    perms.push_back(std::move(p));
  }
  GroupTable g = located(where, [&] { return group_from_permutations(degree, perms); });
  if (auto it = j.find("labels"); it != j.end()) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < as_array(*it, where + "/labels").size(); ++i)
      labels.push_back(as_string((*it)[i], where + "/labels/" + std::to_string(i)));
    if (static_cast<int>(labels.size()) != g.order()) {
      throw InputError("expected " + std::to_string(g.order()) + " labels", where + "/labels");
    }
    g = located(where + "/labels", [&] { return relabel(g, std::move(labels)); });
  }
  return g;
}

BaseComplex parse_complex(const Json& j, const std::string& where) {
  ComplexSpec spec;
  spec.vertex_count = as_int(require(j, "vertices", where), where + "/vertices");
  if (auto it = j.find("basepoint"); it != j.end()) spec.basepoint = as_int(*it, where + "/basepoint");
  const Json& edges = as_array(require(j, "edges", where), where + "/edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string at = where + "/edges/" + std::to_string(i);
    spec.edges.push_back({as_int(require(edges[i], "id", at), at + "/id"),
                          as_int(require(edges[i], "tail", at), at + "/tail"),
                          as_int(require(edges[i], "head", at), at + "/head")});
  }
  if (auto it = j.find("aliases"); it != j.end()) {
    if (!it->is_object()) throw InputError("expected an object", where + "/aliases");
    for (const auto& [name, id] : it->items()) spec.aliases[name] = as_int(id, where + "/aliases/" + name);
  }
  if (auto it = j.find("relators"); it != j.end()) {
    const Json& rels = as_array(*it, where + "/relators");
    for (std::size_t i = 0; i < rels.size(); ++i) {
      const std::string at = where + "/relators/" + std::to_string(i);
      const std::string& text = as_string(rels[i], at);
      spec.relators.push_back(located(at, [&] { return parse_edge_word(spec.aliases, text); }));
    }
  }
  return validate_complex(std::move(spec));
}

Voltage parse_voltage(const Json& j, const BaseComplex& c, const GroupTable& g, const std::string& where) {
  std::vector<std::optional<Element>> by_edge(c.edge_count());
  const Json& entries = as_array(j, where);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string at = where + "/" + std::to_string(i);
    const Json& edge = require(entries[i], "edge", at);
    std::optional<int> idx;
    if (edge.is_number_integer()) {
      idx = c.index_of(edge.get<int>());
    } else if (edge.is_string()) {
      idx = c.find_name(edge.get_ref<const std::string&>());
    } else {
      throw InputError("expected an edge id or alias", at + "/edge");
    }
    if (!idx) throw InputError("unknown edge " + edge.dump(), at + "/edge");
    if (by_edge[*idx]) throw InputError("edge " + c.edge_name(*idx) + " assigned twice", at + "/edge");
    by_edge[*idx] = parse_element(require(entries[i], "element", at), g, at + "/element");
  }
  Voltage v;
  for (int i = 0; i < c.edge_count(); ++i) {
    if (!by_edge[i]) throw InputError("no voltage for edge " + c.edge_name(i), where);
    v.by_edge.push_back(*by_edge[i]);
  }
  return v;
}

InstanceData parse_instance(const Json& doc) {
  if (!doc.is_object()) throw InputError("instance document must be an object", "");
  InstanceData data;
  if (auto it = doc.find("name"); it != doc.end()) data.name = as_string(*it, "/name");
  data.group = parse_group(require(doc, "group", ""), "/group");
  data.base = parse_complex(require(doc, "complex", ""), "/complex");
  data.voltage = parse_voltage(require(doc, "voltage", ""), data.base, data.group, "/voltage");

  const auto violations = check_flatness(data.base, data.group, data.voltage);
  if (!violations.empty()) {
    std::string message = "voltage is not flat:";
    for (std::size_t i = 0; i < violations.size(); ++i) {
      const auto& f = violations[i];
      message += (i ? "; " : " ") + std::string("relator ") + std::to_string(f.relator) + " (" +
                 format_edge_word(data.base, data.base.relators()[f.relator]) + ") has product " +
                 data.group.label(f.product);
    }
    throw InputError(message, "/voltage");
  }

  const SpanningTree tree = spanning_tree(data.base);
  const int rank = tree.rank();
  auto it = doc.find("covering");
  if (it == doc.end()) {
    data.covering = QuotientSubgroup{GroupTable{}, std::vector<Element>(rank, 0), trivial_subgroup()};
    return data;
  }
  const Json& cov = *it;
  const std::string kind = as_string(require(cov, "kind", "/covering"), "/covering/kind");
  if (kind == "words") {
    WordsSubgroup spec;
    const Json& words = as_array(require(cov, "words", "/covering"), "/covering/words");
    for (std::size_t i = 0; i < words.size(); ++i) {
      const std::string at = "/covering/words/" + std::to_string(i);
      const std::string& text = as_string(words[i], at);
      spec.words.push_back(located(at, [&] { return parse_generator_word(data.base, tree, text); }));
    }
    data.covering = std::move(spec);
  } else if (kind == "quotient") {
    QuotientSubgroup spec;
    const bool own_group = cov.contains("group");
    spec.group = own_group ? parse_group(cov["group"], "/covering/group") : data.group;
    if (auto im = cov.find("images"); im != cov.end()) {
      const Json& images = as_array(*im, "/covering/images");
      if (static_cast<int>(images.size()) != rank) {
        throw InputError("expected " + std::to_string(rank) + " images, one per generator", "/covering/images");
      }
      for (std::size_t i = 0; i < images.size(); ++i)
        spec.images.push_back(parse_element(images[i], spec.group, "/covering/images/" + std::to_string(i)));
    } else if (own_group) {
      throw InputError("images are required when a covering group is given", "/covering");
    } else {
      spec.images = holonomy_morphism(data.base, data.group, data.voltage, tree).images;
    }
    const Json& members = as_array(require(cov, "subgroup", "/covering"), "/covering/subgroup");
    std::set<Element> elements{GroupTable::identity()};
    for (std::size_t i = 0; i < members.size(); ++i)
      elements.insert(parse_element(members[i], spec.group, "/covering/subgroup/" + std::to_string(i)));
    spec.subgroup.members.assign(elements.begin(), elements.end());
    if (!is_subgroup(spec.group, spec.subgroup)) {
      throw InputError("listed elements are not closed under the group operation", "/covering/subgroup");
    }
    data.covering = std::move(spec);
  } else {
    throw InputError("unknown covering kind '" + kind + "'", "/covering/kind");
  }
  return data;
}

InstanceData load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read file '" + path + "'", "");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what(), "");
  }
  InstanceData data = parse_instance(doc);
  if (data.name.empty()) data.name = path;
  return data;
}

namespace {

Json group_to_json(const GroupTable& g) {
  for (const auto& name : catalog_names())
    if (catalog_group(name) == g) return name;
  Json j;
  const auto& perms = g.permutations();
  if (g.order() == 1) return Json{{"degree", 1}, {"generators", Json::array()}};
  if (perms.empty()) throw PreconditionError("group has no permutation representation");
  j["degree"] = perms.front().size();
  // Listing every element in order reproduces the same discovery order.
  j["generators"] = Json::array();
  for (std::size_t x = 1; x < perms.size(); ++x) j["generators"].push_back(perms[x]);
  j["labels"] = g.labels();
  return j;
}

}  // namespace

Json instance_to_json(const InstanceData& data) {
  Json j;
  j["name"] = data.name;
  j["group"] = group_to_json(data.group);

  const BaseComplex& c = data.base;
  Json complex;
  complex["vertices"] = c.vertex_count();
  complex["basepoint"] = c.basepoint();
  complex["edges"] = Json::array();
  Json aliases = Json::object();
  for (int i = 0; i < c.edge_count(); ++i) {
    const Edge& e = c.edge(i);
    complex["edges"].push_back({{"id", e.id}, {"tail", e.tail}, {"head", e.head}});
    if (c.edge_name(i) != "e" + std::to_string(e.id)) aliases[c.edge_name(i)] = e.id;
  }
  complex["relators"] = Json::array();
  for (const auto& r : c.relators()) complex["relators"].push_back(format_edge_word(c, r));
  if (!aliases.empty()) complex["aliases"] = aliases;
  j["complex"] = complex;

  j["voltage"] = Json::array();
  for (int i = 0; i < c.edge_count(); ++i)
    j["voltage"].push_back({{"edge", c.edge(i).id}, {"element", data.group.label(data.voltage.by_edge[i])}});

  if (const auto* words = std::get_if<WordsSubgroup>(&data.covering)) {
    const Presentation p = pi1_presentation(c, spanning_tree(c));
    Json list = Json::array();
    for (const auto& w : words->words) list.push_back(format_free_word(p, w));
    j["covering"] = {{"kind", "words"}, {"words", list}};
  } else {
    const auto& q = std::get<QuotientSubgroup>(data.covering);
    Json images = Json::array();
    for (Element x : q.images) images.push_back(q.group.label(x));
    Json members = Json::array();
    for (Element x : q.subgroup.members) members.push_back(q.group.label(x));
    j["covering"] = {{"kind", "quotient"}, {"group", group_to_json(q.group)}, {"images", images}, {"subgroup", members}};
  }
  return j;
}

Json report_to_json(const VerificationReport& r) {
  Json j;
  j["claim"] = r.claim;
  j["verdict"] = to_string(r.verdict);
  Json hyps = Json::array();
  for (const auto& h : r.hypotheses) hyps.push_back({{"name", h.name}, {"ok", h.ok}});
  j["hypotheses"] = hyps;
  Json details = Json::object();
  for (const auto& [k, v] : r.details) details[k] = v;
  j["details"] = details;
  Json witnesses = Json::object();
  for (const auto& [k, v] : r.witnesses) witnesses[k] = v;
  j["witnesses"] = witnesses;
  j["notes"] = r.notes;
  return j;
}

}  // namespace flatcover
