#include "flatcover/covering.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <regex>
#include <sstream>
#include <utility>

#include "flatcover/error.hpp"

namespace flatcover {

ComplexMap compose(const ComplexMap& first, const ComplexMap& second) {
  ComplexMap out;
  out.vertex_map.reserve(first.vertex_map.size());
  for (int v : first.vertex_map) out.vertex_map.push_back(second.vertex_map.at(v));
  out.edge_map.reserve(first.edge_map.size());
  for (int e : first.edge_map) out.edge_map.push_back(second.edge_map.at(e));
  return out;
}

namespace {

// Incident lifted edges keyed by (total vertex, base edge index).
class Lifter {
 public:
  Lifter(const Covering& cov, int base_edges)
      : base_edges_(base_edges),
        out_(static_cast<std::size_t>(cov.total.vertex_count()) * base_edges, -1),
        in_(out_.size(), -1) {
    for (int i = 0; i < cov.total.edge_count(); ++i) {
      const Edge& e = cov.total.edge(i);
      const int b = cov.projection.edge_map[i];
      out_[slot(e.tail, b)] = i;
      in_[slot(e.head, b)] = i;
    }
  }

  // Lifted edge index and the vertex it leads to, or {-1, -1}.
  std::pair<int, int> step(const Covering& cov, int vertex, int base_edge, int sign) const {
    const int lifted = sign > 0 ? out_[slot(vertex, base_edge)] : in_[slot(vertex, base_edge)];
    if (lifted < 0) return {-1, -1};
    const Edge& e = cov.total.edge(lifted);
    return {lifted, sign > 0 ? e.head : e.tail};
  }

 private:
  std::size_t slot(int v, int b) const { return static_cast<std::size_t>(v) * base_edges_ + b; }

  int base_edges_;
  std::vector<int> out_;
  std::vector<int> in_;
};

}  // namespace

std::optional<EdgeWord> lift_path(const Covering& cov, const BaseComplex& base, const EdgeWord& w, int start) {
  const Lifter lifter(cov, base.edge_count());
  EdgeWord out;
  int at = start;
  for (const Step& s : w) {
    auto [lifted, next] = lifter.step(cov, at, base.index_of_checked(s.edge), s.sign);
    if (lifted < 0) return std::nullopt;
    out.push_back({cov.total.edge(lifted).id, s.sign});
    at = next;
  }
  return out;
}

CoveringComplex build_cover(const BaseComplex& c, const SpanningTree& t, const CosetAutomaton& a) {
  if (!a.complete()) throw PreconditionError("build_cover needs a complete automaton");
  if (a.rank() != t.rank()) throw PreconditionError("automaton rank does not match the complex");
  const int sheets = a.state_count();
  const int nv = c.vertex_count();
  const int ne = c.edge_count();

  ComplexSpec spec;
  spec.vertex_count = sheets * nv;
  spec.basepoint = c.basepoint();
  CoveringComplex cov;
  cov.degree = sheets;
  cov.base_lift = c.basepoint();
  for (int s = 0; s < sheets; ++s) {
    for (int v = 0; v < nv; ++v) {
      cov.projection.vertex_map.push_back(v);
      cov.sheet.push_back(s);
    }
  }
  for (int s = 0; s < sheets; ++s) {
    for (int i = 0; i < ne; ++i) {
      const Edge& e = c.edge(i);
      const int gen = t.generator_of_edge[i];
      const int to = gen < 0 ? s : a.target(s, {gen, 1});
      spec.edges.push_back({s * ne + i, s * nv + e.tail, to * nv + e.head});
      cov.projection.edge_map.push_back(i);
    }
  }

  // Relators lift through the edge rule above; each lift must close.
  for (std::size_t r = 0; r < c.relators().size(); ++r) {
    const EdgeWord& rel = c.relators()[r];
    for (int s = 0; s < sheets; ++s) {
      int sheet = s;
      EdgeWord lifted;
      for (const Step& step : rel) {
        const int i = c.index_of_checked(step.edge);
        const int gen = t.generator_of_edge[i];
        if (step.sign > 0) {
          lifted.push_back({sheet * ne + i, 1});
          if (gen >= 0) sheet = a.target(sheet, {gen, 1});
        } else {
          if (gen >= 0) sheet = a.target(sheet, {gen, -1});
          lifted.push_back({sheet * ne + i, -1});
        }
      }
      if (sheet != s) {
        throw InputError("relator " + std::to_string(r) + " does not lift to a closed path at sheet " +
                         std::to_string(s) + "; the subgroup data is inconsistent with the complex");
      }
      spec.relators.push_back(std::move(lifted));
    }
  }
  cov.total = validate_complex(std::move(spec));
  return cov;
}

bool is_covering_map(const BaseComplex& source, const BaseComplex& target, const ComplexMap& m) {
  if (static_cast<int>(m.vertex_map.size()) != source.vertex_count() ||
      static_cast<int>(m.edge_map.size()) != source.edge_count()) {
    throw PreconditionError("map does not cover every vertex and edge of its source");
  }
  for (int v : m.vertex_map)
    if (v < 0 || v >= target.vertex_count()) throw PreconditionError("vertex image out of range");
  for (int i = 0; i < source.edge_count(); ++i) {
    const int j = m.edge_map[i];
    if (j < 0 || j >= target.edge_count()) throw PreconditionError("edge image out of range");
    const Edge& e = source.edge(i);
    const Edge& f = target.edge(j);
    if (m.vertex_map[e.tail] != f.tail || m.vertex_map[e.head] != f.head) {
      throw PreconditionError("map does not respect the incidences of edge " + std::to_string(e.id));
    }
  }

  // Edge-ends (edge index, 0 = leaves, 1 = enters) at each vertex.
  auto ends = [](const BaseComplex& c) {
    std::vector<std::vector<std::pair<int, int>>> out(c.vertex_count());
    for (int i = 0; i < c.edge_count(); ++i) {
      out[c.edge(i).tail].push_back({i, 0});
      out[c.edge(i).head].push_back({i, 1});
    }
    return out;
  };
  const auto source_ends = ends(source);
  auto target_ends = ends(target);
  for (auto& list : target_ends) std::sort(list.begin(), list.end());

  std::vector<bool> hit(target.vertex_count(), false);
  for (int u = 0; u < source.vertex_count(); ++u) {
    const int v = m.vertex_map[u];
    hit[v] = true;
    std::vector<std::pair<int, int>> image;
    for (auto [i, end] : source_ends[u]) image.push_back({m.edge_map[i], end});
    std::sort(image.begin(), image.end());
    if (image != target_ends[v]) return false;
  }
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

bool is_isomorphism(const BaseComplex& source, const BaseComplex& target, const ComplexMap& m) {
  if (source.vertex_count() != target.vertex_count() || source.edge_count() != target.edge_count()) return false;
  if (!is_covering_map(source, target, m)) return false;
  std::vector<int> vs = m.vertex_map;
  std::vector<int> es = m.edge_map;
  std::sort(vs.begin(), vs.end());
  std::sort(es.begin(), es.end());
  return std::adjacent_find(vs.begin(), vs.end()) == vs.end() && std::adjacent_find(es.begin(), es.end()) == es.end();
}

DerivedBundle derived_bundle(const BaseComplex& c, const GroupTable& g, const Voltage& v) {
  if (static_cast<int>(v.by_edge.size()) != c.edge_count()) throw InputError("voltage does not cover every edge");
  const auto violations = check_flatness(c, g, v);
  if (!violations.empty()) {
    throw InputError("flatness violated: relator " + std::to_string(violations.front().relator) +
                     " has product " + g.label(violations.front().product));
  }
  const int n = g.order();
  DerivedBundle d;
  d.group_order = n;
  ComplexSpec spec;
  spec.vertex_count = c.vertex_count() * n;
  spec.basepoint = c.basepoint() * n;
  for (int vert = 0; vert < c.vertex_count(); ++vert) {
    for (Element x = 0; x < n; ++x) {
      d.projection.vertex_map.push_back(vert);
      d.fiber_element.push_back(x);
    }
  }
  for (int i = 0; i < c.edge_count(); ++i) {
    const Edge& e = c.edge(i);
    for (Element x = 0; x < n; ++x) {
      spec.edges.push_back({i * n + x, e.tail * n + x, e.head * n + g.mul(x, v.by_edge[i])});
      d.projection.edge_map.push_back(i);
    }
  }
  for (const EdgeWord& rel : c.relators()) {
    for (Element x = 0; x < n; ++x) {
      Element at = x;
      EdgeWord lifted;
      for (const Step& s : rel) {
        const int i = c.index_of_checked(s.edge);
        if (s.sign > 0) {
          lifted.push_back({i * n + at, 1});
          at = g.mul(at, v.by_edge[i]);
        } else {
          at = g.mul(at, g.inv(v.by_edge[i]));
          lifted.push_back({i * n + at, -1});
        }
      }
      spec.relators.push_back(std::move(lifted));
    }
  }
  d.total = validate_complex(std::move(spec), /*require_connected=*/false);
  d.base_lift = c.basepoint() * n;

  // Components, numbered by their smallest vertex.
  const int total_vertices = d.total.vertex_count();
  std::vector<std::vector<int>> adjacent(total_vertices);
  for (const Edge& e : d.total.edges()) {
    adjacent[e.tail].push_back(e.head);
    adjacent[e.head].push_back(e.tail);
  }
  d.component.assign(total_vertices, -1);
  for (int start = 0; start < total_vertices; ++start) {
    if (d.component[start] >= 0) continue;
    const int id = d.component_count++;
    std::deque<int> queue{start};
    d.component[start] = id;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int w : adjacent[u]) {
        if (d.component[w] < 0) {
          d.component[w] = id;
          queue.push_back(w);
        }
      }
    }
  }
  return d;
}

std::vector<Element> BundleComponent::fiber_over_basepoint(const BaseComplex& base) const {
  std::vector<Element> out;
  for (int u = 0; u < total.vertex_count(); ++u)
    if (projection.vertex_map[u] == base.basepoint()) out.push_back(fiber_element[u]);
  std::sort(out.begin(), out.end());
  return out;
}

BundleComponent bundle_component(const DerivedBundle& d, int component) {
  if (component < 0 || component >= d.component_count) throw PreconditionError("component index out of range");
  BundleComponent part;
  std::vector<int> local(d.total.vertex_count(), -1);
  for (int u = 0; u < d.total.vertex_count(); ++u) {
    if (d.component[u] != component) continue;
    local[u] = static_cast<int>(part.bundle_vertex.size());
    part.bundle_vertex.push_back(u);
    part.fiber_element.push_back(d.fiber_element[u]);
    part.projection.vertex_map.push_back(d.projection.vertex_map[u]);
  }
  ComplexSpec spec;
  spec.vertex_count = static_cast<int>(part.bundle_vertex.size());
  std::vector<int> local_edge(d.total.edge_count(), -1);
  for (int i = 0; i < d.total.edge_count(); ++i) {
    const Edge& e = d.total.edge(i);
    if (local[e.tail] < 0) continue;
    local_edge[i] = static_cast<int>(part.bundle_edge.size());
    spec.edges.push_back({local_edge[i], local[e.tail], local[e.head]});
    part.bundle_edge.push_back(i);
    part.projection.edge_map.push_back(d.projection.edge_map[i]);
  }
  for (const EdgeWord& rel : d.total.relators()) {
    if (rel.empty() || local_edge[d.total.index_of_checked(rel.front().edge)] < 0) continue;
    EdgeWord mapped;
    for (const Step& s : rel) mapped.push_back({local_edge[d.total.index_of_checked(s.edge)], s.sign});
    spec.relators.push_back(std::move(mapped));
  }

  // Base lift: the basepoint lift when it lies here, else the first vertex
  // over the base's basepoint.
  const int base_vertex = d.projection.vertex_map[d.base_lift];
  int lift = -1;
  if (local[d.base_lift] >= 0) {
    lift = local[d.base_lift];
  } else {
    for (int u = 0; u < spec.vertex_count && lift < 0; ++u)
      if (part.projection.vertex_map[u] == base_vertex) lift = u;
  }
  if (lift < 0) throw PreconditionError("component does not meet the fibre over the basepoint");
  spec.basepoint = lift;
  part.base_lift = lift;
  part.degree = static_cast<int>(std::count(part.projection.vertex_map.begin(), part.projection.vertex_map.end(), base_vertex));
  part.total = validate_complex(std::move(spec));
  return part;
}

BundleComponent holonomy_bundle(const DerivedBundle& d) { return bundle_component(d, d.component[d.base_lift]); }

CosetAutomaton subgroup_of_cover(const BaseComplex& base, const SpanningTree& t, const Covering& cov) {
  std::vector<int> state_of(cov.total.vertex_count(), -1);
  std::vector<int> fiber{cov.base_lift};
  state_of[cov.base_lift] = 0;
  for (int u = 0; u < cov.total.vertex_count(); ++u) {
    if (u != cov.base_lift && cov.projection.vertex_map[u] == base.basepoint()) {
      state_of[u] = static_cast<int>(fiber.size());
      fiber.push_back(u);
    }
  }
  const Lifter lifter(cov, base.edge_count());
  CosetAutomaton a(t.rank(), static_cast<int>(fiber.size()));
  for (int gen = 0; gen < t.rank(); ++gen) {
    const EdgeWord loop = generator_loop(base, t, gen);
    for (std::size_t s = 0; s < fiber.size(); ++s) {
      int at = fiber[s];
      for (const Step& step : loop) {
        at = lifter.step(cov, at, base.index_of_checked(step.edge), step.sign).second;
        if (at < 0) throw PreconditionError("a generator loop has no lift; the map is not a covering");
      }
      a.connect(static_cast<int>(s), gen, state_of[at]);
    }
  }
  return canonicalize(a);
}

ComplexMap induced_bundle_map(const CoveringComplex& cover, const DerivedBundle& upstairs,
                              const DerivedBundle& downstairs) {
  const int n = upstairs.group_order;
  if (downstairs.group_order != n) throw PreconditionError("bundles have different structure groups");
  ComplexMap m;
  for (int u = 0; u < upstairs.total.vertex_count(); ++u) {
    m.vertex_map.push_back(cover.projection.vertex_map[u / n] * n + u % n);
  }
  for (int i = 0; i < upstairs.total.edge_count(); ++i) {
    m.edge_map.push_back(cover.projection.edge_map[i / n] * n + i % n);
  }
  return m;
}

ComplexMap restrict_to(const BundleComponent& part, const ComplexMap& m) {
  ComplexMap out;
  for (int u : part.bundle_vertex) out.vertex_map.push_back(m.vertex_map.at(u));
  for (int e : part.bundle_edge) out.edge_map.push_back(m.edge_map.at(e));
  return out;
}

ComplexMap corestrict_to(const ComplexMap& m, const BundleComponent& image) {
  std::map<int, int> vertex_local;
  std::map<int, int> edge_local;
  for (std::size_t i = 0; i < image.bundle_vertex.size(); ++i) vertex_local[image.bundle_vertex[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < image.bundle_edge.size(); ++i) edge_local[image.bundle_edge[i]] = static_cast<int>(i);
  ComplexMap out;
  for (int v : m.vertex_map) {
    auto it = vertex_local.find(v);
    if (it == vertex_local.end()) throw PreconditionError("map leaves the target component");
    out.vertex_map.push_back(it->second);
  }
  for (int e : m.edge_map) {
    auto it = edge_local.find(e);
    if (it == edge_local.end()) throw PreconditionError("map leaves the target component");
    out.edge_map.push_back(it->second);
  }
  return out;
}

// --- DOT ---------------------------------------------------------------------

namespace {

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

std::string edge_label(const BaseComplex& base, int base_edge, const GroupTable* g, const Voltage* v) {
  std::string label = "e" + std::to_string(base.edge(base_edge).id);
  if (g && v) label += " " + g->label(v->by_edge[base_edge]);
  return label;
}

std::string render(const std::string& name, const BaseComplex& c, const std::vector<std::string>& vertex_names,
                   const std::vector<std::string>& edge_labels) {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  for (const auto& v : vertex_names) out << "  " << quoted(v) << ";\n";
  for (int i = 0; i < c.edge_count(); ++i) {
    const Edge& e = c.edge(i);
    out << "  " << quoted(vertex_names[e.tail]) << " -> " << quoted(vertex_names[e.head]) << " [label="
        << quoted(edge_labels[i]) << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace

std::string base_to_dot(const BaseComplex& c, const GroupTable* g, const Voltage* v) {
  std::vector<std::string> names;
  for (int u = 0; u < c.vertex_count(); ++u) names.push_back("v0_" + std::to_string(u));
  std::vector<std::string> labels;
  for (int i = 0; i < c.edge_count(); ++i) labels.push_back(edge_label(c, i, g, v));
  return render("base", c, names, labels);
}

std::string cover_to_dot(const BaseComplex& base, const CoveringComplex& cov, const GroupTable* g, const Voltage* v) {
  std::vector<std::string> names;
  for (int u = 0; u < cov.total.vertex_count(); ++u) {
    names.push_back("v" + std::to_string(cov.sheet[u]) + "_" + std::to_string(cov.projection.vertex_map[u]));
  }
  std::vector<std::string> labels;
  for (int i = 0; i < cov.total.edge_count(); ++i) labels.push_back(edge_label(base, cov.projection.edge_map[i], g, v));
  return render("cover", cov.total, names, labels);
}

std::string bundle_to_dot(const BaseComplex& base, const GroupTable& g, const Voltage& v, const DerivedBundle& d) {
  std::vector<std::string> names;
  for (int u = 0; u < d.total.vertex_count(); ++u) {
    names.push_back("p" + std::to_string(d.projection.vertex_map[u]) + "_" + std::to_string(d.fiber_element[u]));
  }
  std::vector<std::string> labels;
  for (int i = 0; i < d.total.edge_count(); ++i) labels.push_back(edge_label(base, d.projection.edge_map[i], &g, &v));
  return render("bundle", d.total, names, labels);
}

std::string component_to_dot(const BaseComplex& base, const GroupTable& g, const Voltage& v, const BundleComponent& n) {
  std::vector<std::string> names;
  for (int u = 0; u < n.total.vertex_count(); ++u) {
    names.push_back("p" + std::to_string(n.projection.vertex_map[u]) + "_" + std::to_string(n.fiber_element[u]));
  }
  std::vector<std::string> labels;
  for (int i = 0; i < n.total.edge_count(); ++i) labels.push_back(edge_label(base, n.projection.edge_map[i], &g, &v));
  return render("holonomy_bundle", n.total, names, labels);
}

BaseComplex complex_from_dot(const std::string& dot) {
  static const std::regex node_re(R"re(^\s*"([^"]+)"\s*;\s*$)re");
  static const std::regex edge_re(R"re(^\s*"([^"]+)"\s*->\s*"([^"]+)"\s*(\[.*\])?\s*;\s*$)re");
  static const std::regex open_re(R"re(^\s*digraph\s+\w*\s*\{\s*$)re");
  static const std::regex close_re(R"re(^\s*\}\s*$)re");

  std::map<std::string, int> vertex;
  auto vertex_of = [&](const std::string& name) {
    auto [it, fresh] = vertex.emplace(name, static_cast<int>(vertex.size()));
    return it->second;
  };
  ComplexSpec spec;
  std::istringstream in(dot);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::smatch m;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (std::regex_match(line, open_re) || std::regex_match(line, close_re)) continue;
    if (std::regex_match(line, m, node_re)) {
      vertex_of(m[1]);
    } else if (std::regex_match(line, m, edge_re)) {
      const int tail = vertex_of(m[1]);
      const int head = vertex_of(m[2]);
      spec.edges.push_back({static_cast<int>(spec.edges.size()), tail, head});
    } else {
      throw InputError("unsupported DOT statement on line " + std::to_string(line_no) + ": " + line);
    }
  }
  if (vertex.empty()) throw InputError("DOT document has no vertices");
  spec.vertex_count = static_cast<int>(vertex.size());
  spec.basepoint = 0;
  return validate_complex(std::move(spec));
}

}  // namespace flatcover
