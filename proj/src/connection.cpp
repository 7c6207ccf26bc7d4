#include "flatcover/connection.hpp"

#include "flatcover/error.hpp"

namespace flatcover {

Voltage trivial_voltage(const BaseComplex& c) {
  return Voltage{std::vector<Element>(c.edge_count(), GroupTable::identity())};
}

Element word_holonomy(const BaseComplex& c, const GroupTable& g, const Voltage& v, const EdgeWord& w) {
  if (!c.is_path(w)) throw InputError("word is not a path: " + format_edge_word(c, w));
  Element acc = GroupTable::identity();
  for (const Step& s : w) {
    const Element x = v.by_edge[c.index_of_checked(s.edge)];
    acc = g.mul(acc, s.sign > 0 ? x : g.inv(x));
  }
  return acc;
}

std::vector<FlatnessViolation> check_flatness(const BaseComplex& c, const GroupTable& g, const Voltage& v) {
  std::vector<FlatnessViolation> out;
  for (std::size_t i = 0; i < c.relators().size(); ++i) {
    const Element p = word_holonomy(c, g, v, c.relators()[i]);
    if (p != GroupTable::identity()) out.push_back({static_cast<int>(i), p});
  }
  return out;
}

HolonomyMorphism holonomy_morphism(const BaseComplex& c, const GroupTable& g, const Voltage& v,
                                   const SpanningTree& t) {
  if (static_cast<int>(v.by_edge.size()) != c.edge_count()) throw InputError("voltage does not cover every edge");
  const auto violations = check_flatness(c, g, v);
  if (!violations.empty()) {
    throw InputError("flatness violated: relator " + std::to_string(violations.front().relator) +
                     " has product " + g.label(violations.front().product));
  }
  HolonomyMorphism h;
  for (int gen = 0; gen < t.rank(); ++gen) h.images.push_back(word_holonomy(c, g, v, generator_loop(c, t, gen)));

  const Presentation p = pi1_presentation(c, t);
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    if (evaluate(g, h, p.relators[i]) != GroupTable::identity()) {
      throw InputError("relator " + std::to_string(i) + " does not map to the identity");
    }
  }
  return h;
}

Element evaluate(const GroupTable& g, const HolonomyMorphism& h, const FreeWord& w) {
  Element acc = GroupTable::identity();
  for (const Letter& l : w) {
    const Element x = h.images.at(l.generator);
    acc = g.mul(acc, l.exponent > 0 ? x : g.inv(x));
  }
  return acc;
}

SubgroupSet holonomy_group(const GroupTable& g, const HolonomyMorphism& h) {
  return subgroup_closure(g, h.images);
}

Voltage apply_gauge(const BaseComplex& c, const GroupTable& g, const Voltage& v, const GaugeTransform& t) {
  if (static_cast<int>(t.by_vertex.size()) != c.vertex_count()) {
    throw InputError("gauge transform must assign an element to every vertex");
  }
  Voltage out = v;
  for (int i = 0; i < c.edge_count(); ++i) {
    const Edge& e = c.edge(i);
    out.by_edge[i] = g.mul(g.mul(g.inv(t.by_vertex[e.tail]), v.by_edge[i]), t.by_vertex[e.head]);
  }
  return out;
}

CosetAutomaton kernel_automaton(const GroupTable& g, const HolonomyMorphism& h) {
  return automaton_from_quotient(h.images, g, trivial_subgroup());
}

}  // namespace flatcover
