#pragma once

// Flat connections as voltage assignments and their holonomy.
//
// A voltage assigns a group element to each oriented edge; walking an edge
// backwards contributes the inverse. Path products are read left to right.

#include <string>
#include <vector>

#include "flatcover/complex.hpp"
#include "flatcover/coset_automaton.hpp"
#include "flatcover/group.hpp"

namespace flatcover {

struct Voltage {
  std::vector<Element> by_edge;  // indexed by edge index
  friend bool operator==(const Voltage&, const Voltage&) = default;
};

/// Identity on every edge.
Voltage trivial_voltage(const BaseComplex& c);

struct FlatnessViolation {
  int relator = 0;
  Element product = 0;
};

/// Every relator whose path product is not the identity.
std::vector<FlatnessViolation> check_flatness(const BaseComplex& c, const GroupTable& g, const Voltage& v);

/// Path-ordered product along `w`. Throws InputError when `w` is not a path.
Element word_holonomy(const BaseComplex& c, const GroupTable& g, const Voltage& v, const EdgeWord& w);

struct HolonomyMorphism {
  std::vector<Element> images;  // one per π₁ generator
  friend bool operator==(const HolonomyMorphism&, const HolonomyMorphism&) = default;
};

/// Generator images through tree conjugation. Throws InputError if the
/// voltage is not flat.
HolonomyMorphism holonomy_morphism(const BaseComplex& c, const GroupTable& g, const Voltage& v,
                                   const SpanningTree& t);

/// Image of a generator word.
Element evaluate(const GroupTable& g, const HolonomyMorphism& h, const FreeWord& w);

SubgroupSet holonomy_group(const GroupTable& g, const HolonomyMorphism& h);

struct GaugeTransform {
  std::vector<Element> by_vertex;
};

/// ω′(e) = t(tail)⁻¹ · ω(e) · t(head).
Voltage apply_gauge(const BaseComplex& c, const GroupTable& g, const Voltage& v, const GaugeTransform& t);

/// Ker h as a coset automaton; its index is |Im h|.
CosetAutomaton kernel_automaton(const GroupTable& g, const HolonomyMorphism& h);

}  // namespace flatcover
