#pragma once

// Covering complexes, derived (voltage) graphs as discrete principal
// bundles, and the based subgroup carried by a covering.
//
// Derived-graph convention: the lift of edge e at fibre element x runs from
// (tail, x) to (head, x·ω(e)). Left translation (v, x) ↦ (v, y·x) then
// commutes with every lift, so the structure group acts on the left.
// Vertex (v, x) has index v·|G| + x and lifted edge (e, x) has index e·|G| + x.

#include <optional>
#include <string>
#include <vector>

#include "flatcover/complex.hpp"
#include "flatcover/connection.hpp"
#include "flatcover/coset_automaton.hpp"
#include "flatcover/group.hpp"

namespace flatcover {

/// A graph morphism given on vertex and edge indices; edges keep their
/// orientation.
struct ComplexMap {
  std::vector<int> vertex_map;
  std::vector<int> edge_map;
};

/// `second ∘ first`.
ComplexMap compose(const ComplexMap& first, const ComplexMap& second);

/// A complex mapped onto a base, with a chosen lift of the base's basepoint.
struct Covering {
  BaseComplex total;
  ComplexMap projection;
  int base_lift = 0;
};

struct CoveringComplex : Covering {
  std::vector<int> sheet;  // automaton state of each total vertex
  int degree = 1;
};

struct DerivedBundle : Covering {
  int group_order = 1;
  std::vector<Element> fiber_element;  // by total vertex
  std::vector<int> component;          // by total vertex, numbered by minimal vertex
  int component_count = 0;
};

/// One connected component of a derived bundle, as a covering of the base.
struct BundleComponent : Covering {
  std::vector<int> bundle_vertex;  // component vertex -> derived-bundle vertex
  std::vector<int> bundle_edge;    // component edge -> derived-bundle edge
  std::vector<Element> fiber_element;
  int degree = 0;

  /// Fibre elements sitting over the base's basepoint, sorted.
  std::vector<Element> fiber_over_basepoint(const BaseComplex& base) const;
};

/// Sheets are automaton states; tree edges stay in their sheet and the
/// generator edge g moves sheet s to the g-successor of s. Relators are
/// lifted at every sheet. Throws PreconditionError for incomplete automata
/// and InputError when a relator fails to lift to a closed path.
CoveringComplex build_cover(const BaseComplex& c, const SpanningTree& t, const CosetAutomaton& a);

/// Star-bijectivity at every source vertex (loops contribute both ends) and
/// surjectivity on vertices. Throws PreconditionError if `m` does not
/// respect incidences.
bool is_covering_map(const BaseComplex& source, const BaseComplex& target, const ComplexMap& m);

/// Bijective on vertices and edges.
bool is_isomorphism(const BaseComplex& source, const BaseComplex& target, const ComplexMap& m);

/// Total space of the voltage's principal bundle. Throws InputError if the
/// voltage is not flat.
DerivedBundle derived_bundle(const BaseComplex& c, const GroupTable& g, const Voltage& v);

BundleComponent bundle_component(const DerivedBundle& d, int component);

/// Component containing the basepoint lift (basepoint, identity).
BundleComponent holonomy_bundle(const DerivedBundle& d);

/// Subgroup of base loops that lift to closed loops at the base lift. States
/// are the fibre over the basepoint. Throws PreconditionError when a lift is
/// missing.
CosetAutomaton subgroup_of_cover(const BaseComplex& base, const SpanningTree& t, const Covering& cov);

/// The map P̂ → P induced by a covering M̂ → M on derived bundles of ω̂ = ω∘q
/// and ω.
ComplexMap induced_bundle_map(const CoveringComplex& cover, const DerivedBundle& upstairs,
                              const DerivedBundle& downstairs);

/// Restricts a map to a component: vertices and edges of `part` are taken
/// through `part.bundle_vertex`/`bundle_edge` first.
ComplexMap restrict_to(const BundleComponent& part, const ComplexMap& m);

/// Re-expresses a map's images in the numbering of the component `image`.
/// Throws PreconditionError if some image falls outside it.
ComplexMap corestrict_to(const ComplexMap& m, const BundleComponent& image);

/// Lift of a base path starting at `start`, or nullopt when some step has
/// no lift there.
std::optional<EdgeWord> lift_path(const Covering& cov, const BaseComplex& base, const EdgeWord& w, int start);

// --- DOT ---------------------------------------------------------------------

std::string base_to_dot(const BaseComplex& c, const GroupTable* g = nullptr, const Voltage* v = nullptr);
std::string cover_to_dot(const BaseComplex& base, const CoveringComplex& cov, const GroupTable* g = nullptr,
                         const Voltage* v = nullptr);
std::string bundle_to_dot(const BaseComplex& base, const GroupTable& g, const Voltage& v, const DerivedBundle& d);
std::string component_to_dot(const BaseComplex& base, const GroupTable& g, const Voltage& v,
                             const BundleComponent& n);

/// Reads the digraph subset written above: quoted node statements and
/// labelled edges. Vertices are numbered in order of first mention, edge ids
/// in statement order, and the first node is the basepoint.
BaseComplex complex_from_dot(const std::string& dot);

}  // namespace flatcover
