#include <doctest.h>

#include "flatcover/error.hpp"
#include "fixtures.hpp"

using namespace flatcover;
using namespace fixtures;

namespace {

CosetAutomaton a3_automaton(const GroupTable& g) {
  const std::vector<Element> images{el(g, "(01)"), el(g, "(012)")};
  return automaton_from_quotient(images, g, set_of(g, {"(012)"}));
}

}  // namespace

TEST_SUITE("covering") {
  TEST_CASE("index one cover is the base") {
    const BaseComplex w = wedge();
    const SpanningTree t = spanning_tree(w);
    CosetAutomaton whole(2, 1);
    whole.connect(0, 0, 0);
    whole.connect(0, 1, 0);
    const CoveringComplex cov = build_cover(w, t, whole);
    CHECK(cov.degree == 1);
    CHECK(is_isomorphism(cov.total, w, cov.projection));
  }

  TEST_CASE("parity cover of the wedge") {
    const GroupTable g = catalog_group("S3");
    const BaseComplex w = wedge();
    const CoveringComplex cov = build_cover(w, spanning_tree(w), a3_automaton(g));
    CHECK(cov.degree == 2);
    CHECK(cov.total.vertex_count() == 2);
    CHECK(cov.total.edge_count() == 4);
    int crossing_a = 0, b_loops = 0;
    for (int i = 0; i < cov.total.edge_count(); ++i) {
      const Edge& e = cov.total.edge(i);
      if (cov.projection.edge_map[i] == 0 && e.tail != e.head) ++crossing_a;
      if (cov.projection.edge_map[i] == 1 && e.tail == e.head) ++b_loops;
    }
    CHECK(crossing_a == 2);
    CHECK(b_loops == 2);
    CHECK(is_covering_map(cov.total, w, cov.projection));
  }

  TEST_CASE("double cover of the circle") {
    const BaseComplex c = circle();
    const CoveringComplex cov = build_cover(c, spanning_tree(c), kernel_automaton(catalog_group("Z2"), {{1}}));
    CHECK(cov.total.vertex_count() == 2);
    CHECK(cov.total.edge_count() == 2);
    CHECK(graph_rank(cov.total) == 1);
  }

  TEST_CASE("covers with tree edges and relators") {
    const GroupTable z4 = catalog_group("Z4");
    const BaseComplex t = torus();
    const SpanningTree tree = spanning_tree(t);
    const Presentation p = pi1_presentation(t, tree);
    const std::vector<Element> images{1, 2};
    const CoveringComplex cov = build_cover(t, tree, automaton_from_quotient(images, z4, trivial_subgroup(), p.relators));
    CHECK(cov.degree == 4);
    CHECK(cov.total.relators().size() == 4);
    CHECK(is_covering_map(cov.total, t, cov.projection));

    const BaseComplex c = complex_of(3, {{0, 0, 1}, {1, 1, 2}, {2, 2, 0}, {3, 0, 2}});
    const SpanningTree ct = spanning_tree(c);
    const GroupTable s3 = catalog_group("S3");
    const std::vector<Element> gens{el(s3, "(01)"), el(s3, "(012)")};
    const CoveringComplex big = build_cover(c, ct, automaton_from_quotient(gens, s3, trivial_subgroup()));
    CHECK(big.total.vertex_count() == 18);
    CHECK(is_covering_map(big.total, c, big.projection));
    CHECK(automata_equal(subgroup_of_cover(c, ct, big), automaton_from_quotient(gens, s3, trivial_subgroup())));
  }

  TEST_CASE("covering map checks") {
    const BaseComplex c = circle();
    const BaseComplex two = complex_of(2, {{0, 0, 1}, {1, 1, 0}});
    CHECK(is_covering_map(two, c, ComplexMap{{0, 0}, {0, 0}}));
    // The constant map of the parallel 2-cycle onto the circle doubles the star.
    CHECK_FALSE(is_covering_map(two_cycle(), c, ComplexMap{{0, 0}, {0, 0}}));
    CHECK_FALSE(is_covering_map(two, complex_of(1, {{0, 0, 0}, {1, 0, 0}}), ComplexMap{{0, 0}, {0, 0}}));
    const BaseComplex loop_and_edge = complex_of(2, {{0, 0, 0}, {1, 0, 1}});
    CHECK_THROWS_AS(is_covering_map(two, loop_and_edge, ComplexMap{{0, 1}, {0, 0}}), PreconditionError);
  }

  TEST_CASE("derived bundles") {
    const GroupTable g = catalog_group("S3");
    const BaseComplex w = wedge();
    const DerivedBundle trivial = derived_bundle(w, g, trivial_voltage(w));
    CHECK(trivial.component_count == 6);

    const Voltage v{{el(g, "(01)"), el(g, "(012)")}};
    const DerivedBundle d = derived_bundle(w, g, v);
    CHECK(d.component_count == 1);
    CHECK(d.total.vertex_count() == 6);
    CHECK(d.total.edge_count() == 12);
    CHECK(is_covering_map(d.total, w, d.projection));

    const DerivedBundle circle2 = derived_bundle(circle(), catalog_group("Z2"), Voltage{{1}});
    CHECK(circle2.component_count == 1);
    CHECK(circle2.total.vertex_count() == 2);

    CHECK_THROWS_AS(derived_bundle(torus(), g, Voltage{{el(g, "(01)"), el(g, "(02)")}}), InputError);
  }

  TEST_CASE("holonomy bundles") {
    const GroupTable g = catalog_group("S3");
    const BaseComplex w = wedge();
    const BundleComponent full = holonomy_bundle(derived_bundle(w, g, Voltage{{el(g, "(01)"), el(g, "(012)")}}));
    CHECK(full.degree == 6);
    CHECK(holonomy_bundle(derived_bundle(w, g, trivial_voltage(w))).degree == 1);

    const BundleComponent half = holonomy_bundle(derived_bundle(w, g, Voltage{{el(g, "(01)"), 0}}));
    CHECK(half.degree == 2);
    CHECK(half.fiber_over_basepoint(w) == std::vector<Element>{0, el(g, "(01)")});
  }

  TEST_CASE("subgroups carried by covers") {
    const GroupTable g = catalog_group("S3");
    const BaseComplex w = wedge();
    const SpanningTree t = spanning_tree(w);
    const CosetAutomaton a = a3_automaton(g);
    CHECK(automata_equal(subgroup_of_cover(w, t, build_cover(w, t, a)), a));

    const Voltage v{{el(g, "(01)"), el(g, "(012)")}};
    const HolonomyMorphism h = holonomy_morphism(w, g, v, t);
    const DerivedBundle d = derived_bundle(w, g, v);
    CHECK(automata_equal(subgroup_of_cover(w, t, holonomy_bundle(d)), kernel_automaton(g, h)));
    CHECK(automata_equal(subgroup_of_cover(w, t, d), kernel_automaton(g, h)));
  }

  TEST_CASE("path lifting") {
    const GroupTable g = catalog_group("S3");
    const BaseComplex w = wedge();
    const CoveringComplex cov = build_cover(w, spanning_tree(w), a3_automaton(g));
    const auto lifted = lift_path(cov, w, parse_edge_word(w, "a a b"), cov.base_lift);
    REQUIRE(lifted.has_value());
    CHECK(lifted->size() == 3);
    CHECK(cov.total.path_end(*lifted, -1) == cov.base_lift);
    const auto once = lift_path(cov, w, parse_edge_word(w, "a"), cov.base_lift);
    CHECK(cov.total.path_end(*once, -1) != cov.base_lift);
  }

  TEST_CASE("dot export round trip") {
    const GroupTable g = catalog_group("S3");
    const BaseComplex w = wedge();
    const Voltage v{{el(g, "(01)"), el(g, "(012)")}};
    const CoveringComplex cov = build_cover(w, spanning_tree(w), a3_automaton(g));
    const std::string dot = cover_to_dot(w, cov, &g, &v);
    CHECK(dot.rfind("digraph cover {", 0) == 0);
    const BaseComplex back = complex_from_dot(dot);
    CHECK(back.vertex_count() == 2 * w.vertex_count());
    CHECK(back.edge_count() == 2 * w.edge_count());

    const DerivedBundle d = derived_bundle(w, g, v);
    const BaseComplex bundle = complex_from_dot(bundle_to_dot(w, g, v, d));
    CHECK(bundle.vertex_count() == 6);
    CHECK(bundle.edge_count() == 12);
    CHECK(base_to_dot(w).find("digraph base") == 0);
    CHECK(component_to_dot(w, g, v, holonomy_bundle(d)).find("digraph holonomy_bundle") == 0);
  }
}
