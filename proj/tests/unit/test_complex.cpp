#include <doctest.h>

#include "flatcover/error.hpp"
#include "fixtures.hpp"

using namespace flatcover;
using namespace fixtures;

TEST_SUITE("complex") {
  TEST_CASE("validation") {
    CHECK(wedge().edge_count() == 2);
    CHECK(torus().relators().size() == 1);
    CHECK_THROWS_AS(complex_of(2, {}), InputError);

    ComplexSpec dangling{1, {{0, 0, 3}}, 0, {}, {}};
    try {
      validate_complex(dangling);
      FAIL("expected an error");
    } catch (const InputError& e) {
      CHECK(e.location() == "/complex/edges/0/head");
    }
    ComplexSpec duplicate{1, {{4, 0, 0}, {4, 0, 0}}, 0, {}, {}};
    CHECK_THROWS_AS(validate_complex(duplicate), InputError);
    // a b is not closed in a path graph.
    CHECK_THROWS_AS(complex_of(3, {{0, 0, 1}, {1, 1, 2}}, {{"a", 0}, {"b", 1}}, {"a b"}), InputError);
  }

  TEST_CASE("edges are stored by ascending id") {
    const BaseComplex c = complex_of(2, {{7, 0, 1}, {2, 1, 0}});
    CHECK(c.edge(0).id == 2);
    CHECK(c.index_of(7) == 1);
    CHECK_FALSE(c.index_of(3).has_value());
  }

  TEST_CASE("spanning trees") {
    CHECK(spanning_tree(wedge()).rank() == 2);

    const SpanningTree path = spanning_tree(complex_of(3, {{0, 0, 1}, {1, 1, 2}}));
    CHECK(path.in_tree == std::vector<bool>{true, true});
    CHECK(path.rank() == 0);

    const BaseComplex c = two_cycle();
    const SpanningTree t = spanning_tree(c);
    CHECK(t.in_tree == std::vector<bool>{true, false});
    CHECK(t.generator_edges == std::vector<int>{1});
  }

  TEST_CASE("loops to generator words") {
    const BaseComplex c = two_cycle();
    const SpanningTree t = spanning_tree(c);
    CHECK(loop_to_generator_word(c, t, parse_edge_word(c, "e1 e1^-1")).empty());
    CHECK(loop_to_generator_word(c, t, parse_edge_word(c, "e1 e2^-1")) == word({{0, -1}}));

    const BaseComplex w = wedge();
    CHECK(loop_to_generator_word(w, spanning_tree(w), parse_edge_word(w, "a")) == word({{0, 1}}));
    CHECK_THROWS_AS(loop_to_generator_word(c, t, parse_edge_word(c, "e1")), InputError);
  }

  TEST_CASE("generator loops round trip") {
    const BaseComplex c = complex_of(3, {{0, 0, 1}, {1, 1, 2}, {2, 2, 0}, {3, 0, 2}});
    const SpanningTree t = spanning_tree(c);
    for (int g = 0; g < t.rank(); ++g) {
      const EdgeWord loop = generator_loop(c, t, g);
      CHECK(loop_to_generator_word(c, t, loop) == word({{g, 1}}));
    }
    const FreeWord w = word({{0, 1}, {1, -1}, {0, 1}});
    CHECK(loop_to_generator_word(c, t, word_to_loop(c, t, w)) == w);
  }

  TEST_CASE("fundamental group presentations") {
    const BaseComplex w = wedge();
    const Presentation pw = pi1_presentation(w, spanning_tree(w));
    CHECK(pw.rank == 2);
    CHECK(pw.relators.empty());

    const BaseComplex t = torus();
    const Presentation pt = pi1_presentation(t, spanning_tree(t));
    REQUIRE(pt.relators.size() == 1);
    CHECK(pt.relators[0] == word({{0, 1}, {1, 1}, {0, -1}, {1, -1}}));
    CHECK(format_free_word(pt, pt.relators[0]) == "a b a^-1 b^-1");

    const BaseComplex point = complex_of(1, {});
    CHECK(pi1_presentation(point, spanning_tree(point)).rank == 0);
  }

  TEST_CASE("word parsing") {
    const BaseComplex w = wedge();
    const EdgeWord x = parse_edge_word(w, "a^2 b^-1 e0");
    CHECK(x.size() == 4);
    CHECK(format_edge_word(w, x) == "a a b^-1 a");
    CHECK_THROWS_AS(parse_edge_word(w, "c"), InputError);
    CHECK_THROWS_AS(parse_edge_word(w, "a^x"), InputError);

    const BaseComplex c = two_cycle();
    CHECK_THROWS_AS(parse_generator_word(c, spanning_tree(c), "e1"), InputError);
    CHECK(parse_generator_word(c, spanning_tree(c), "e2^-1 e2 e2") == word({{0, 1}}));
  }

  TEST_CASE("free reduction") {
    CHECK(free_reduce(word({{0, 1}, {1, 1}, {1, -1}, {0, -1}})).empty());
    CHECK(concat(word({{0, 1}}), inverse(word({{1, 1}, {0, 1}}))) == word({{1, -1}}));
    CHECK(concat(word({{0, 1}, {1, 1}}), inverse(word({{0, 1}, {1, 1}}))).empty());
  }
}
