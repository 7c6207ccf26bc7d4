#include <doctest.h>

#include "flatcover/error.hpp"
#include "fixtures.hpp"

using namespace flatcover;
using namespace fixtures;

namespace {

const GroupTable& s3() {
  static const GroupTable g = catalog_group("S3");
  return g;
}

Instance wedge_instance(std::vector<std::string> subgroup) { return Instance::build(wedge_s3(preimage(s3(), std::move(subgroup)))); }

Instance index_one() {
  return Instance::build(wedge_s3(WordsSubgroup{{word({{0, 1}}), word({{1, 1}})}}));
}

std::string detail(const VerificationReport& r, const char* key) {
  const std::string* d = r.detail(key);
  return d ? *d : "<missing>";
}

}  // namespace

TEST_SUITE("theorems") {
  TEST_CASE("pulled-back voltage") {
    const Instance inst = wedge_instance({"e", "(012)"});
    const Voltage& pulled = inst.pulled_voltage();
    REQUIRE(pulled.by_edge.size() == 4);
    for (int i = 0; i < 4; ++i) {
      const int base_edge = inst.cover().projection.edge_map[i];
      CHECK(pulled.by_edge[i] == (base_edge == 0 ? el(s3(), "(01)") : el(s3(), "(012)")));
    }
    CHECK(index_one().pulled_voltage() == index_one().voltage());
  }

  TEST_CASE("induced holonomy images") {
    CHECK(induced_holonomy_image(wedge_instance({"e"})) == trivial_subgroup());
    CHECK(induced_holonomy_image(wedge_instance({"(012)"})) == set_of(s3(), {"(012)"}));
    CHECK(induced_holonomy_image(index_one()) == whole_group(s3()));

    for (auto subgroup : {std::vector<std::string>{"e"}, {"(012)"}, {"(01)"}}) {
      const VerificationReport r = verify_induced_holonomy_image(wedge_instance(subgroup));
      CHECK(r.verdict == Verdict::holds);
    }
    CHECK(verify_induced_holonomy_image(index_one()).verdict == Verdict::holds);
  }

  TEST_CASE("functoriality on sampled loops") {
    const Instance inst = wedge_instance({"(012)"});
    const VerificationReport r = verify_functoriality(inst, 100, 99);
    CHECK(r.verdict == Verdict::holds);
    CHECK(detail(r, "agreements") == "100");
    // Same seed, same report.
    CHECK(verify_functoriality(inst, 100, 99).details == r.details);
  }

  TEST_CASE("triviality criterion") {
    const VerificationReport kernel = is_induced_trivial(wedge_instance({"e"}));
    CHECK(kernel.verdict == Verdict::holds);
    CHECK(detail(kernel, "trivial") == "yes");
    CHECK(detail(kernel, "components_upstairs") == "6");

    const VerificationReport a3 = is_induced_trivial(wedge_instance({"(012)"}));
    CHECK(a3.verdict == Verdict::holds);
    CHECK(detail(a3, "trivial") == "no");
    REQUIRE_FALSE(a3.witnesses.empty());
    CHECK(a3.witnesses[0].second == "b");

    InstanceData flat = wedge_s3(preimage(s3(), {"(01)"}));
    flat.voltage = trivial_voltage(flat.base);
    flat.covering = QuotientSubgroup{s3(), {el(s3(), "(01)"), el(s3(), "(012)")}, set_of(s3(), {"(01)"})};
    const VerificationReport trivial = is_induced_trivial(Instance::build(flat));
    CHECK(trivial.verdict == Verdict::holds);
    CHECK(detail(trivial, "trivial") == "yes");
  }

  TEST_CASE("induced bundle map is a covering") {
    for (auto subgroup : {std::vector<std::string>{"e"}, {"(012)"}, {"(01)"}}) {
      CHECK(verify_induced_bundle_covering(wedge_instance(subgroup)).verdict == Verdict::holds);
    }
  }

  TEST_CASE("kernel cover leaf") {
    const VerificationReport r = verify_kernel_cover_leaf(wedge_instance({"e"}));
    CHECK(r.verdict == Verdict::holds);
    CHECK(detail(r, "composite_equals_kernel") == "yes");

    InstanceData small = wedge_s3(preimage(s3(), {"e"}));
    small.voltage.by_edge[1] = 0;
    small.covering = QuotientSubgroup{s3(), {el(s3(), "(01)"), 0}, trivial_subgroup()};
    CHECK(verify_kernel_cover_leaf(Instance::build(small)).verdict == Verdict::hypotheses_not_met);

    InstanceData flat = wedge_s3(WordsSubgroup{{word({{0, 1}}), word({{1, 1}})}});
    flat.voltage = trivial_voltage(flat.base);
    flat.group = GroupTable{};
    CHECK(verify_kernel_cover_leaf(Instance::build(flat)).verdict == Verdict::holds);
  }

  TEST_CASE("intermediate cover leaf") {
    CHECK(verify_intermediate_cover_leaf(wedge_instance({"(012)"})).verdict == Verdict::holds);
    const VerificationReport odd = verify_intermediate_cover_leaf(wedge_instance({"(01)"}));
    CHECK(odd.verdict == Verdict::holds);
    CHECK(detail(odd, "covering_regular") == "no");

    // An index-2 subgroup of Ker h: the kernel of Ker h → Z2 sending the last
    // Schreier generator to 1 and the others to 0.
    const Instance kernel = wedge_instance({"e"});
    const auto w = reidemeister_schreier(kernel.kernel());
    REQUIRE(w.size() == 7);
    std::vector<FreeWord> gens(w.begin(), w.end() - 1);
    gens.push_back(concat(w[6], w[6]));
    for (std::size_t i = 0; i + 1 < w.size(); ++i) gens.push_back(concat(concat(w[6], w[i]), inverse(w[6])));
    const Instance narrow = Instance::build(wedge_s3(WordsSubgroup{gens}));
    CHECK(narrow.subgroup().state_count() == 12);
    const VerificationReport r = verify_intermediate_cover_leaf(narrow);
    CHECK(r.verdict == Verdict::hypotheses_not_met);
    CHECK_FALSE(r.witnesses.empty());

    // b³ lies in Ker h but not in the preimage of 0 under a ↦ 0, b ↦ 1 in Z2.
    const GroupTable z2 = catalog_group("Z2");
    const Instance parity = Instance::build(wedge_s3(QuotientSubgroup{z2, {0, 1}, trivial_subgroup()}));
    CHECK(verify_intermediate_cover_leaf(parity).verdict == Verdict::hypotheses_not_met);
  }

  TEST_CASE("kernel cover total space") {
    const VerificationReport r = verify_kernel_cover_total_space(wedge_instance({"e"}));
    CHECK(r.verdict == Verdict::holds);
    CHECK(detail(r, "components_upstairs") == "6");
    CHECK(verify_kernel_cover_total_space(index_one()).verdict == Verdict::hypotheses_not_met);

    InstanceData circle2{"circle/Z2", catalog_group("Z2"), circle(), Voltage{{1}},
                         QuotientSubgroup{catalog_group("Z2"), {1}, trivial_subgroup()}};
    const VerificationReport c = verify_kernel_cover_total_space(Instance::build(circle2));
    CHECK(c.verdict == Verdict::holds);
    CHECK(detail(c, "components_upstairs") == "2");
  }

  TEST_CASE("leaf fundamental group") {
    const VerificationReport r = verify_leaf_fundamental_group(index_one());
    CHECK(r.verdict == Verdict::holds);
    CHECK(detail(r, "leaf_rank") == "7");
    CHECK_FALSE(r.notes.empty());

    InstanceData circle2{"circle/Z2", catalog_group("Z2"), circle(), Voltage{{1}},
                         QuotientSubgroup{catalog_group("Z2"), {1}, trivial_subgroup()}};
    CHECK(detail(verify_leaf_fundamental_group(Instance::build(circle2)), "leaf_rank") == "1");
  }

  TEST_CASE("relaxed gates evaluate anyway") {
    const Instance inst = wedge_instance({"(012)"});
    CHECK(verify_kernel_cover_leaf(inst).verdict == Verdict::hypotheses_not_met);
    const VerificationReport relaxed = verify_kernel_cover_leaf(inst, {true});
    CHECK(relaxed.verdict != Verdict::hypotheses_not_met);
    CHECK_FALSE(relaxed.notes.empty());
  }

  TEST_CASE("brute-force oracle") {
    const BaseComplex w = wedge();
    const Voltage v{{el(s3(), "(01)"), el(s3(), "(012)")}};
    const OracleResult r = oracle_holonomy(w, s3(), v, 6);
    CHECK(r.group == whole_group(s3()));
    CHECK(r.stabilized);
    CHECK(oracle_holonomy(w, s3(), trivial_voltage(w), 6).group == trivial_subgroup());
    CHECK(oracle_holonomy(circle(), catalog_group("Z4"), Voltage{{1}}, 8).group.size() == 4);
    CHECK(graph_diameter(w) == 0);
    CHECK(graph_diameter(complex_of(3, {{0, 0, 1}, {1, 1, 2}})) == 2);
  }

  TEST_CASE("random corpus is reproducible") {
    const auto a = random_corpus(5, 12);
    const auto b = random_corpus(5, 12);
    REQUIRE(a.size() == 12);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].name == b[i].name);
      CHECK(a[i].voltage == b[i].voltage);
      CHECK(check_flatness(a[i].base, a[i].group, a[i].voltage).empty());
    }
    CHECK(base_catalog().size() == 6);
  }

  TEST_CASE("infinite index is rejected") {
    CHECK_THROWS_AS(Instance::build(wedge_s3(WordsSubgroup{{word({{0, 1}})}})), PreconditionError);
  }
}
