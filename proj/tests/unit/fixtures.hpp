#pragma once

#include <string>
#include <vector>

#include "flatcover/theorems.hpp"

namespace fixtures {

using namespace flatcover;

inline BaseComplex complex_of(int vertices, std::vector<Edge> edges, std::map<std::string, int> aliases = {},
                              std::vector<std::string> relators = {}) {
  ComplexSpec spec;
  spec.vertex_count = vertices;
  spec.edges = std::move(edges);
  spec.aliases = std::move(aliases);
  for (const auto& r : relators) spec.relators.push_back(parse_edge_word(spec.aliases, r));
  return validate_complex(std::move(spec));
}

inline BaseComplex wedge() { return complex_of(1, {{0, 0, 0}, {1, 0, 0}}, {{"a", 0}, {"b", 1}}); }
inline BaseComplex torus() { return complex_of(1, {{0, 0, 0}, {1, 0, 0}}, {{"a", 0}, {"b", 1}}, {"a b a^-1 b^-1"}); }
inline BaseComplex circle() { return complex_of(1, {{0, 0, 0}}, {{"a", 0}}); }
inline BaseComplex two_cycle() { return complex_of(2, {{1, 0, 1}, {2, 0, 1}}); }

inline Element el(const GroupTable& g, const std::string& label) {
  auto x = g.find_label(label);
  if (!x) throw std::runtime_error("no element " + label);
  return *x;
}

inline SubgroupSet set_of(const GroupTable& g, std::vector<std::string> labels) {
  std::vector<Element> xs;
  for (const auto& l : labels) xs.push_back(el(g, l));
  return subgroup_closure(g, xs);
}

inline FreeWord word(std::initializer_list<std::pair<int, int>> letters) {
  FreeWord w;
  for (auto [g, e] : letters) w.push_back({g, e});
  return w;
}

// Running example: wedge of two circles, S3, a -> (01), b -> (012).
inline InstanceData wedge_s3(SubgroupSpec covering) {
  GroupTable g = catalog_group("S3");
  Voltage v{{el(g, "(01)"), el(g, "(012)")}};
  return {"wedge/S3", g, wedge(), v, std::move(covering)};
}

inline QuotientSubgroup preimage(const GroupTable& g, std::vector<std::string> labels) {
  return QuotientSubgroup{g, {el(g, "(01)"), el(g, "(012)")}, set_of(g, std::move(labels))};
}

}  // namespace fixtures
