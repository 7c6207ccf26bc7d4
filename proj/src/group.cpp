#include "flatcover/group.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "flatcover/error.hpp"

namespace flatcover {

namespace {

Permutation compose(const Permutation& first, const Permutation& then) {
  Permutation out(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) out[i] = then[first[i]];
  return out;
}

bool is_bijection(const Permutation& p, int degree) {
  if (static_cast<int>(p.size()) != degree) return false;
  std::vector<bool> seen(degree, false);
  for (int x : p) {
    if (x < 0 || x >= degree || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

}  // namespace

GroupTable::GroupTable() : order_(1), product_{0}, inverse_{0}, labels_{"e"} {}

GroupTable::GroupTable(int order, std::vector<Element> product, std::vector<Element> inverse,
                       std::vector<std::string> labels, std::vector<Permutation> permutations)
    : order_(order),
      product_(std::move(product)),
      inverse_(std::move(inverse)),
      labels_(std::move(labels)),
      permutations_(std::move(permutations)) {
  if (order_ < 1) throw InputError("group order must be positive");
  const auto n = static_cast<std::size_t>(order_);
  if (product_.size() != n * n) throw InputError("product table has wrong size");
  if (inverse_.size() != n) throw InputError("inverse table has wrong size");
  if (labels_.empty()) {
    for (int i = 0; i < order_; ++i) labels_.push_back(i == 0 ? "e" : "g" + std::to_string(i));
  }
  if (labels_.size() != n) throw InputError("label table has wrong size");
  for (Element x : product_) {
    if (!contains(x)) throw InputError("product table entry out of range");
  }
  for (Element i = 0; i < order_; ++i) {
    if (mul(0, i) != i || mul(i, 0) != i) throw InputError("element 0 is not the identity");
    if (!contains(inverse_[i]) || mul(i, inverse_[i]) != 0) {
      throw InputError("inverse table is wrong at element " + std::to_string(i));
    }
  }
  std::set<std::string_view> distinct(labels_.begin(), labels_.end());
  if (distinct.size() != n) throw InputError("element labels are not unique");
}

Element GroupTable::product_of(std::span<const Element> xs) const {
  Element acc = identity();
  for (Element x : xs) acc = mul(acc, x);
  return acc;
}

std::optional<Element> GroupTable::find_label(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<Element>(it - labels_.begin());
}

bool GroupTable::is_associative() const {
  for (Element a = 0; a < order_; ++a)
    for (Element b = 0; b < order_; ++b) {
      const Element ab = mul(a, b);
      for (Element c = 0; c < order_; ++c)
        if (mul(ab, c) != mul(a, mul(b, c))) return false;
    }
  return true;
}

bool SubgroupSet::contains(Element x) const {
  return std::binary_search(members.begin(), members.end(), x);
}

std::string cycle_notation(const Permutation& p) {
  const bool commas = p.size() > 10;
  std::vector<bool> seen(p.size(), false);
  std::string out;
  for (std::size_t start = 0; start < p.size(); ++start) {
    if (seen[start] || p[start] == static_cast<int>(start)) continue;
    out += '(';
    std::size_t x = start;
    bool first = true;
    while (!seen[x]) {
      seen[x] = true;
      if (!first && commas) out += ',';
      out += std::to_string(x);
      first = false;
      x = static_cast<std::size_t>(p[x]);
    }
    out += ')';
  }
  return out.empty() ? "e" : out;
}

GroupTable group_from_permutations(int degree, std::span<const Permutation> generators,
                                   std::size_t cap) {
  if (degree < 1) throw InputError("permutation degree must be positive");
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (!is_bijection(generators[i], degree)) {
      throw InputError("generator " + std::to_string(i) + " is not a bijection on 0.." +
                       std::to_string(degree - 1));
    }
  }

  Permutation identity(degree);
  for (int i = 0; i < degree; ++i) identity[i] = i;

  std::vector<Permutation> elements{identity};
  std::map<Permutation, Element> index{{identity, 0}};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& gen : generators) {
      Permutation next = compose(elements[head], gen);
      if (index.contains(next)) continue;
      if (elements.size() >= cap) {
        throw CapExceeded("permutation group closure exceeds " + std::to_string(cap) + " elements");
      }
      index.emplace(next, static_cast<Element>(elements.size()));
      elements.push_back(std::move(next));
    }
  }

  const int order = static_cast<int>(elements.size());
  std::vector<Element> product(static_cast<std::size_t>(order) * order);
  std::vector<Element> inverse(order);
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      const Element ab = index.at(compose(elements[a], elements[b]));
      product[static_cast<std::size_t>(a) * order + b] = ab;
      if (ab == 0) inverse[a] = b;
    }
  }
  std::vector<std::string> labels;
  labels.reserve(order);
  for (const auto& p : elements) labels.push_back(cycle_notation(p));
  return GroupTable(order, std::move(product), std::move(inverse), std::move(labels),
                    std::move(elements));
}

GroupTable cyclic_group(int n) {
  if (n < 1) throw InputError("cyclic group order must be positive");
  Permutation shift(n);
  for (int i = 0; i < n; ++i) shift[i] = (i + 1) % n;
  const std::vector<Permutation> gens{shift};
  GroupTable g = group_from_permutations(n, gens);
  // Discovery order makes element k the k-th power of the shift.
  std::vector<std::string> labels;
  for (int k = 0; k < n; ++k) labels.push_back(std::to_string(k));
  std::vector<Element> product(static_cast<std::size_t>(n) * n);
  std::vector<Element> inverse(n);
  for (int a = 0; a < n; ++a) {
    inverse[a] = g.inv(a);
    for (int b = 0; b < n; ++b) product[static_cast<std::size_t>(a) * n + b] = g.mul(a, b);
  }
  return GroupTable(n, std::move(product), std::move(inverse), std::move(labels), g.permutations());
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{"Z2", "Z3", "Z4", "Z6", "S3", "D4", "A4", "S4"};
  return names;
}

GroupTable catalog_group(std::string_view name) {
  if (name == "Z2") return cyclic_group(2);
  if (name == "Z3") return cyclic_group(3);
  if (name == "Z4") return cyclic_group(4);
  if (name == "Z6") return cyclic_group(6);
  std::vector<Permutation> gens;
  int degree = 0;
  if (name == "S3") {
    degree = 3;
    gens = {{1, 0, 2}, {1, 2, 0}};
  } else if (name == "D4") {
    degree = 4;
    gens = {{1, 2, 3, 0}, {0, 3, 2, 1}};
  } else if (name == "A4") {
    degree = 4;
    gens = {{1, 2, 0, 3}, {1, 0, 3, 2}};
  } else if (name == "S4") {
    degree = 4;
    gens = {{1, 0, 2, 3}, {1, 2, 3, 0}};
  } else {
    throw InputError("unknown catalog group '" + std::string(name) + "'");
  }
  return group_from_permutations(degree, gens);
}

SubgroupSet subgroup_closure(const GroupTable& g, std::span<const Element> seed) {
  for (Element s : seed) {
    if (!g.contains(s)) throw InputError("element index " + std::to_string(s) + " out of range");
  }
  std::vector<bool> member(g.order(), false);
  std::vector<Element> queue{GroupTable::identity()};
  member[0] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (Element s : seed) {
      const Element next = g.mul(queue[head], s);
      if (!member[next]) {
        member[next] = true;
        queue.push_back(next);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return SubgroupSet{std::move(queue)};
}

SubgroupSet whole_group(const GroupTable& g) {
  SubgroupSet s;
  for (Element i = 0; i < g.order(); ++i) s.members.push_back(i);
  return s;
}

SubgroupSet trivial_subgroup() { return SubgroupSet{{0}}; }

bool is_subgroup(const GroupTable& g, const SubgroupSet& s) {
  if (!std::is_sorted(s.members.begin(), s.members.end())) return false;
  if (s.members.empty() || s.members.front() != 0) return false;
  for (Element x : s.members) {
    if (!g.contains(x) || !s.contains(g.inv(x))) return false;
    for (Element y : s.members)
      if (!s.contains(g.mul(x, y))) return false;
  }
  return true;
}

bool is_normal(const GroupTable& g, const SubgroupSet& s) {
  for (Element x = 0; x < g.order(); ++x)
    for (Element m : s.members)
      if (!s.contains(g.mul(g.mul(x, m), g.inv(x)))) return false;
  return true;
}

std::optional<Element> conjugating_element(const GroupTable& g, const SubgroupSet& a,
                                           const SubgroupSet& b) {
  if (a.size() != b.size()) return std::nullopt;
  for (Element x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (Element m : a.members) {
      if (!b.contains(g.conjugate(m, x))) {
        ok = false;
        break;
      }
    }
    if (ok) return x;
  }
  return std::nullopt;
}

std::vector<SubgroupSet> enumerate_subgroups(const GroupTable& g) {
  if (g.order() > kMaxEnumerationOrder) {
    throw PreconditionError("subgroup enumeration is limited to groups of order <= " +
                            std::to_string(kMaxEnumerationOrder));
  }
  // Level k holds the closures of k-element generating sets; each level is
  // obtained by adjoining one element to a subgroup of the previous level.
  std::set<SubgroupSet> found{trivial_subgroup()};
  std::set<SubgroupSet> level{trivial_subgroup()};
  for (int k = 0; k < 3; ++k) {
    std::set<SubgroupSet> next;
    for (const auto& h : level) {
      for (Element x = 0; x < g.order(); ++x) {
        if (h.contains(x)) continue;
        std::vector<Element> seed = h.members;
        seed.push_back(x);
        SubgroupSet closed = subgroup_closure(g, seed);
        if (found.insert(closed).second) next.insert(std::move(closed));
      }
    }
    level = std::move(next);
  }
  return {found.begin(), found.end()};
}

std::string format_subgroup(const GroupTable& g, const SubgroupSet& s) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < s.members.size(); ++i) {
    if (i) out << ", ";
    out << g.label(s.members[i]);
  }
  out << '}';
  return out.str();
}

}  // namespace flatcover
