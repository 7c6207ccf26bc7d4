#pragma once

// Finite groups given by explicit multiplication tables.
//
// Convention used across the whole library: products are read left to
// right. For permutation groups, `p * q` means "apply p, then q", so the
// product of a path's edge labels is the label product in traversal order.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace flatcover {

/// Index of an element inside a GroupTable. Index 0 is always the identity.
using Element = int;

/// Images of 0..degree-1.
using Permutation = std::vector<int>;

class GroupTable {
 public:
  GroupTable();  // trivial group

  /// Builds a table from raw data. Throws InputError when the identity,
  /// inverse, or totality invariants fail.
  GroupTable(int order, std::vector<Element> product, std::vector<Element> inverse,
             std::vector<std::string> labels, std::vector<Permutation> permutations = {});

  int order() const noexcept { return order_; }
  static constexpr Element identity() noexcept { return 0; }
  bool contains(Element x) const noexcept { return x >= 0 && x < order_; }

  Element mul(Element a, Element b) const { return product_[static_cast<std::size_t>(a) * order_ + b]; }
  Element inv(Element a) const { return inverse_[a]; }
  /// a⁻¹ b a
  Element conjugate(Element b, Element a) const { return mul(mul(inv(a), b), a); }

  /// Left-to-right product of a sequence.
  Element product_of(std::span<const Element> xs) const;

  const std::string& label(Element x) const { return labels_[x]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<Element> find_label(std::string_view label) const;

  /// Permutation realising each element, when the group was built from
  /// permutations; empty otherwise.
  const std::vector<Permutation>& permutations() const noexcept { return permutations_; }

  /// Exhaustive associativity check; O(order³).
  bool is_associative() const;

  friend bool operator==(const GroupTable&, const GroupTable&) = default;

 private:
  int order_ = 1;
  std::vector<Element> product_;
  std::vector<Element> inverse_;
  std::vector<std::string> labels_;
  std::vector<Permutation> permutations_;
};

/// A subgroup, stored as its sorted member list.
struct SubgroupSet {
  std::vector<Element> members;

  std::size_t size() const noexcept { return members.size(); }
  bool contains(Element x) const;
  friend bool operator==(const SubgroupSet&, const SubgroupSet&) = default;
  friend auto operator<=>(const SubgroupSet& a, const SubgroupSet& b) {
    if (a.members.size() != b.members.size()) return a.members.size() <=> b.members.size();
    return a.members <=> b.members;
  }
};

inline constexpr std::size_t kDefaultClosureCap = 10'000;
inline constexpr int kMaxEnumerationOrder = 64;

/// Closure of `generators` under composition. Elements are numbered in
/// breadth-first discovery order (identity first, generators tried in input
/// order). Labels default to cycle notation.
GroupTable group_from_permutations(int degree, std::span<const Permutation> generators,
                                   std::size_t cap = kDefaultClosureCap);

/// Z_n as the powers of an n-cycle; element k is the k-th power and is
/// labelled by the decimal string of k.
GroupTable cyclic_group(int n);

/// One of Z2 Z3 Z4 Z6 S3 D4 A4 S4. Throws InputError on an unknown name.
GroupTable catalog_group(std::string_view name);
const std::vector<std::string>& catalog_names();

/// Cycle notation with the smallest point first in each cycle; "e" for the
/// identity. Points are comma separated when the degree exceeds 10.
std::string cycle_notation(const Permutation& p);

SubgroupSet subgroup_closure(const GroupTable& g, std::span<const Element> seed);
SubgroupSet whole_group(const GroupTable& g);
SubgroupSet trivial_subgroup();

bool is_subgroup(const GroupTable& g, const SubgroupSet& s);
bool is_normal(const GroupTable& g, const SubgroupSet& s);

/// x with x⁻¹·a·x = b (as sets), if one exists.
std::optional<Element> conjugating_element(const GroupTable& g, const SubgroupSet& a,
                                           const SubgroupSet& b);

/// Every subgroup generated by at most three elements, sorted by size and
/// then lexicographically. Three generators reach every subgroup of the
/// catalog groups. Throws PreconditionError when the order exceeds 64.
std::vector<SubgroupSet> enumerate_subgroups(const GroupTable& g);

std::string format_subgroup(const GroupTable& g, const SubgroupSet& s);

}  // namespace flatcover
