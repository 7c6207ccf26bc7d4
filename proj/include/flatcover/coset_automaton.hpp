#pragma once

// Subgroups of π₁ as based coset automata (Schreier graphs).
//
// State 0 is the coset H itself. Column layout for transitions: generator g
// forward and g⁻¹ are stored separately and kept mutually inverse. Canonical
// numbering is breadth-first from state 0, trying g0, g0⁻¹, g1, g1⁻¹, ...

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "flatcover/complex.hpp"
#include "flatcover/group.hpp"

namespace flatcover {

class CosetAutomaton {
 public:
  static constexpr int kUndefined = -1;

  CosetAutomaton() : CosetAutomaton(0, 1) {}
  CosetAutomaton(int rank, int state_count);

  int rank() const noexcept { return rank_; }
  int state_count() const noexcept { return states_; }
  std::size_t index() const noexcept { return static_cast<std::size_t>(states_); }

  /// Target of `state` under the letter, or kUndefined.
  int target(int state, Letter l) const {
    return table_[column(state, l)];
  }
  /// Defines state --g--> to (and to --g⁻¹--> state). Throws
  /// PreconditionError if it would break the partial-bijection invariant.
  void connect(int state, int generator, int to);

  bool complete() const;
  /// End state after reading `w` from `state`, or kUndefined.
  int trace(int state, const FreeWord& w) const;

  friend bool operator==(const CosetAutomaton&, const CosetAutomaton&) = default;

 private:
  std::size_t column(int state, Letter l) const {
    return (static_cast<std::size_t>(state) * rank_ + l.generator) * 2 + (l.exponent > 0 ? 0 : 1);
  }

  int rank_ = 0;
  int states_ = 1;
  std::vector<int> table_;
};

/// Breadth-first renumbering from state 0; unreachable states are dropped.
CosetAutomaton canonicalize(const CosetAutomaton& a);

/// Freely reduced word leading from state 0 to each state along the
/// canonical breadth-first tree.
std::vector<FreeWord> coset_representatives(const CosetAutomaton& a);

/// Folded core graph of ⟨generators⟩ in the free group of the given rank.
/// Complete exactly when the subgroup has finite index.
CosetAutomaton stallings_core(std::span<const FreeWord> generators, int rank);

inline constexpr std::size_t kDefaultCellCap = 1'000'000;

/// Cosets allowed by a table-cell budget for a given rank.
std::size_t coset_cap_for_cells(std::size_t cells, int rank);

/// HLT coset enumeration of ⟨subgroup⟩ in the presented group. Throws
/// CapExceeded if more than `max_cosets` cosets get defined.
CosetAutomaton todd_coxeter(const Presentation& p, std::span<const FreeWord> subgroup,
                            std::size_t max_cosets);

/// h⁻¹(S) for the homomorphism sending generator i to images[i]. States
/// are the right cosets of S ∩ Im(h) in Im(h). When `relators` is given,
/// each must map to the identity (otherwise InputError).
CosetAutomaton automaton_from_quotient(std::span<const Element> images, const GroupTable& g,
                                       const SubgroupSet& s,
                                       std::span<const FreeWord> relators = {});

bool membership(const CosetAutomaton& a, const FreeWord& w);

/// Equality of based subgroups. Both automata must be complete.
bool automata_equal(const CosetAutomaton& x, const CosetAutomaton& y);

bool is_normal_subgroup(const CosetAutomaton& a);

/// Schreier generators u·g·(rep of u·g)⁻¹ over non-tree transitions, in
/// (state, generator) order.
std::vector<FreeWord> reidemeister_schreier(const CosetAutomaton& a);

/// Covering data: either explicit subgroup generators or a preimage h⁻¹(S).
struct WordsSubgroup {
  std::vector<FreeWord> words;
};

struct QuotientSubgroup {
  GroupTable group;
  std::vector<Element> images;  // one per π₁ generator
  SubgroupSet subgroup;
};

using SubgroupSpec = std::variant<WordsSubgroup, QuotientSubgroup>;

enum class SubgroupMethod { stallings, todd_coxeter, quotient };
std::string to_string(SubgroupMethod m);

struct ResolvedSubgroup {
  CosetAutomaton automaton;
  SubgroupMethod method = SubgroupMethod::quotient;
};

/// Quotient specs use automaton_from_quotient. Word specs go through
/// todd_coxeter when the presentation has relators and stallings_core
/// otherwise. An incomplete core graph (infinite index) raises
/// PreconditionError.
ResolvedSubgroup resolve_subgroup(const Presentation& p, const SubgroupSpec& spec,
                                  std::size_t max_cosets);

}  // namespace flatcover
