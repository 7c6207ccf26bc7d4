#pragma once

// Induced connections over coverings and mechanical checks of the
// statements relating them to the base connection.
//
// Every check returns a VerificationReport. Checks whose standing
// hypotheses fail on an instance report `hypotheses_not_met` instead of a
// vacuous success, unless VerifyOptions::relaxed_gates is set.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "flatcover/complex.hpp"
#include "flatcover/connection.hpp"
#include "flatcover/coset_automaton.hpp"
#include "flatcover/covering.hpp"
#include "flatcover/group.hpp"

namespace flatcover {

/// Defining data of an instance: a flat voltage on a base with a covering.
struct InstanceData {
  std::string name;
  GroupTable group;
  BaseComplex base;
  Voltage voltage;
  SubgroupSpec covering;
};

/// An instance with its derived artifacts computed once.
class Instance {
 public:
  /// Validates flatness and resolves the covering subgroup. Throws
  /// InputError, CapExceeded or PreconditionError (infinite index).
  static Instance build(InstanceData data, std::size_t cell_cap = kDefaultCellCap);

  const std::string& name() const noexcept { return data_.name; }
  const GroupTable& group() const noexcept { return data_.group; }
  const BaseComplex& base() const noexcept { return data_.base; }
  const Voltage& voltage() const noexcept { return data_.voltage; }
  const SubgroupSpec& covering_spec() const noexcept { return data_.covering; }

  const SpanningTree& tree() const noexcept { return tree_; }
  const Presentation& presentation() const noexcept { return presentation_; }
  const HolonomyMorphism& holonomy() const noexcept { return holonomy_; }
  const SubgroupSet& holonomy_image() const noexcept { return holonomy_image_; }
  const CosetAutomaton& kernel() const noexcept { return kernel_; }

  const CosetAutomaton& subgroup() const noexcept { return subgroup_.automaton; }
  SubgroupMethod subgroup_method() const noexcept { return subgroup_.method; }

  const CoveringComplex& cover() const noexcept { return cover_; }
  const SpanningTree& cover_tree() const noexcept { return cover_tree_; }
  const Presentation& cover_presentation() const noexcept { return cover_presentation_; }
  const Voltage& pulled_voltage() const noexcept { return pulled_voltage_; }

 private:
  Instance() = default;

  InstanceData data_;
  SpanningTree tree_;
  Presentation presentation_;
  HolonomyMorphism holonomy_;
  SubgroupSet holonomy_image_;
  CosetAutomaton kernel_;
  ResolvedSubgroup subgroup_;
  CoveringComplex cover_;
  SpanningTree cover_tree_;
  Presentation cover_presentation_;
  Voltage pulled_voltage_;
};

enum class Verdict { holds, fails, hypotheses_not_met };
std::string to_string(Verdict v);

struct HypothesisCheck {
  std::string name;
  bool ok = false;
};

struct VerificationReport {
  std::string claim;
  std::vector<HypothesisCheck> hypotheses;
  Verdict verdict = Verdict::holds;
  std::vector<std::pair<std::string, std::string>> details;
  std::vector<std::pair<std::string, std::string>> witnesses;
  std::vector<std::string> notes;

  const std::string* detail(std::string_view key) const;
};

struct VerifyOptions {
  bool relaxed_gates = false;
};

/// ω̂(ê) = ω(q(ê)).
Voltage pullback_voltage(const CoveringComplex& cov, const Voltage& v);

/// Holonomy group of the pulled-back connection, computed on the cover.
SubgroupSet induced_holonomy_image(const Instance& inst);

/// Closure of h_ω over the Schreier generators of π₁ of the cover.
SubgroupSet restricted_holonomy_image(const Instance& inst);

/// Im h_ω̂ equals h_ω(π₁(M̂)) as sets.
VerificationReport verify_induced_holonomy_image(const Instance& inst);

/// h_ω̂(ŵ) = h_ω(q∘ŵ) on the empty loop plus `sample_count - 1` seeded random
/// closed walks at the base lift (length ≤ 12, closed along the cover's tree).
VerificationReport verify_functoriality(const Instance& inst, int sample_count, std::uint64_t seed);

/// Induced connection trivial ⟺ π₁(M̂) ⊆ Ker h_ω, both sides computed
/// independently; trivial instances must also split upstairs into |G| copies
/// of M̂.
VerificationReport is_induced_trivial(const Instance& inst);

/// q̂ : P̂ → P is a covering map, and so is its restriction to every
/// component of P̂ onto the component of P it lands in.
VerificationReport verify_induced_bundle_covering(const Instance& inst);

/// π₁(M̂) = Ker h_ω, regular, Hol = G ⇒ N(x̂₀) and N(x₀) are the same cover of M.
VerificationReport verify_kernel_cover_leaf(const Instance& inst, const VerifyOptions& options = {});

/// Ker h_ω ⊆ π₁(M̂), Hol = G ⇒ N(x̂₀) and N(x₀) are the same cover of M.
VerificationReport verify_intermediate_cover_leaf(const Instance& inst, const VerifyOptions& options = {});

/// π₁(M̂) = Ker h_ω ⇒ P̂ is |G| copies of M̂ and q̂ carries π₁(P̂) onto
/// p⁻¹(Ker h_ω); compared as covers of M.
VerificationReport verify_kernel_cover_total_space(const Instance& inst, const VerifyOptions& options = {});

/// Hol = G ⇒ π₁(N(x₀)) ↦ Ker h_ω; with discrete fibres the fibre-orbit loop
/// group is trivial, so the quotient is Ker h_ω itself.
VerificationReport verify_leaf_fundamental_group(const Instance& inst, const VerifyOptions& options = {});

/// All checks above, in a fixed order.
std::vector<VerificationReport> verify_all(const Instance& inst, int sample_count, std::uint64_t seed,
                                           const VerifyOptions& options = {});

struct OracleResult {
  SubgroupSet group;
  bool stabilized = false;
};

/// Holonomy group from brute-force enumeration of closed edge paths at the
/// basepoint of length ≤ max_length (depth-first over (vertex, element,
/// length) states). Stabilized when paths of length ≤ max_length − 2
/// already generate the same subgroup.
OracleResult oracle_holonomy(const BaseComplex& c, const GroupTable& g, const Voltage& v, int max_length);

/// Longest shortest-path distance between vertices of the underlying graph.
int graph_diameter(const BaseComplex& c);

/// Free rank of π₁ of the underlying graph: E − V + 1.
int graph_rank(const BaseComplex& c);

// --- Random instances --------------------------------------------------------

/// Uniform draw from 0..n-1 that is identical on every platform.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);

struct NamedComplex {
  std::string name;
  BaseComplex complex;
};

/// wedge2, wedge3, two-cycle, theta, torus, klein.
const std::vector<NamedComplex>& base_catalog();

/// Seeded instance; index selects the covering mode (kernel, preimage of a
/// subgroup of G, preimage through an unrelated finite quotient, words).
InstanceData random_instance(std::mt19937_64& rng, int index);

std::vector<InstanceData> random_corpus(std::uint64_t seed, int count);

}  // namespace flatcover
