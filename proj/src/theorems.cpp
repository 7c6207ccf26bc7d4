#include "flatcover/theorems.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "flatcover/error.hpp"

namespace flatcover {

namespace {

std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

// --- Instance ---------------------------------------------------------------

Voltage pullback_voltage(const CoveringComplex& cov, const Voltage& v) {
  Voltage out;
  out.by_edge.reserve(cov.projection.edge_map.size());
  for (int base_edge : cov.projection.edge_map) out.by_edge.push_back(v.by_edge.at(base_edge));
  return out;
}

Instance Instance::build(InstanceData data, std::size_t cell_cap) {
  Instance inst;
  inst.data_ = std::move(data);
  const BaseComplex& base = inst.data_.base;
  const GroupTable& g = inst.data_.group;
  if (static_cast<int>(inst.data_.voltage.by_edge.size()) != base.edge_count()) {
    throw InputError("voltage must assign one element per edge", "/voltage");
  }
  for (Element x : inst.data_.voltage.by_edge)
    if (!g.contains(x)) throw InputError("voltage element out of range", "/voltage");

  inst.tree_ = spanning_tree(base);
  inst.presentation_ = pi1_presentation(base, inst.tree_);
  inst.holonomy_ = holonomy_morphism(base, g, inst.data_.voltage, inst.tree_);
  inst.holonomy_image_ = holonomy_group(g, inst.holonomy_);
  inst.kernel_ = kernel_automaton(g, inst.holonomy_);
  inst.subgroup_ = resolve_subgroup(inst.presentation_, inst.data_.covering,
                                    coset_cap_for_cells(cell_cap, inst.presentation_.rank));
  inst.cover_ = build_cover(base, inst.tree_, inst.subgroup_.automaton);
  inst.cover_tree_ = spanning_tree(inst.cover_.total);
  inst.cover_presentation_ = pi1_presentation(inst.cover_.total, inst.cover_tree_);
  inst.pulled_voltage_ = pullback_voltage(inst.cover_, inst.data_.voltage);
  return inst;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::hypotheses_not_met: return "hypotheses-not-met";
  }
  return "unknown";
}

const std::string* VerificationReport::detail(std::string_view key) const {
  for (const auto& [k, v] : details)
    if (k == key) return &v;
  return nullptr;
}

SubgroupSet induced_holonomy_image(const Instance& inst) {
  const HolonomyMorphism lifted =
      holonomy_morphism(inst.cover().total, inst.group(), inst.pulled_voltage(), inst.cover_tree());
  return holonomy_group(inst.group(), lifted);
}

SubgroupSet restricted_holonomy_image(const Instance& inst) {
  std::vector<Element> images;
  for (const FreeWord& w : reidemeister_schreier(inst.subgroup())) {
    images.push_back(evaluate(inst.group(), inst.holonomy(), w));
  }
  return subgroup_closure(inst.group(), images);
}

VerificationReport verify_induced_holonomy_image(const Instance& inst) {
  VerificationReport r;
  r.claim = "induced-holonomy-image";
  const GroupTable& g = inst.group();
  const SubgroupSet induced = induced_holonomy_image(inst);
  const SubgroupSet restricted = restricted_holonomy_image(inst);
  r.details = {{"cover_degree", std::to_string(inst.cover().degree)},
               {"induced_image", format_subgroup(g, induced)},
               {"induced_order", std::to_string(induced.size())},
               {"restricted_image", format_subgroup(g, restricted)},
               {"restricted_order", std::to_string(restricted.size())}};
  r.verdict = induced == restricted ? Verdict::holds : Verdict::fails;
  if (r.verdict == Verdict::fails) {
    for (Element x : induced.members)
      if (!restricted.contains(x)) r.witnesses.push_back({"only_in_induced", g.label(x)});
    for (Element x : restricted.members)
      if (!induced.contains(x)) r.witnesses.push_back({"only_in_restricted", g.label(x)});
  }
  return r;
}

VerificationReport verify_functoriality(const Instance& inst, int sample_count, std::uint64_t seed) {
  VerificationReport r;
  r.claim = "functoriality";
  const BaseComplex& top = inst.cover().total;
  const GroupTable& g = inst.group();

  std::vector<std::vector<Step>> leaving(top.vertex_count());
  for (const Edge& e : top.edges()) {
    leaving[e.tail].push_back({e.id, 1});
    leaving[e.head].push_back({e.id, -1});
  }

  std::mt19937_64 rng(seed);
  int agreed = 0;
  for (int k = 0; k < sample_count; ++k) {
    EdgeWord lifted;
    if (k > 0) {
      int at = inst.cover().base_lift;
      const int length = static_cast<int>(uniform_below(rng, 13));
      for (int step = 0; step < length && !leaving[at].empty(); ++step) {
        const Step s = leaving[at][uniform_below(rng, leaving[at].size())];
        lifted.push_back(s);
        at = top.step_end(s);
      }
      const EdgeWord back = inst.cover_tree().path_to_base(at);
      lifted.insert(lifted.end(), back.begin(), back.end());
    }
    EdgeWord projected;
    for (const Step& s : lifted) {
      const int base_edge = inst.cover().projection.edge_map[top.index_of_checked(s.edge)];
      projected.push_back({inst.base().edge(base_edge).id, s.sign});
    }
    const Element upstairs = word_holonomy(top, g, inst.pulled_voltage(), lifted);
    const Element downstairs = word_holonomy(inst.base(), g, inst.voltage(), projected);
    if (upstairs == downstairs) {
      ++agreed;
    } else if (r.witnesses.empty()) {
      r.witnesses = {{"word", format_edge_word(top, lifted)},
                     {"upstairs", g.label(upstairs)},
                     {"downstairs", g.label(downstairs)}};
    }
  }
  r.details = {{"samples", std::to_string(sample_count)},
               {"agreements", std::to_string(agreed)},
               {"seed", std::to_string(seed)}};
  r.verdict = agreed == sample_count ? Verdict::holds : Verdict::fails;
  return r;
}

VerificationReport is_induced_trivial(const Instance& inst) {
  VerificationReport r;
  r.claim = "triviality-criterion";
  const GroupTable& g = inst.group();
  const SubgroupSet induced = induced_holonomy_image(inst);
  const bool image_side = induced.size() == 1;

  bool kernel_side = true;
  for (const FreeWord& w : reidemeister_schreier(inst.subgroup())) {
    if (!membership(inst.kernel(), w)) {
      kernel_side = false;
      r.witnesses.push_back({"generator_outside_kernel", format_free_word(inst.presentation(), w)});
      r.witnesses.push_back({"generator_image", g.label(evaluate(g, inst.holonomy(), w))});
      break;
    }
  }
  r.details = {{"trivial", yes_no(image_side)},
               {"induced_image_trivial", yes_no(image_side)},
               {"subgroup_in_kernel", yes_no(kernel_side)}};

  bool product_form = true;
  if (image_side && kernel_side) {
    const DerivedBundle upstairs = derived_bundle(inst.cover().total, g, inst.pulled_voltage());
    product_form = upstairs.component_count == g.order();
    for (int k = 0; k < upstairs.component_count && product_form; ++k) {
      const BundleComponent part = bundle_component(upstairs, k);
      product_form = is_isomorphism(part.total, inst.cover().total, part.projection);
    }
    r.details.push_back({"components_upstairs", std::to_string(upstairs.component_count)});
    r.details.push_back({"product_form", yes_no(product_form)});
  }
  r.verdict = (image_side == kernel_side && product_form) ? Verdict::holds : Verdict::fails;
  if (image_side != kernel_side) r.witnesses.push_back({"induced_image", format_subgroup(g, induced)});
  return r;
}

VerificationReport verify_induced_bundle_covering(const Instance& inst) {
  VerificationReport r;
  r.claim = "induced-bundle-covering";
  const GroupTable& g = inst.group();
  const DerivedBundle downstairs = derived_bundle(inst.base(), g, inst.voltage());
  const DerivedBundle upstairs = derived_bundle(inst.cover().total, g, inst.pulled_voltage());
  const ComplexMap qhat = induced_bundle_map(inst.cover(), upstairs, downstairs);
  const bool whole = is_covering_map(upstairs.total, downstairs.total, qhat);

  std::map<int, BundleComponent> targets;
  bool parts = true;
  for (int k = 0; k < upstairs.component_count && parts; ++k) {
    const BundleComponent part = bundle_component(upstairs, k);
    const int image = downstairs.component[qhat.vertex_map[part.bundle_vertex.front()]];
    auto it = targets.find(image);
    if (it == targets.end()) it = targets.emplace(image, bundle_component(downstairs, image)).first;
    const ComplexMap m = corestrict_to(restrict_to(part, qhat), it->second);
    if (!is_covering_map(part.total, it->second.total, m)) {
      parts = false;
      r.witnesses.push_back({"component", std::to_string(k)});
    }
  }
  r.details = {{"upstairs_vertices", std::to_string(upstairs.total.vertex_count())},
               {"downstairs_vertices", std::to_string(downstairs.total.vertex_count())},
               {"covering_map", yes_no(whole)},
               {"components_cover_components", yes_no(parts)}};
  r.verdict = whole && parts ? Verdict::holds : Verdict::fails;
  return r;
}

namespace {

struct Gates {
  bool holonomy_full = false;
  bool subgroup_is_kernel = false;
  bool subgroup_normal = false;
  bool kernel_in_subgroup = false;
  FreeWord kernel_witness;  // kernel generator outside the subgroup
};

Gates compute_gates(const Instance& inst) {
  Gates gates;
  gates.holonomy_full = static_cast<int>(inst.holonomy_image().size()) == inst.group().order();
  gates.subgroup_is_kernel = automata_equal(inst.subgroup(), inst.kernel());
  gates.subgroup_normal = is_normal_subgroup(inst.subgroup());
  gates.kernel_in_subgroup = true;
  for (const FreeWord& w : reidemeister_schreier(inst.kernel())) {
    if (!membership(inst.subgroup(), w)) {
      gates.kernel_in_subgroup = false;
      gates.kernel_witness = w;
      break;
    }
  }
  return gates;
}

// Returns false when the claim should stop with hypotheses-not-met.
bool apply_gates(VerificationReport& r, const VerifyOptions& options) {
  const bool ok = std::all_of(r.hypotheses.begin(), r.hypotheses.end(), [](const auto& h) { return h.ok; });
  if (ok) return true;
  if (!options.relaxed_gates) {
    r.verdict = Verdict::hypotheses_not_met;
    return false;
  }
  r.notes.push_back("hypotheses not met; evaluated in relaxed mode");
  return true;
}

void add_gate_witnesses(VerificationReport& r, const Instance& inst, const Gates& gates) {
  if (!gates.kernel_in_subgroup) {
    r.witnesses.push_back({"kernel_generator_outside_subgroup", format_free_word(inst.presentation(), gates.kernel_witness)});
  }
  if (!gates.holonomy_full) {
    r.witnesses.push_back({"holonomy_group", format_subgroup(inst.group(), inst.holonomy_image())});
  }
}

// Compares N(x̂₀) → M̂ → M with N(x₀) → M as based covers of M.
void compare_leaves(VerificationReport& r, const Instance& inst) {
  const GroupTable& g = inst.group();
  const DerivedBundle downstairs = derived_bundle(inst.base(), g, inst.voltage());
  const BundleComponent leaf = holonomy_bundle(downstairs);
  const CosetAutomaton leaf_subgroup = subgroup_of_cover(inst.base(), inst.tree(), leaf);

  const DerivedBundle upstairs = derived_bundle(inst.cover().total, g, inst.pulled_voltage());
  const BundleComponent top_leaf = holonomy_bundle(upstairs);
  const Covering composite{top_leaf.total, compose(top_leaf.projection, inst.cover().projection), top_leaf.base_lift};
  const CosetAutomaton composite_subgroup = subgroup_of_cover(inst.base(), inst.tree(), composite);

  const ComplexMap qhat = induced_bundle_map(inst.cover(), upstairs, downstairs);
  const bool leaf_covers = is_covering_map(top_leaf.total, leaf.total, corestrict_to(restrict_to(top_leaf, qhat), leaf));
  const bool same = automata_equal(leaf_subgroup, composite_subgroup);

  r.details.push_back({"leaf_degree", std::to_string(leaf.degree)});
  r.details.push_back({"lifted_leaf_degree", std::to_string(top_leaf.degree)});
  r.details.push_back({"leaf_subgroup_index", std::to_string(leaf_subgroup.state_count())});
  r.details.push_back({"composite_subgroup_index", std::to_string(composite_subgroup.state_count())});
  r.details.push_back({"composite_equals_kernel", yes_no(automata_equal(composite_subgroup, inst.kernel()))});
  r.details.push_back({"lifted_leaf_covers_leaf", yes_no(leaf_covers)});
  r.verdict = same && leaf_covers ? Verdict::holds : Verdict::fails;
  if (!same) {
    r.witnesses.push_back({"leaf_subgroup_index", std::to_string(leaf_subgroup.state_count())});
    r.witnesses.push_back({"composite_subgroup_index", std::to_string(composite_subgroup.state_count())});
  }
}

}  // namespace

VerificationReport verify_kernel_cover_leaf(const Instance& inst, const VerifyOptions& options) {
  VerificationReport r;
  r.claim = "kernel-cover-leaf";
  const Gates gates = compute_gates(inst);
  r.hypotheses = {{"subgroup_equals_kernel", gates.subgroup_is_kernel},
                  {"covering_regular", gates.subgroup_normal},
                  {"holonomy_is_whole_group", gates.holonomy_full}};
  if (!apply_gates(r, options)) {
    add_gate_witnesses(r, inst, gates);
    return r;
  }
  compare_leaves(r, inst);
  return r;
}

VerificationReport verify_intermediate_cover_leaf(const Instance& inst, const VerifyOptions& options) {
  VerificationReport r;
  r.claim = "intermediate-cover-leaf";
  const Gates gates = compute_gates(inst);
  r.hypotheses = {{"kernel_in_subgroup", gates.kernel_in_subgroup},
                  {"holonomy_is_whole_group", gates.holonomy_full}};
  r.details.push_back({"covering_regular", yes_no(gates.subgroup_normal)});
  if (!apply_gates(r, options)) {
    add_gate_witnesses(r, inst, gates);
    return r;
  }
  compare_leaves(r, inst);
  return r;
}

VerificationReport verify_kernel_cover_total_space(const Instance& inst, const VerifyOptions& options) {
  VerificationReport r;
  r.claim = "kernel-cover-total-space";
  const Gates gates = compute_gates(inst);
  r.hypotheses = {{"subgroup_equals_kernel", gates.subgroup_is_kernel},
                  {"covering_regular", gates.subgroup_normal},
                  {"holonomy_is_whole_group", gates.holonomy_full}};
  if (!apply_gates(r, options)) {
    add_gate_witnesses(r, inst, gates);
    return r;
  }
  const GroupTable& g = inst.group();
  const DerivedBundle downstairs = derived_bundle(inst.base(), g, inst.voltage());
  const BundleComponent leaf = holonomy_bundle(downstairs);
  const DerivedBundle upstairs = derived_bundle(inst.cover().total, g, inst.pulled_voltage());

  bool product_form = upstairs.component_count == g.order();
  for (int k = 0; k < upstairs.component_count && product_form; ++k) {
    const BundleComponent part = bundle_component(upstairs, k);
    product_form = is_isomorphism(part.total, inst.cover().total, part.projection);
  }

  // Two routes from the basepoint component of P̂ down to M.
  const BundleComponent top = holonomy_bundle(upstairs);
  const ComplexMap qhat = induced_bundle_map(inst.cover(), upstairs, downstairs);
  const ComplexMap through_bundle = compose(restrict_to(top, qhat), downstairs.projection);
  const ComplexMap through_cover = compose(top.projection, inst.cover().projection);
  const bool commutes = through_bundle.vertex_map == through_cover.vertex_map &&
                        through_bundle.edge_map == through_cover.edge_map;

  const CosetAutomaton top_subgroup =
      subgroup_of_cover(inst.base(), inst.tree(), Covering{top.total, through_bundle, top.base_lift});
  const CosetAutomaton leaf_subgroup = subgroup_of_cover(inst.base(), inst.tree(), leaf);
  const bool same = automata_equal(top_subgroup, leaf_subgroup) && automata_equal(leaf_subgroup, inst.kernel());

  r.details = {{"components_upstairs", std::to_string(upstairs.component_count)},
               {"product_form", yes_no(product_form)},
               {"square_commutes", yes_no(commutes)},
               {"top_subgroup_index", std::to_string(top_subgroup.state_count())},
               {"leaf_subgroup_index", std::to_string(leaf_subgroup.state_count())}};
  r.verdict = product_form && commutes && same ? Verdict::holds : Verdict::fails;
  return r;
}

VerificationReport verify_leaf_fundamental_group(const Instance& inst, const VerifyOptions& options) {
  VerificationReport r;
  r.claim = "leaf-fundamental-group";
  const Gates gates = compute_gates(inst);
  r.hypotheses = {{"holonomy_is_whole_group", gates.holonomy_full}};
  if (!apply_gates(r, options)) {
    add_gate_witnesses(r, inst, gates);
    return r;
  }
  const DerivedBundle downstairs = derived_bundle(inst.base(), inst.group(), inst.voltage());
  const BundleComponent leaf = holonomy_bundle(downstairs);
  const CosetAutomaton leaf_subgroup = subgroup_of_cover(inst.base(), inst.tree(), leaf);
  const bool is_kernel = automata_equal(leaf_subgroup, inst.kernel());
  r.details = {{"leaf_subgroup_index", std::to_string(leaf_subgroup.state_count())},
               {"leaf_subgroup_is_kernel", yes_no(is_kernel)}};
  bool rank_ok = true;
  if (inst.base().relators().empty()) {
    const int rank = graph_rank(leaf.total);
    const int expected = inst.kernel().state_count() * (inst.presentation().rank - 1) + 1;
    rank_ok = rank == expected;
    r.details.push_back({"leaf_rank", std::to_string(rank)});
    r.details.push_back({"expected_rank", std::to_string(expected)});
  } else {
    r.details.push_back({"leaf_rank", "not computed (base has relators)"});
  }
  r.notes.push_back("fibres are discrete, so the loop group of the fibre orbit is trivial and the quotient is the kernel itself");
  r.verdict = is_kernel && rank_ok ? Verdict::holds : Verdict::fails;
  return r;
}

std::vector<VerificationReport> verify_all(const Instance& inst, int sample_count, std::uint64_t seed,
                                           const VerifyOptions& options) {
  return {verify_induced_holonomy_image(inst),
          verify_functoriality(inst, sample_count, seed),
          is_induced_trivial(inst),
          verify_induced_bundle_covering(inst),
          verify_kernel_cover_leaf(inst, options),
          verify_intermediate_cover_leaf(inst, options),
          verify_kernel_cover_total_space(inst, options),
          verify_leaf_fundamental_group(inst, options)};
}

// --- Oracle -----------------------------------------------------------------

OracleResult oracle_holonomy(const BaseComplex& c, const GroupTable& g, const Voltage& v, int max_length) {
  if (max_length < 0) throw PreconditionError("max_length must be non-negative");
  std::vector<std::vector<std::pair<int, Element>>> moves(c.vertex_count());  // (next vertex, factor)
  for (int i = 0; i < c.edge_count(); ++i) {
    const Edge& e = c.edge(i);
    moves[e.tail].push_back({e.head, v.by_edge[i]});
    moves[e.head].push_back({e.tail, g.inv(v.by_edge[i])});
  }
  const int n = g.order();
  const auto state = [&](int vertex, Element x, int length) {
    return (static_cast<std::size_t>(length) * c.vertex_count() + vertex) * n + x;
  };
  std::vector<bool> visited(static_cast<std::size_t>(max_length + 1) * c.vertex_count() * n, false);
  std::vector<std::set<Element>> closed_at(max_length + 1);

  // Explicit stack: (vertex, element, length).
  std::vector<std::tuple<int, Element, int>> stack{{c.basepoint(), GroupTable::identity(), 0}};
  while (!stack.empty()) {
    auto [vertex, x, length] = stack.back();
    stack.pop_back();
    if (visited[state(vertex, x, length)]) continue;
    visited[state(vertex, x, length)] = true;
    if (vertex == c.basepoint()) closed_at[length].insert(x);
    if (length == max_length) continue;
    for (auto [next, factor] : moves[vertex]) stack.emplace_back(next, g.mul(x, factor), length + 1);
  }

  auto closure_up_to = [&](int limit) {
    std::vector<Element> seed;
    for (int k = 0; k <= limit; ++k) seed.insert(seed.end(), closed_at[k].begin(), closed_at[k].end());
    return subgroup_closure(g, seed);
  };
  OracleResult out;
  out.group = closure_up_to(max_length);
  out.stabilized = max_length >= 2 && closure_up_to(max_length - 2) == out.group;
  return out;
}

int graph_diameter(const BaseComplex& c) {
  std::vector<std::vector<int>> adjacent(c.vertex_count());
  for (const Edge& e : c.edges()) {
    adjacent[e.tail].push_back(e.head);
    adjacent[e.head].push_back(e.tail);
  }
  int diameter = 0;
  for (int s = 0; s < c.vertex_count(); ++s) {
    std::vector<int> dist(c.vertex_count(), -1);
    std::deque<int> queue{s};
    dist[s] = 0;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      diameter = std::max(diameter, dist[u]);
      for (int w : adjacent[u]) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      }
    }
  }
  return diameter;
}

int graph_rank(const BaseComplex& c) { return c.edge_count() - c.vertex_count() + 1; }

// --- Random instances -------------------------------------------------------

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw PreconditionError("uniform_below needs a positive bound");
  return rng() % n;
}

const std::vector<NamedComplex>& base_catalog() {
  static const std::vector<NamedComplex> catalog = [] {
    auto make = [](int vertices, std::vector<Edge> edges, std::map<std::string, int> aliases,
                   std::vector<std::string> relators) {
      ComplexSpec spec;
      spec.vertex_count = vertices;
      spec.edges = std::move(edges);
      spec.aliases = std::move(aliases);
      for (const auto& r : relators) spec.relators.push_back(parse_edge_word(spec.aliases, r));
      return validate_complex(std::move(spec));
    };
    std::vector<NamedComplex> out;
    out.push_back({"wedge2", make(1, {{0, 0, 0}, {1, 0, 0}}, {{"a", 0}, {"b", 1}}, {})});
    out.push_back({"wedge3", make(1, {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}}, {{"a", 0}, {"b", 1}, {"c", 2}}, {})});
    out.push_back({"two-cycle", make(2, {{1, 0, 1}, {2, 0, 1}}, {}, {})});
    out.push_back({"theta", make(2, {{0, 0, 1}, {1, 0, 1}, {2, 0, 1}}, {}, {})});
    out.push_back({"torus", make(1, {{0, 0, 0}, {1, 0, 0}}, {{"a", 0}, {"b", 1}}, {"a b a^-1 b^-1"})});
    out.push_back({"klein", make(1, {{0, 0, 0}, {1, 0, 0}}, {{"a", 0}, {"b", 1}}, {"a b a^-1 b"})});
    return out;
  }();
  return catalog;
}

namespace {

Voltage sample_flat_voltage(std::mt19937_64& rng, const BaseComplex& c, const GroupTable& g) {
  Voltage v{std::vector<Element>(c.edge_count(), 0)};
  for (int attempt = 0; attempt < 1000; ++attempt) {
    for (auto& x : v.by_edge) x = static_cast<Element>(uniform_below(rng, g.order()));
    if (check_flatness(c, g, v).empty()) return v;
  }
  // Abelian fallback: uniform over the flat assignments inside a random
  // cyclic subgroup. The identity assignment is always among them.
  const Element x = static_cast<Element>(uniform_below(rng, g.order()));
  const std::vector<Element> cyclic = subgroup_closure(g, std::vector<Element>{x}).members;
  std::vector<Voltage> flat;
  std::vector<std::size_t> digits(c.edge_count(), 0);
  while (true) {
    for (int i = 0; i < c.edge_count(); ++i) v.by_edge[i] = cyclic[digits[i]];
    if (check_flatness(c, g, v).empty()) flat.push_back(v);
    int i = 0;
    while (i < c.edge_count() && ++digits[i] == cyclic.size()) digits[i++] = 0;
    if (i == c.edge_count()) break;
  }
  return flat[uniform_below(rng, flat.size())];
}

std::vector<Element> sample_images(std::mt19937_64& rng, const Presentation& p, const GroupTable& k) {
  std::vector<Element> images(p.rank, 0);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    for (auto& x : images) x = static_cast<Element>(uniform_below(rng, k.order()));
    const HolonomyMorphism h{images};
    if (std::all_of(p.relators.begin(), p.relators.end(),
                    [&](const FreeWord& r) { return evaluate(k, h, r) == GroupTable::identity(); })) {
      return images;
    }
  }
  return std::vector<Element>(p.rank, GroupTable::identity());
}

const SubgroupSet& pick(std::mt19937_64& rng, const std::vector<SubgroupSet>& xs) {
  return xs[uniform_below(rng, xs.size())];
}

}  // namespace

InstanceData random_instance(std::mt19937_64& rng, int index) {
  const auto& catalog = base_catalog();
  const NamedComplex& base = catalog[uniform_below(rng, catalog.size())];
  const std::string& group_name = catalog_names()[uniform_below(rng, catalog_names().size())];
  GroupTable g = catalog_group(group_name);
  const SpanningTree tree = spanning_tree(base.complex);
  const Presentation pres = pi1_presentation(base.complex, tree);
  const int mode = index % 4;

  Voltage v = sample_flat_voltage(rng, base.complex, g);
  HolonomyMorphism h = holonomy_morphism(base.complex, g, v, tree);
  // Kernel and preimage modes feed the claims that need Hol = G; retry a
  // few times to make full holonomy common.
  for (int attempt = 0; mode <= 1 && attempt < 50 && static_cast<int>(holonomy_group(g, h).size()) != g.order(); ++attempt) {
    v = sample_flat_voltage(rng, base.complex, g);
    h = holonomy_morphism(base.complex, g, v, tree);
  }

  InstanceData data;
  static const char* const kModes[] = {"kernel", "preimage", "quotient", "words"};
  data.name = "random-" + std::to_string(index) + " " + base.name + "/" + group_name + "/" + kModes[mode];
  data.base = base.complex;
  data.voltage = v;
  if (mode == 0) {
    data.covering = QuotientSubgroup{g, h.images, trivial_subgroup()};
  } else if (mode == 1) {
    data.covering = QuotientSubgroup{g, h.images, pick(rng, enumerate_subgroups(g))};
  } else {
    GroupTable k = catalog_group(catalog_names()[uniform_below(rng, catalog_names().size())]);
    std::vector<Element> images = sample_images(rng, pres, k);
    SubgroupSet s = pick(rng, enumerate_subgroups(k));
    if (mode == 2) {
      data.covering = QuotientSubgroup{std::move(k), std::move(images), std::move(s)};
    } else {
      const CosetAutomaton a = automaton_from_quotient(images, k, s);
      std::vector<FreeWord> words = reidemeister_schreier(a);
      const int extra = static_cast<int>(uniform_below(rng, 3));
      for (int i = 0; i < extra && pres.rank > 0; ++i) {
        FreeWord w;
        const int length = 1 + static_cast<int>(uniform_below(rng, 4));
        for (int j = 0; j < length; ++j) {
          w.push_back({static_cast<int>(uniform_below(rng, pres.rank)), uniform_below(rng, 2) ? 1 : -1});
        }
        words.push_back(free_reduce(std::move(w)));
      }
      data.covering = WordsSubgroup{std::move(words)};
    }
  }
  data.group = std::move(g);
  return data;
}

std::vector<InstanceData> random_corpus(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<InstanceData> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(random_instance(rng, i));
  return out;
}

}  // namespace flatcover
