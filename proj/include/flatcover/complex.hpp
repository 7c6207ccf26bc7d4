#pragma once

// Base spaces as finite connected 2-complexes: an oriented graph with a
// basepoint plus relator 2-cells given as closed edge paths.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace flatcover {

struct Edge {
  int id = 0;
  int tail = 0;
  int head = 0;
};

/// One traversal of an edge; sign -1 walks it from head to tail.
struct Step {
  int edge = 0;  // edge id
  int sign = 1;
  friend bool operator==(const Step&, const Step&) = default;
};

using EdgeWord = std::vector<Step>;

EdgeWord reversed(const EdgeWord& w);

/// A letter of a free word over the generators of π₁: generator index and
/// exponent ±1.
struct Letter {
  int generator = 0;
  int exponent = 1;
  Letter inverse() const { return {generator, -exponent}; }
  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

using FreeWord = std::vector<Letter>;

FreeWord free_reduce(FreeWord w);
FreeWord inverse(const FreeWord& w);
FreeWord concat(const FreeWord& a, const FreeWord& b);

/// Unvalidated complex description, as read from a document.
struct ComplexSpec {
  int vertex_count = 0;
  std::vector<Edge> edges;
  int basepoint = 0;
  std::vector<EdgeWord> relators;
  std::map<std::string, int> aliases;  // name -> edge id
};

/// A validated complex. Edges are stored in ascending id order; everything
/// downstream refers to edges either by id (in words) or by position
/// ("edge index").
class BaseComplex {
 public:
  BaseComplex() = default;

  int vertex_count() const noexcept { return vertex_count_; }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  int basepoint() const noexcept { return basepoint_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(int index) const { return edges_[index]; }
  const std::vector<EdgeWord>& relators() const noexcept { return relators_; }

  std::optional<int> index_of(int edge_id) const;
  int index_of_checked(int edge_id) const;
  const std::string& edge_name(int index) const { return names_[index]; }
  std::optional<int> find_name(std::string_view name) const;

  int step_start(const Step& s) const;
  int step_end(const Step& s) const;
  bool is_path(const EdgeWord& w) const;
  /// Start vertex of a non-empty path, or `fallback` for the empty word.
  int path_start(const EdgeWord& w, int fallback) const;
  int path_end(const EdgeWord& w, int fallback) const;

 private:
  friend BaseComplex validate_complex(ComplexSpec spec, bool require_connected);

  int vertex_count_ = 1;
  std::vector<Edge> edges_;
  int basepoint_ = 0;
  std::vector<EdgeWord> relators_;
  std::map<int, int> index_;
  std::vector<std::string> names_;
};

/// Checks references, connectivity and relator closure. Throws InputError.
/// Connectivity is waived only for derived-bundle total spaces, which may
/// split into several components.
BaseComplex validate_complex(ComplexSpec spec, bool require_connected = true);

/// Breadth-first spanning tree rooted at the basepoint.
struct SpanningTree {
  std::vector<bool> in_tree;             // by edge index
  std::vector<int> parent_edge;          // by vertex, edge index or -1 at the root
  std::vector<EdgeWord> path_from_base;  // tree path basepoint -> vertex
  std::vector<int> generator_of_edge;    // edge index -> generator or -1 for tree edges
  std::vector<int> generator_edges;      // generator -> edge index

  int rank() const noexcept { return static_cast<int>(generator_edges.size()); }
  EdgeWord path_to_base(int vertex) const { return reversed(path_from_base[vertex]); }
};

SpanningTree spanning_tree(const BaseComplex& c);

/// Generators are the non-tree edges in ascending id order.
struct Presentation {
  int rank = 0;
  std::vector<std::string> generator_names;
  std::vector<FreeWord> relators;
};

/// Non-tree letters of a closed path at the basepoint, freely reduced.
/// Throws InputError when `w` is not a path closed at the basepoint.
FreeWord loop_to_generator_word(const BaseComplex& c, const SpanningTree& t, const EdgeWord& w);

/// tree path base→tail(e) · e · tree path head(e)→base for the generator's edge.
EdgeWord generator_loop(const BaseComplex& c, const SpanningTree& t, int generator);

/// Path realising a generator word as a closed loop at the basepoint.
EdgeWord word_to_loop(const BaseComplex& c, const SpanningTree& t, const FreeWord& w);

Presentation pi1_presentation(const BaseComplex& c, const SpanningTree& t);

/// Tokens are edge references "e<id>" or aliases, optionally followed by an
/// exponent "^-1" or "^k". An empty string is the empty word.
EdgeWord parse_edge_word(const BaseComplex& c, std::string_view text);
/// Same token syntax, resolved against raw aliases before validation.
EdgeWord parse_edge_word(const std::map<std::string, int>& aliases, std::string_view text);

/// Same token syntax, but every token must name a generator (non-tree)
/// edge; yields a freely reduced word over π₁ generators.
FreeWord parse_generator_word(const BaseComplex& c, const SpanningTree& t, std::string_view text);

std::string format_edge_word(const BaseComplex& c, const EdgeWord& w);
std::string format_free_word(const Presentation& p, const FreeWord& w);

}  // namespace flatcover
