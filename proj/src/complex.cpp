#include "flatcover/complex.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <set>
#include <sstream>

#include "flatcover/error.hpp"

namespace flatcover {

EdgeWord reversed(const EdgeWord& w) {
  EdgeWord out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->edge, -it->sign});
  return out;
}

FreeWord free_reduce(FreeWord w) {
  FreeWord out;
  out.reserve(w.size());
  for (const Letter& l : w) {
    if (!out.empty() && out.back() == l.inverse()) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

FreeWord inverse(const FreeWord& w) {
  FreeWord out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

FreeWord concat(const FreeWord& a, const FreeWord& b) {
  FreeWord out = a;
  out.insert(out.end(), b.begin(), b.end());
  return free_reduce(std::move(out));
}

std::optional<int> BaseComplex::index_of(int edge_id) const {
  auto it = index_.find(edge_id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int BaseComplex::index_of_checked(int edge_id) const {
  auto idx = index_of(edge_id);
  if (!idx) throw InputError("unknown edge id " + std::to_string(edge_id));
  return *idx;
}

std::optional<int> BaseComplex::find_name(std::string_view name) const {
  for (int i = 0; i < edge_count(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

int BaseComplex::step_start(const Step& s) const {
  const Edge& e = edges_[index_of_checked(s.edge)];
  return s.sign > 0 ? e.tail : e.head;
}

int BaseComplex::step_end(const Step& s) const {
  const Edge& e = edges_[index_of_checked(s.edge)];
  return s.sign > 0 ? e.head : e.tail;
}

bool BaseComplex::is_path(const EdgeWord& w) const {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!index_of(w[i].edge) || (w[i].sign != 1 && w[i].sign != -1)) return false;
    if (i > 0 && step_end(w[i - 1]) != step_start(w[i])) return false;
  }
  return true;
}

int BaseComplex::path_start(const EdgeWord& w, int fallback) const {
  return w.empty() ? fallback : step_start(w.front());
}

int BaseComplex::path_end(const EdgeWord& w, int fallback) const {
  return w.empty() ? fallback : step_end(w.back());
}

BaseComplex validate_complex(ComplexSpec spec, bool require_connected) {
  if (spec.vertex_count < 1) throw InputError("complex needs at least one vertex", "/complex/vertices");
  if (spec.basepoint < 0 || spec.basepoint >= spec.vertex_count) {
    throw InputError("basepoint out of range", "/complex/basepoint");
  }
  BaseComplex c;
  c.vertex_count_ = spec.vertex_count;
  c.basepoint_ = spec.basepoint;

  for (std::size_t i = 0; i < spec.edges.size(); ++i) {
    const Edge& e = spec.edges[i];
    const std::string where = "/complex/edges/" + std::to_string(i);
    if (e.id < 0) throw InputError("edge id must be non-negative", where + "/id");
    if (e.tail < 0 || e.tail >= spec.vertex_count) throw InputError("dangling tail vertex", where + "/tail");
    if (e.head < 0 || e.head >= spec.vertex_count) throw InputError("dangling head vertex", where + "/head");
  }
  std::stable_sort(spec.edges.begin(), spec.edges.end(),
                   [](const Edge& a, const Edge& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < spec.edges.size(); ++i) {
    if (i > 0 && spec.edges[i].id == spec.edges[i - 1].id) {
      throw InputError("duplicate edge id " + std::to_string(spec.edges[i].id), "/complex/edges");
    }
    c.index_.emplace(spec.edges[i].id, static_cast<int>(i));
  }
  c.edges_ = std::move(spec.edges);

  c.names_.resize(c.edges_.size());
  for (std::size_t i = 0; i < c.edges_.size(); ++i) c.names_[i] = "e" + std::to_string(c.edges_[i].id);
  std::set<int> aliased;
  for (const auto& [name, id] : spec.aliases) {
    auto idx = c.index_of(id);
    if (!idx) throw InputError("alias '" + name + "' names an unknown edge", "/complex/aliases/" + name);
    if (aliased.insert(id).second) c.names_[*idx] = name;
  }

  // Connectivity.
  std::vector<std::vector<int>> adjacent(c.vertex_count_);
  for (const Edge& e : c.edges_) {
    adjacent[e.tail].push_back(e.head);
    adjacent[e.head].push_back(e.tail);
  }
  std::vector<bool> seen(c.vertex_count_, false);
  std::deque<int> queue{c.basepoint_};
  seen[c.basepoint_] = true;
  int reached = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int u : adjacent[v]) {
      if (!seen[u]) {
        seen[u] = true;
        ++reached;
        queue.push_back(u);
      }
    }
  }
  if (require_connected && reached != c.vertex_count_) throw InputError("underlying graph is disconnected", "/complex");

  for (std::size_t i = 0; i < spec.relators.size(); ++i) {
    const EdgeWord& r = spec.relators[i];
    const std::string where = "/complex/relators/" + std::to_string(i);
    for (const Step& s : r) {
      if (!c.index_of(s.edge)) throw InputError("relator references unknown edge " + std::to_string(s.edge), where);
    }
    if (!c.is_path(r)) throw InputError("relator is not a path", where);
    if (!r.empty() && c.step_start(r.front()) != c.step_end(r.back())) {
      throw InputError("relator is not a closed path", where);
    }
  }
  c.relators_ = std::move(spec.relators);
  return c;
}

SpanningTree spanning_tree(const BaseComplex& c) {
  const int n = c.vertex_count();
  SpanningTree t;
  t.in_tree.assign(c.edge_count(), false);
  t.parent_edge.assign(n, -1);
  t.path_from_base.assign(n, {});

  std::vector<std::vector<int>> incident(n);
  for (int i = 0; i < c.edge_count(); ++i) {
    incident[c.edge(i).tail].push_back(i);
    if (c.edge(i).head != c.edge(i).tail) incident[c.edge(i).head].push_back(i);
  }
  std::vector<bool> seen(n, false);
  std::deque<int> queue{c.basepoint()};
  seen[c.basepoint()] = true;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int i : incident[v]) {  // ascending edge index = ascending id
      const Edge& e = c.edge(i);
      for (int sign : {1, -1}) {
        const int from = sign > 0 ? e.tail : e.head;
        const int to = sign > 0 ? e.head : e.tail;
        if (from != v || seen[to]) continue;
        seen[to] = true;
        t.in_tree[i] = true;
        t.parent_edge[to] = i;
        t.path_from_base[to] = t.path_from_base[v];
        t.path_from_base[to].push_back({e.id, sign});
        queue.push_back(to);
      }
    }
  }
  t.generator_of_edge.assign(c.edge_count(), -1);
  for (int i = 0; i < c.edge_count(); ++i) {
    if (!t.in_tree[i]) {
      t.generator_of_edge[i] = static_cast<int>(t.generator_edges.size());
      t.generator_edges.push_back(i);
    }
  }
  return t;
}

FreeWord loop_to_generator_word(const BaseComplex& c, const SpanningTree& t, const EdgeWord& w) {
  if (!c.is_path(w)) throw InputError("word is not a path: " + format_edge_word(c, w));
  if (c.path_start(w, c.basepoint()) != c.basepoint() || c.path_end(w, c.basepoint()) != c.basepoint()) {
    throw InputError("word is not closed at the basepoint: " + format_edge_word(c, w));
  }
  FreeWord out;
  for (const Step& s : w) {
    const int gen = t.generator_of_edge[c.index_of_checked(s.edge)];
    if (gen >= 0) out.push_back({gen, s.sign});
  }
  return free_reduce(std::move(out));
}

EdgeWord generator_loop(const BaseComplex& c, const SpanningTree& t, int generator) {
  const Edge& e = c.edge(t.generator_edges.at(generator));
  EdgeWord w = t.path_from_base[e.tail];
  w.push_back({e.id, 1});
  const EdgeWord back = t.path_to_base(e.head);
  w.insert(w.end(), back.begin(), back.end());
  return w;
}

EdgeWord word_to_loop(const BaseComplex& c, const SpanningTree& t, const FreeWord& w) {
  EdgeWord out;
  for (const Letter& l : w) {
    EdgeWord piece = generator_loop(c, t, l.generator);
    if (l.exponent < 0) piece = reversed(piece);
    out.insert(out.end(), piece.begin(), piece.end());
  }
  return out;
}

Presentation pi1_presentation(const BaseComplex& c, const SpanningTree& t) {
  Presentation p;
  p.rank = t.rank();
  for (int i : t.generator_edges) p.generator_names.push_back(c.edge_name(i));
  for (const EdgeWord& r : c.relators()) {
    const int start = c.path_start(r, c.basepoint());
    EdgeWord based = t.path_from_base[start];
    based.insert(based.end(), r.begin(), r.end());
    const EdgeWord back = t.path_to_base(start);
    based.insert(based.end(), back.begin(), back.end());
    p.relators.push_back(loop_to_generator_word(c, t, based));
  }
  return p;
}

namespace {

struct Token {
  std::string name;
  int exponent = 1;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (in >> raw) {
    Token tok;
    const auto caret = raw.find('^');
    tok.name = raw.substr(0, caret);
    if (caret != std::string::npos) {
      const std::string exp = raw.substr(caret + 1);
      const char* first = exp.data();
      const char* last = exp.data() + exp.size();
      if (first != last && *first == '+') ++first;
      auto [ptr, ec] = std::from_chars(first, last, tok.exponent);
      if (ec != std::errc() || ptr != last || tok.exponent == 0) {
        throw InputError("bad exponent in token '" + raw + "'");
      }
    }
    if (tok.name.empty()) throw InputError("empty token in word '" + std::string(text) + "'");
    out.push_back(std::move(tok));
  }
  return out;
}

std::optional<int> edge_token_id(std::string_view name) {
  if (name.size() < 2 || name[0] != 'e') return std::nullopt;
  int id = 0;
  auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), id);
  if (ec != std::errc() || ptr != name.data() + name.size()) return std::nullopt;
  return id;
}

void append_power(EdgeWord& w, int edge_id, int exponent) {
  const int sign = exponent > 0 ? 1 : -1;
  for (int k = 0; k < std::abs(exponent); ++k) w.push_back({edge_id, sign});
}

}  // namespace

EdgeWord parse_edge_word(const std::map<std::string, int>& aliases, std::string_view text) {
  EdgeWord w;
  for (const Token& tok : tokenize(text)) {
    if (auto it = aliases.find(tok.name); it != aliases.end()) {
      append_power(w, it->second, tok.exponent);
    } else if (auto id = edge_token_id(tok.name)) {
      append_power(w, *id, tok.exponent);
    } else {
      throw InputError("unknown edge or alias '" + tok.name + "'");
    }
  }
  return w;
}

EdgeWord parse_edge_word(const BaseComplex& c, std::string_view text) {
  EdgeWord w;
  for (const Token& tok : tokenize(text)) {
    if (auto idx = c.find_name(tok.name)) {
      append_power(w, c.edge(*idx).id, tok.exponent);
    } else if (auto id = edge_token_id(tok.name); id && c.index_of(*id)) {
      append_power(w, *id, tok.exponent);
    } else {
      throw InputError("unknown edge or alias '" + tok.name + "'");
    }
  }
  return w;
}

FreeWord parse_generator_word(const BaseComplex& c, const SpanningTree& t, std::string_view text) {
  FreeWord out;
  for (const Step& s : parse_edge_word(c, text)) {
    const int idx = c.index_of_checked(s.edge);
    const int gen = t.generator_of_edge[idx];
    if (gen < 0) throw InputError("edge '" + c.edge_name(idx) + "' is a spanning-tree edge, not a generator");
    out.push_back({gen, s.sign});
  }
  return free_reduce(std::move(out));
}

std::string format_edge_word(const BaseComplex& c, const EdgeWord& w) {
  std::string out;
  for (const Step& s : w) {
    if (!out.empty()) out += ' ';
    auto idx = c.index_of(s.edge);
    out += idx ? c.edge_name(*idx) : "e" + std::to_string(s.edge);
    if (s.sign < 0) out += "^-1";
  }
  return out;
}

std::string format_free_word(const Presentation& p, const FreeWord& w) {
  std::string out;
  for (const Letter& l : w) {
    if (!out.empty()) out += ' ';
    out += l.generator < static_cast<int>(p.generator_names.size()) ? p.generator_names[l.generator]
                                                                    : "g" + std::to_string(l.generator);
    if (l.exponent < 0) out += "^-1";
  }
  return out;
}

}  // namespace flatcover
