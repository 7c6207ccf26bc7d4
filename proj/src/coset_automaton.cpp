#include "flatcover/coset_automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <tuple>

#include "flatcover/error.hpp"

namespace flatcover {

CosetAutomaton::CosetAutomaton(int rank, int state_count)
    : rank_(rank),
      states_(state_count),
      table_(static_cast<std::size_t>(state_count) * rank * 2, kUndefined) {
  if (rank < 0 || state_count < 1) throw PreconditionError("automaton needs rank >= 0 and a base state");
}

void CosetAutomaton::connect(int state, int generator, int to) {
  const int fwd = target(state, {generator, 1});
  const int bwd = target(to, {generator, -1});
  if ((fwd != kUndefined && fwd != to) || (bwd != kUndefined && bwd != state)) {
    throw PreconditionError("conflicting transition for generator " + std::to_string(generator));
  }
  table_[column(state, {generator, 1})] = to;
  table_[column(to, {generator, -1})] = state;
}

bool CosetAutomaton::complete() const {
  return std::none_of(table_.begin(), table_.end(), [](int x) { return x == kUndefined; });
}

int CosetAutomaton::trace(int state, const FreeWord& w) const {
  for (const Letter& l : w) {
    if (state == kUndefined) break;
    state = target(state, l);
  }
  return state;
}

namespace {

std::vector<Letter> letter_order(int rank) {
  std::vector<Letter> out;
  for (int g = 0; g < rank; ++g) {
    out.push_back({g, 1});
    out.push_back({g, -1});
  }
  return out;
}

struct BfsTree {
  std::vector<int> order;        // states in discovery order
  std::vector<int> renumber;     // old -> new, kUndefined if unreachable
  std::vector<int> parent;       // by old state
  std::vector<Letter> via;       // letter read from parent
};

BfsTree bfs(const CosetAutomaton& a) {
  BfsTree t;
  t.renumber.assign(a.state_count(), CosetAutomaton::kUndefined);
  t.parent.assign(a.state_count(), CosetAutomaton::kUndefined);
  t.via.assign(a.state_count(), Letter{});
  t.renumber[0] = 0;
  t.order.push_back(0);
  const auto letters = letter_order(a.rank());
  for (std::size_t head = 0; head < t.order.size(); ++head) {
    const int s = t.order[head];
    for (const Letter& l : letters) {
      const int u = a.target(s, l);
      if (u == CosetAutomaton::kUndefined || t.renumber[u] != CosetAutomaton::kUndefined) continue;
      t.renumber[u] = static_cast<int>(t.order.size());
      t.parent[u] = s;
      t.via[u] = l;
      t.order.push_back(u);
    }
  }
  return t;
}

}  // namespace

CosetAutomaton canonicalize(const CosetAutomaton& a) {
  const BfsTree t = bfs(a);
  CosetAutomaton out(a.rank(), static_cast<int>(t.order.size()));
  for (int s : t.order) {
    for (int g = 0; g < a.rank(); ++g) {
      const int u = a.target(s, {g, 1});
      if (u != CosetAutomaton::kUndefined) out.connect(t.renumber[s], g, t.renumber[u]);
    }
  }
  return out;
}

std::vector<FreeWord> coset_representatives(const CosetAutomaton& a) {
  const BfsTree t = bfs(a);
  std::vector<FreeWord> reps(a.state_count());
  for (int s : t.order) {
    if (s == 0) continue;
    reps[s] = reps[t.parent[s]];
    reps[s].push_back(t.via[s]);
  }
  return reps;
}

// --- Stallings folding -----------------------------------------------------

namespace {

class Folder {
 public:
  explicit Folder(int rank) : rank_(rank) { add_vertex(); }

  int add_vertex() {
    parent_.push_back(static_cast<int>(parent_.size()));
    out_.resize(out_.size() + rank_, -1);
    in_.resize(in_.size() + rank_, -1);
    return static_cast<int>(parent_.size()) - 1;
  }

  int find(int v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  void add_edge(int u, int g, int v) {
    pending_edges_.push_back({u, g, v});
    drain();
  }

  CosetAutomaton result() {
    std::vector<int> reps;
    std::vector<int> slot(parent_.size(), -1);
    for (int v = 0; v < static_cast<int>(parent_.size()); ++v) {
      if (find(v) == v) {
        slot[v] = static_cast<int>(reps.size());
        reps.push_back(v);
      }
    }
    CosetAutomaton a(rank_, static_cast<int>(reps.size()));
    for (int v : reps) {
      for (int g = 0; g < rank_; ++g) {
        const int t = out_[at(v, g)];
        if (t >= 0) a.connect(slot[v], g, slot[find(t)]);
      }
    }
    // find(0) == 0 always, since merges keep the smaller representative.
    return canonicalize(a);
  }

 private:
  struct Pending {
    int u, g, v;
  };

  std::size_t at(int v, int g) const { return static_cast<std::size_t>(v) * rank_ + g; }

  void drain() {
    while (!pending_edges_.empty() || !pending_merges_.empty()) {
      if (!pending_merges_.empty()) {
        auto [x, y] = pending_merges_.front();
        pending_merges_.pop_front();
        merge(x, y);
        continue;
      }
      Pending e = pending_edges_.front();
      pending_edges_.pop_front();
      place(e.u, e.g, e.v);
    }
  }

  void place(int u, int g, int v) {
    u = find(u);
    v = find(v);
    int& fwd = out_[at(u, g)];
    if (fwd >= 0 && find(fwd) != v) {
      pending_merges_.push_back({find(fwd), v});
    } else {
      fwd = v;
    }
    int& bwd = in_[at(v, g)];
    if (bwd >= 0 && find(bwd) != u) {
      pending_merges_.push_back({find(bwd), u});
    } else {
      bwd = u;
    }
  }

  void merge(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return;
    const int keep = std::min(x, y);
    const int drop = std::max(x, y);
    parent_[drop] = keep;
    for (int g = 0; g < rank_; ++g) {
      if (out_[at(drop, g)] >= 0) pending_edges_.push_back({keep, g, out_[at(drop, g)]});
      if (in_[at(drop, g)] >= 0) pending_edges_.push_back({in_[at(drop, g)], g, keep});
      out_[at(drop, g)] = -1;
      in_[at(drop, g)] = -1;
    }
  }

  int rank_;
  std::vector<int> parent_;
  std::vector<int> out_;
  std::vector<int> in_;
  std::deque<Pending> pending_edges_;
  std::deque<std::pair<int, int>> pending_merges_;
};

}  // namespace

CosetAutomaton stallings_core(std::span<const FreeWord> generators, int rank) {
  Folder folder(rank);
  for (const FreeWord& raw : generators) {
    const FreeWord w = free_reduce(raw);
    if (w.empty()) continue;
    for (const Letter& l : w) {
      if (l.generator < 0 || l.generator >= rank) throw InputError("word uses an undeclared generator");
    }
    // Petal 0 -> fresh -> ... -> 0 spelling w.
    int current = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const int next = (i + 1 == w.size()) ? 0 : folder.add_vertex();
      if (w[i].exponent > 0) {
        folder.add_edge(current, w[i].generator, next);
      } else {
        folder.add_edge(next, w[i].generator, current);
      }
      current = next;
    }
  }
  return folder.result();
}

// --- Todd–Coxeter (HLT) ----------------------------------------------------

std::size_t coset_cap_for_cells(std::size_t cells, int rank) {
  const std::size_t width = static_cast<std::size_t>(std::max(rank, 1)) * 2;
  return std::max<std::size_t>(1, cells / width);
}

namespace {

class CosetEnumerator {
 public:
  CosetEnumerator(int rank, std::size_t cap) : width_(2 * rank), cap_(cap) { define_first(); }

  bool live(int c) const { return parent_[c] == c; }
  int defined() const { return static_cast<int>(parent_.size()); }

  void scan_and_fill(int alpha, const std::vector<int>& w) {
    if (w.empty()) return;
    int f = alpha;
    int b = alpha;
    int i = 0;
    int j = static_cast<int>(w.size()) - 1;
    while (true) {
      while (i <= j && cell(f, w[i]) >= 0) f = cell(f, w[i++]);
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && cell(b, w[j] ^ 1) >= 0) b = cell(b, w[j--] ^ 1);
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        cell(f, w[i]) = b;
        cell(b, w[i] ^ 1) = f;
        return;
      }
      define(f, w[i]);
    }
  }

  void fill_row(int alpha) {
    for (int x = 0; x < width_; ++x) {
      if (!live(alpha)) return;
      if (cell(alpha, x) < 0) define(alpha, x);
    }
  }

  CosetAutomaton finish(int rank) {
    std::vector<int> slot(parent_.size(), -1);
    int count = 0;
    for (int c = 0; c < defined(); ++c)
      if (live(c)) slot[c] = count++;
    CosetAutomaton a(rank, count);
    for (int c = 0; c < defined(); ++c) {
      if (!live(c)) continue;
      for (int g = 0; g < rank; ++g) a.connect(slot[c], g, slot[rep(cell(c, 2 * g))]);
    }
    return canonicalize(a);
  }

 private:
  int& cell(int c, int x) { return table_[static_cast<std::size_t>(c) * width_ + x]; }

  void define_first() {
    parent_.push_back(0);
    table_.resize(table_.size() + width_, -1);
  }

  void define(int c, int x) {
    if (parent_.size() >= cap_) {
      throw CapExceeded("enumeration did not complete within cap (" + std::to_string(cap_) + " cosets)");
    }
    const int n = defined();
    parent_.push_back(n);
    table_.resize(table_.size() + width_, -1);
    cell(c, x) = n;
    cell(n, x ^ 1) = c;
  }

  int rep(int c) {
    int root = c;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[c] != root) {
      const int next = parent_[c];
      parent_[c] = root;
      c = next;
    }
    return root;
  }

  void merge(int k, int l) {
    k = rep(k);
    l = rep(l);
    if (k == l) return;
    const int keep = std::min(k, l);
    const int drop = std::max(k, l);
    parent_[drop] = keep;
    queue_.push_back(drop);
  }

  void coincidence(int a, int b) {
    merge(a, b);
    while (!queue_.empty()) {
      const int gamma = queue_.front();
      queue_.pop_front();
      for (int x = 0; x < width_; ++x) {
        const int delta = cell(gamma, x);
        if (delta < 0) continue;
        cell(delta, x ^ 1) = -1;
        const int mu = rep(gamma);
        const int nu = rep(delta);
        if (cell(mu, x) >= 0) {
          merge(nu, cell(mu, x));
        } else if (cell(nu, x ^ 1) >= 0) {
          merge(mu, cell(nu, x ^ 1));
        } else {
          cell(mu, x) = nu;
          cell(nu, x ^ 1) = mu;
        }
      }
    }
  }

  int width_;
  std::size_t cap_;
  std::vector<int> parent_;
  std::vector<int> table_;
  std::deque<int> queue_;
};

std::vector<int> to_columns(const FreeWord& w) {
  std::vector<int> out;
  out.reserve(w.size());
  for (const Letter& l : w) out.push_back(2 * l.generator + (l.exponent > 0 ? 0 : 1));
  return out;
}

}  // namespace

CosetAutomaton todd_coxeter(const Presentation& p, std::span<const FreeWord> subgroup,
                            std::size_t max_cosets) {
  if (max_cosets < 1) throw PreconditionError("coset cap must be at least 1");
  for (const auto& w : subgroup)
    for (const Letter& l : w)
      if (l.generator < 0 || l.generator >= p.rank) throw InputError("word uses an undeclared generator");

  CosetEnumerator e(p.rank, max_cosets);
  std::vector<std::vector<int>> relators;
  for (const auto& r : p.relators) relators.push_back(to_columns(r));
  for (const auto& w : subgroup) e.scan_and_fill(0, to_columns(w));
  for (int alpha = 0; alpha < e.defined(); ++alpha) {
    for (const auto& r : relators) {
      if (!e.live(alpha)) break;
      e.scan_and_fill(alpha, r);
    }
    if (e.live(alpha)) e.fill_row(alpha);
  }
  return e.finish(p.rank);
}

// --- Quotient preimages ----------------------------------------------------

CosetAutomaton automaton_from_quotient(std::span<const Element> images, const GroupTable& g,
                                       const SubgroupSet& s, std::span<const FreeWord> relators) {
  for (Element x : images)
    if (!g.contains(x)) throw InputError("generator image out of range");
  if (!is_subgroup(g, s)) throw InputError("quotient subgroup is not a subgroup");
  for (std::size_t i = 0; i < relators.size(); ++i) {
    Element acc = GroupTable::identity();
    for (const Letter& l : relators[i]) {
      const Element x = images[l.generator];
      acc = g.mul(acc, l.exponent > 0 ? x : g.inv(x));
    }
    if (acc != GroupTable::identity()) {
      throw InputError("relator " + std::to_string(i) + " maps to " + g.label(acc) + ", not the identity");
    }
  }

  const SubgroupSet image = subgroup_closure(g, images);
  std::vector<Element> meet;
  for (Element x : s.members)
    if (image.contains(x)) meet.push_back(x);

  auto coset_key = [&](Element x) {
    Element best = g.mul(meet.front(), x);
    for (Element k : meet) best = std::min(best, g.mul(k, x));
    return best;
  };

  const int rank = static_cast<int>(images.size());
  std::map<Element, int> state_of{{coset_key(GroupTable::identity()), 0}};
  std::vector<Element> reps{GroupTable::identity()};
  std::vector<std::tuple<int, int, Element>> moves;
  for (std::size_t head = 0; head < reps.size(); ++head) {
    for (int gen = 0; gen < rank; ++gen) {
      const Element key = coset_key(g.mul(reps[head], images[gen]));
      auto [it, fresh] = state_of.emplace(key, static_cast<int>(reps.size()));
      if (fresh) reps.push_back(key);
      moves.emplace_back(static_cast<int>(head), gen, it->second);
    }
  }
  CosetAutomaton a(rank, static_cast<int>(reps.size()));
  for (auto [from, gen, to] : moves) a.connect(from, gen, to);
  return canonicalize(a);
}

bool membership(const CosetAutomaton& a, const FreeWord& w) { return a.trace(0, w) == 0; }

bool automata_equal(const CosetAutomaton& x, const CosetAutomaton& y) {
  if (!x.complete() || !y.complete()) throw PreconditionError("automata_equal needs complete automata");
  if (x.rank() != y.rank()) throw PreconditionError("automata over different generator sets");
  return canonicalize(x) == canonicalize(y);
}

std::vector<FreeWord> reidemeister_schreier(const CosetAutomaton& a) {
  if (!a.complete()) throw PreconditionError("Schreier generators need a complete automaton");
  const BfsTree t = bfs(a);
  const std::vector<FreeWord> reps = coset_representatives(a);
  std::vector<FreeWord> out;
  for (int s = 0; s < a.state_count(); ++s) {
    for (int g = 0; g < a.rank(); ++g) {
      const int u = a.target(s, {g, 1});
      const bool tree_edge = (t.parent[u] == s && t.via[u] == Letter{g, 1}) ||
                             (t.parent[s] == u && t.via[s] == Letter{g, -1});
      if (tree_edge) continue;
      FreeWord w = reps[s];
      w.push_back({g, 1});
      w = concat(w, inverse(reps[u]));
      if (!w.empty()) out.push_back(std::move(w));
    }
  }
  return out;
}

bool is_normal_subgroup(const CosetAutomaton& a) {
  if (!a.complete()) throw PreconditionError("normality test needs a complete automaton");
  const auto gens = reidemeister_schreier(a);
  for (int s = 0; s < a.state_count(); ++s)
    for (const auto& w : gens)
      if (a.trace(s, w) != s) return false;
  return true;
}

std::string to_string(SubgroupMethod m) {
  switch (m) {
    case SubgroupMethod::stallings: return "stallings";
    case SubgroupMethod::todd_coxeter: return "todd-coxeter";
    case SubgroupMethod::quotient: return "quotient";
  }
  return "unknown";
}

ResolvedSubgroup resolve_subgroup(const Presentation& p, const SubgroupSpec& spec,
                                  std::size_t max_cosets) {
  if (const auto* q = std::get_if<QuotientSubgroup>(&spec)) {
    if (static_cast<int>(q->images.size()) != p.rank) {
      throw InputError("quotient needs " + std::to_string(p.rank) + " generator images, got " +
                       std::to_string(q->images.size()));
    }
    return {automaton_from_quotient(q->images, q->group, q->subgroup, p.relators), SubgroupMethod::quotient};
  }
  const auto& words = std::get<WordsSubgroup>(spec).words;
  if (!p.relators.empty()) return {todd_coxeter(p, words, max_cosets), SubgroupMethod::todd_coxeter};
  CosetAutomaton core = stallings_core(words, p.rank);
  if (!core.complete()) throw PreconditionError("subgroup has infinite index (folded core graph is incomplete)");
  return {std::move(core), SubgroupMethod::stallings};
}

}  // namespace flatcover
