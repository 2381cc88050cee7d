// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "syncplan/translate.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <tuple>

namespace syncplan {
namespace {

// Hash-consed NNF subformulas; F and G are rewritten to U and R.
struct Node {
  Op op;
  int atom = -1;
  int lhs = -1;
  int rhs = -1;
  auto operator<=>(const Node &) const = default;
};

class FormulaTable {
 public:
  int intern(const Formula &f) {
    switch (f.op) {
      case Op::atom:
        return add({Op::atom, f.atom});
      case Op::top:
        return add({Op::top});
      case Op::bottom:
        return add({Op::bottom});
      case Op::negation:
        return add({Op::negation, f.lhs().atom, intern(f.lhs())});
      case Op::eventually:
        return add({Op::until, -1, add({Op::top}), intern(f.lhs())});
      case Op::always:
        return add({Op::release, -1, add({Op::bottom}), intern(f.lhs())});
      case Op::next:
        return add({Op::next, -1, intern(f.lhs())});
      default:
        return add({f.op, -1, intern(f.lhs()), intern(f.rhs())});
    }
  }

  const Node &operator[](int id) const { return nodes_[id]; }
  int size() const { return static_cast<int>(nodes_.size()); }

  // Interns the complement of every literal so the tableau can look it up.
  void close_literals() {
    for (int id = 0, n = size(); id < n; ++id) {
      Node node = nodes_[id];
      if (node.op == Op::atom) add({Op::negation, node.atom, id});
      if (node.op == Op::negation) add({Op::atom, node.atom});
    }
  }

  std::optional<int> complement(int id) const {
    const Node &node = nodes_[id];
    std::optional<Node> other;
    if (node.op == Op::atom) other = Node{Op::negation, node.atom, id};
    if (node.op == Op::negation) other = Node{Op::atom, node.atom};
    if (!other) return std::nullopt;
    auto it = index_.find(*other);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  int add(Node n) {
    auto [it, fresh] = index_.emplace(n, size());
    if (fresh) nodes_.push_back(n);
    return it->second;
  }

  std::vector<Node> nodes_;
  std::map<Node, int> index_;
};

using IdSet = std::set<int>;
constexpr int init_node = -1;

struct TableauNode {
  IdSet incoming, old, next;
};

class Tableau {
 public:
  explicit Tableau(const FormulaTable &table) : table_(table) {}

  void run(int root) { expand({init_node}, {root}, {}, {}); }

  const std::vector<TableauNode> &nodes() const { return nodes_; }

 private:
  // Literals in `old` that contradict `id`.
  bool contradicts(int id, const IdSet &old) const {
    const Node &n = table_[id];
    if (n.op == Op::bottom) return true;
    for (int other : old) {
      const Node &m = table_[other];
      if (n.op == Op::atom && m.op == Op::negation && m.atom == n.atom) return true;
      if (n.op == Op::negation && m.op == Op::atom && m.atom == n.atom) return true;
    }
    return false;
  }

  void expand(IdSet incoming, IdSet fresh, IdSet old, IdSet next) {
    if (fresh.empty()) {
      for (auto &node : nodes_) {
        if (node.old == old && node.next == next) {
          node.incoming.insert(incoming.begin(), incoming.end());
          return;
        }
      }
      int id = static_cast<int>(nodes_.size());
      nodes_.push_back({incoming, old, next});
      expand({id}, next, {}, {});
      return;
    }
    int eta = *fresh.begin();
    fresh.erase(fresh.begin());
    const Node &n = table_[eta];
    auto unless_old = [&](IdSet set, std::initializer_list<int> extra) {
      for (int x : extra)
        if (!old.count(x)) set.insert(x);
      return set;
    };
    switch (n.op) {
      case Op::top:
        expand(incoming, fresh, old, next);
        return;
      case Op::bottom:
      case Op::atom:
      case Op::negation: {
        if (contradicts(eta, old)) return;
        old.insert(eta);
        expand(incoming, fresh, old, next);
        return;
      }
      case Op::conjunction: {
        IdSet f = unless_old(fresh, {n.lhs, n.rhs});
        old.insert(eta);
        expand(incoming, f, old, next);
        return;
      }
      case Op::next: {
        old.insert(eta);
        next.insert(n.lhs);
        expand(incoming, fresh, old, next);
        return;
      }
      case Op::disjunction:
      case Op::until:
      case Op::release: {
        IdSet first_fresh, second_fresh;
        IdSet first_next = next;
        if (n.op == Op::disjunction) {
          first_fresh = unless_old(fresh, {n.lhs});
          second_fresh = unless_old(fresh, {n.rhs});
        } else if (n.op == Op::until) {
          // Postponing is only needed while a literal goal is false.
          first_fresh = unless_old(fresh, {n.lhs});
          if (auto no_goal = table_.complement(n.rhs)) first_fresh = unless_old(first_fresh, {*no_goal});
          first_next.insert(eta);
          second_fresh = unless_old(fresh, {n.rhs});
          if (table_[n.rhs].op == Op::top) {
            old.insert(eta);
            expand(incoming, second_fresh, old, next);
            return;
          }
        } else {
          first_fresh = unless_old(fresh, {n.rhs});
          first_next.insert(eta);
          second_fresh = unless_old(fresh, {n.lhs, n.rhs});
        }
        old.insert(eta);
        expand(incoming, first_fresh, old, first_next);
        expand(incoming, second_fresh, old, next);
        return;
      }
      default:
        throw std::logic_error("formula not in negation normal form");
    }
  }

  const FormulaTable &table_;
  std::vector<TableauNode> nodes_;
};

Guard cube_of(const IdSet &old, const FormulaTable &table) {
  Guard g;
  for (int id : old) {
    const Node &n = table[id];
    if (n.op == Op::atom) g.required |= symbol_bit(n.atom);
    if (n.op == Op::negation) g.forbidden |= symbol_bit(n.atom);
  }
  return g;
}

// When the initial state has no incoming edges and the same outgoing edges
// as another state, that state can serve as the initial one.
BuchiAutomaton collapse_initial(const BuchiAutomaton &a) {
  auto in = a.in_edges();
  if (!in[a.initial].empty()) return a;
  auto out = a.out_edges();
  auto edge_set = [&](StateId q) {
    std::vector<std::pair<Label, StateId>> edges;
    for (TransitionId t : out[q]) {
      StateId target = a.transitions[t].target;
      edges.push_back({a.transitions[t].label, target == q ? a.initial : target});
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
  };
  auto initial_edges = edge_set(a.initial);
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (q == a.initial) continue;
    // A self-loop of q matches an edge from the initial state into q.
    auto edges = edge_set(q);
    for (auto &e : edges)
      if (e.second == a.initial) e.second = q;
    std::sort(edges.begin(), edges.end());
    auto target_edges = initial_edges;
    for (auto &e : target_edges)
      if (e.second == a.initial) e.second = q;
    std::sort(target_edges.begin(), target_edges.end());
    if (edges != target_edges) continue;
    BuchiAutomaton moved = a;
    moved.initial = q;
    std::vector<char> keep(a.num_states(), 1);
    keep[a.initial] = 0;
    return restrict_states(moved, keep);
  }
  return a;
}

// Quotient by the coarsest forward bisimulation that respects acceptance:
// states with the same acceptance and the same (guard, target class) pairs
// accept the same language.
BuchiAutomaton quotient_bisimilar(const BuchiAutomaton &a) {
  const int n = a.num_states();
  auto out = a.out_edges();
  std::vector<int> block(n);
  for (StateId q = 0; q < n; ++q) block[q] = a.is_accepting(q) ? 1 : 0;
  for (int blocks = -1;;) {
    using Signature = std::pair<int, std::set<std::pair<Label, int>>>;
    std::map<Signature, int> ids;
    std::vector<int> next(n);
    for (StateId q = 0; q < n; ++q) {
      Signature sig{block[q], {}};
      for (TransitionId t : out[q]) sig.second.insert({a.transitions[t].label, block[a.transitions[t].target]});
      next[q] = ids.emplace(std::move(sig), static_cast<int>(ids.size())).first->second;
    }
    block = std::move(next);
    if (static_cast<int>(ids.size()) == blocks) break;
    blocks = static_cast<int>(ids.size());
  }

  BuchiAutomaton r;
  r.alphabet = a.alphabet;
  std::map<int, StateId> state_of;
  auto state = [&](StateId q) {
    auto [it, fresh] = state_of.emplace(block[q], r.num_states());
    if (fresh) r.add_state(a.is_accepting(q));
    return it->second;
  };
  r.initial = state(a.initial);
  for (StateId q = 0; q < n; ++q) state(q);
  std::set<std::tuple<StateId, Label, StateId>> seen;
  for (const auto &t : a.transitions) {
    StateId from = state(t.source), to = state(t.target);
    if (seen.insert({from, t.label, to}).second) r.add_transition(from, t.label, to);
  }
  return r;
}

}  // namespace

BuchiAutomaton translate(const Formula &f, const Alphabet &alphabet) {
  FormulaTable table;
  int root = table.intern(to_nnf(f));
  table.close_literals();
  Tableau tableau(table);
  tableau.run(root);
  const auto &nodes = tableau.nodes();
  const int n = static_cast<int>(nodes.size());

  // One acceptance set per until subformula.
  std::vector<std::vector<char>> acceptance;
  for (int id = 0; id < table.size(); ++id) {
    const Node &u = table[id];
    if (u.op != Op::until) continue;
    std::vector<char> set(n + 1, 0);  // index n is the pseudo-initial node
    for (int k = 0; k < n; ++k) {
      const auto &old = nodes[k].old;
      bool fulfilled = old.count(u.rhs) || table[u.rhs].op == Op::top;
      set[k] = fulfilled || !old.count(id);
    }
    acceptance.push_back(std::move(set));
  }
  const int sets = static_cast<int>(acceptance.size());

  // Successor lists of the tableau graph; node n is the pseudo-initial node.
  std::vector<std::vector<int>> successors(n + 1);
  for (int k = 0; k < n; ++k)
    for (int from : nodes[k].incoming) successors[from == init_node ? n : from].push_back(k);

  BuchiAutomaton result;
  result.alphabet = alphabet;
  std::map<std::pair<int, int>, StateId> index;
  std::deque<std::pair<int, int>> queue;
  auto intern = [&](int node, int level) {
    auto [it, fresh] = index.emplace(std::make_pair(node, level), result.num_states());
    if (fresh) {
      bool accept = sets == 0 || (level == 0 && acceptance[0][node]);
      result.add_state(accept);
      queue.push_back({node, level});
    }
    return it->second;
  };
  result.initial = intern(n, 0);
  while (!queue.empty()) {
    auto [node, level] = queue.front();
    queue.pop_front();
    StateId from = index.at({node, level});
    int next_level = sets == 0 ? 0 : (acceptance[level][node] ? (level + 1) % sets : level);
    for (int succ : successors[node]) {
      StateId to = intern(succ, next_level);
      result.add_transition(from, Label::of_guard(cube_of(nodes[succ].old, table)), to);
    }
  }
  return collapse_initial(quotient_bisimilar(prune_non_coaccessible(result)));
}

}  // namespace syncplan
