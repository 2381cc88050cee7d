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

#include "syncplan/buchi.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <tuple>

namespace syncplan {

StateId BuchiAutomaton::add_state(bool accept, StateId from) {
  StateId id = num_states();
  accepting.push_back(accept ? 1 : 0);
  origin.push_back(from < 0 ? id : from);
  return id;
}

TransitionId BuchiAutomaton::add_transition(StateId source, Label label, StateId target) {
  transitions.push_back({source, label, target});
  return num_transitions() - 1;
}

std::vector<std::vector<TransitionId>> BuchiAutomaton::out_edges() const {
  std::vector<std::vector<TransitionId>> out(num_states());
  for (TransitionId t = 0; t < num_transitions(); ++t)
    out[transitions[t].source].push_back(t);
  return out;
}

std::vector<std::vector<TransitionId>> BuchiAutomaton::in_edges() const {
  std::vector<std::vector<TransitionId>> in(num_states());
  for (TransitionId t = 0; t < num_transitions(); ++t)
    in[transitions[t].target].push_back(t);
  return in;
}

void BuchiAutomaton::check() const {
  auto valid = [&](StateId q) { return q >= 0 && q < num_states(); };
  if (!valid(initial)) throw std::logic_error("initial state out of range");
  if (static_cast<int>(origin.size()) != num_states())
    throw std::logic_error("origin slot size mismatch");
  for (const auto &t : transitions) {
    if (!valid(t.source) || !valid(t.target))
      throw std::logic_error("transition endpoint out of range");
  }
  if (has_witnesses() && witness.size() != transitions.size())
    throw std::logic_error("witness slot size mismatch");
  if (has_dependencies() && dependency.size() != transitions.size())
    throw std::logic_error("dependency slot size mismatch");
}

std::string format_label(const Label &label, const Alphabet &alphabet) {
  switch (label.kind) {
    case Label::Kind::silent:
      return "eps_" + std::to_string(label.owner + 1);
    case Label::Kind::services:
      return alphabet.format(label.services);
    case Label::Kind::guard: {
      if (label.guard.required == 0 && label.guard.forbidden == 0) return "true";
      std::string out;
      auto append = [&](const std::string &lit) {
        if (!out.empty()) out += " && ";
        out += lit;
      };
      for (int k = 0; k < max_symbols; ++k) {
        std::string name = k < alphabet.size() ? alphabet.name(k) : "#" + std::to_string(k);
        if (contains(label.guard.required, k)) append(name);
        if (contains(label.guard.forbidden, k)) append("!" + name);
      }
      return out;
    }
  }
  return "?";
}

std::vector<int> strongly_connected_components(const BuchiAutomaton &a) {
  const int n = a.num_states();
  auto out = a.out_edges();
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<char> on_stack(n, 0);
  std::vector<StateId> stack;
  int next_index = 0, next_comp = 0;

  // Iterative Tarjan: frames hold (state, position in its edge list).
  std::vector<std::pair<StateId, std::size_t>> frames;
  for (StateId root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    frames.push_back({root, 0});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      auto &[v, pos] = frames.back();
      if (pos < out[v].size()) {
        StateId w = a.transitions[out[v][pos++]].target;
        if (index[w] < 0) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        StateId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = next_comp;
        } while (w != v);
        ++next_comp;
      }
      StateId finished = v;
      frames.pop_back();
      if (!frames.empty()) {
        StateId parent = frames.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }
  return comp;
}

std::vector<char> reachable_states(const BuchiAutomaton &a) {
  std::vector<char> seen(a.num_states(), 0);
  if (a.num_states() == 0) return seen;
  auto out = a.out_edges();
  std::deque<StateId> queue{a.initial};
  seen[a.initial] = 1;
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    for (TransitionId t : out[q]) {
      StateId r = a.transitions[t].target;
      if (!seen[r]) {
        seen[r] = 1;
        queue.push_back(r);
      }
    }
  }
  return seen;
}

namespace {

constexpr int unreached = std::numeric_limits<int>::max();

// BFS from `from`, restricted to states with allowed[q]. Returns the
// transitions of a shortest path to the first state satisfying `goal`
// (excluding `from` itself unless allow_empty). nullopt if unreachable.
template <typename Goal>
std::optional<std::vector<TransitionId>> shortest_path(
    const BuchiAutomaton &a, const std::vector<std::vector<TransitionId>> &out,
    StateId from, const std::vector<char> &allowed, Goal goal, bool allow_empty) {
  if (allow_empty && goal(from)) return std::vector<TransitionId>{};
  std::vector<TransitionId> parent(a.num_states(), -1);
  std::vector<char> seen(a.num_states(), 0);
  std::deque<StateId> queue;
  // `from` is not marked seen so that a path of length >= 1 may return to it.
  for (TransitionId t : out[from]) {
    StateId r = a.transitions[t].target;
    if (!allowed[r] || seen[r]) continue;
    seen[r] = 1;
    parent[r] = t;
    queue.push_back(r);
  }
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    if (goal(q)) {
      std::vector<TransitionId> path;
      StateId cur = q;
      do {
        TransitionId t = parent[cur];
        path.push_back(t);
        cur = a.transitions[t].source;
      } while (cur != from);
      std::reverse(path.begin(), path.end());
      return path;
    }
    if (q == from) continue;
    for (TransitionId t : out[q]) {
      StateId r = a.transitions[t].target;
      if (!allowed[r] || seen[r]) continue;
      seen[r] = 1;
      parent[r] = t;
      queue.push_back(r);
    }
  }
  return std::nullopt;
}

struct CycleSearch {
  const BuchiAutomaton &a;
  const std::vector<std::vector<TransitionId>> &out;
  const LassoConstraints &extra;
  const std::vector<char> &in_component;

  std::optional<std::vector<TransitionId>> cycle_through(StateId anchor) const {
    std::vector<char> state_done(extra.state_sets.size(), 0);
    std::vector<char> trans_done(extra.transition_sets.size(), 0);
    auto visit_state = [&](StateId q) {
      for (std::size_t k = 0; k < extra.state_sets.size(); ++k)
        if (extra.state_sets[k][q]) state_done[k] = 1;
    };
    auto visit_transition = [&](TransitionId t) {
      for (std::size_t k = 0; k < extra.transition_sets.size(); ++k)
        if (extra.transition_sets[k][t]) trans_done[k] = 1;
      visit_state(a.transitions[t].target);
    };

    std::vector<TransitionId> cycle;
    StateId current = anchor;
    visit_state(anchor);
    auto extend = [&](const std::vector<TransitionId> &path) {
      for (TransitionId t : path) {
        cycle.push_back(t);
        visit_transition(t);
      }
      if (!path.empty()) current = a.transitions[path.back()].target;
    };

    for (std::size_t k = 0; k < extra.state_sets.size(); ++k) {
      if (state_done[k]) continue;
      const auto &set = extra.state_sets[k];
      auto path = shortest_path(a, out, current, in_component,
                                [&](StateId q) { return set[q] != 0; }, false);
      if (!path) return std::nullopt;
      extend(*path);
    }
    for (std::size_t k = 0; k < extra.transition_sets.size(); ++k) {
      if (trans_done[k]) continue;
      const auto &set = extra.transition_sets[k];
      auto takes = [&](StateId q) -> TransitionId {
        for (TransitionId t : out[q])
          if (set[t] && in_component[a.transitions[t].target]) return t;
        return -1;
      };
      auto path = shortest_path(a, out, current, in_component,
                                [&](StateId q) { return takes(q) >= 0; }, true);
      if (!path) return std::nullopt;
      extend(*path);
      extend({takes(current)});
    }
    auto back = shortest_path(a, out, current, in_component,
                              [&](StateId q) { return q == anchor; },
                              !cycle.empty());
    if (!back) return std::nullopt;
    extend(*back);
    if (cycle.empty()) return std::nullopt;
    return cycle;
  }
};

}  // namespace

std::optional<Lasso> find_accepting_lasso(const BuchiAutomaton &a,
                                          const LassoConstraints &extra) {
  const int n = a.num_states();
  if (n == 0) return std::nullopt;
  auto out = a.out_edges();
  auto comp = strongly_connected_components(a);
  int num_comp = n == 0 ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;

  // Which components can host an accepting cycle meeting every constraint.
  std::vector<char> nontrivial(num_comp, 0), has_accepting(num_comp, 0);
  std::vector<std::vector<char>> state_hit(extra.state_sets.size(),
                                           std::vector<char>(num_comp, 0));
  std::vector<std::vector<char>> trans_hit(extra.transition_sets.size(),
                                           std::vector<char>(num_comp, 0));
  for (TransitionId t = 0; t < a.num_transitions(); ++t) {
    const auto &tr = a.transitions[t];
    if (comp[tr.source] != comp[tr.target]) continue;
    nontrivial[comp[tr.source]] = 1;
    for (std::size_t k = 0; k < extra.transition_sets.size(); ++k)
      if (extra.transition_sets[k][t]) trans_hit[k][comp[tr.source]] = 1;
  }
  for (StateId q = 0; q < n; ++q) {
    if (a.is_accepting(q)) has_accepting[comp[q]] = 1;
    for (std::size_t k = 0; k < extra.state_sets.size(); ++k)
      if (extra.state_sets[k][q]) state_hit[k][comp[q]] = 1;
  }
  auto component_ok = [&](int c) {
    if (!nontrivial[c] || !has_accepting[c]) return false;
    for (const auto &hit : state_hit)
      if (!hit[c]) return false;
    for (const auto &hit : trans_hit)
      if (!hit[c]) return false;
    return true;
  };

  // BFS distances from the initial state.
  std::vector<int> dist(n, unreached);
  std::vector<TransitionId> parent(n, -1);
  std::deque<StateId> queue{a.initial};
  dist[a.initial] = 0;
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    for (TransitionId t : out[q]) {
      StateId r = a.transitions[t].target;
      if (dist[r] != unreached) continue;
      dist[r] = dist[q] + 1;
      parent[r] = t;
      queue.push_back(r);
    }
  }

  // The cycle starts where the prefix enters a suitable component and must
  // pass an accepting state besides the caller's requirements.
  LassoConstraints cycle_goals = extra;
  cycle_goals.state_sets.insert(cycle_goals.state_sets.begin(), a.accepting);

  int best_dist = unreached;
  for (StateId q = 0; q < n; ++q)
    if (dist[q] < best_dist && component_ok(comp[q])) best_dist = dist[q];
  if (best_dist == unreached) return std::nullopt;

  std::optional<Lasso> best;
  constexpr int max_candidates = 256;
  int candidates = 0;
  for (StateId q = 0; q < n && candidates < max_candidates; ++q) {
    if (dist[q] != best_dist || !component_ok(comp[q])) continue;
    ++candidates;
    std::vector<char> in_component(n, 0);
    for (StateId r = 0; r < n; ++r) in_component[r] = comp[r] == comp[q];
    CycleSearch search{a, out, cycle_goals, in_component};
    auto cycle = search.cycle_through(q);
    if (!cycle) continue;
    if (best && best->cycle.size() <= cycle->size()) continue;
    Lasso lasso;
    for (StateId cur = q; cur != a.initial;) {
      TransitionId t = parent[cur];
      lasso.prefix.push_back(t);
      cur = a.transitions[t].source;
    }
    std::reverse(lasso.prefix.begin(), lasso.prefix.end());
    lasso.cycle = std::move(*cycle);
    best = std::move(lasso);
  }
  return best;
}

bool is_valid_lasso(const BuchiAutomaton &a, const Lasso &lasso) {
  if (lasso.cycle.empty()) return false;
  auto valid = [&](TransitionId t) { return t >= 0 && t < a.num_transitions(); };
  StateId cur = a.initial;
  for (TransitionId t : lasso.prefix) {
    if (!valid(t) || a.transitions[t].source != cur) return false;
    cur = a.transitions[t].target;
  }
  StateId start = cur;
  bool accepting = a.is_accepting(cur);
  for (TransitionId t : lasso.cycle) {
    if (!valid(t) || a.transitions[t].source != cur) return false;
    cur = a.transitions[t].target;
    accepting = accepting || a.is_accepting(cur);
  }
  return cur == start && accepting;
}

bool check_lasso_membership(const BuchiAutomaton &a, const UltimatelyPeriodicWord &w) {
  if (w.period.empty()) throw std::invalid_argument("word period must be nonempty");
  if ((w.symbols_used() & ~a.alphabet.universe()) != 0)
    throw alphabet_mismatch("word uses symbols outside the automaton's alphabet");
  for (const auto &t : a.transitions) {
    if (t.label.kind == Label::Kind::services &&
        (t.label.services & ~a.alphabet.universe()) != 0)
      throw alphabet_mismatch("automaton label outside its alphabet");
  }

  // Synchronous product with the lasso-shaped word automaton.
  auto out = a.out_edges();
  BuchiAutomaton product;
  std::map<std::pair<std::size_t, StateId>, StateId> index;
  std::deque<std::pair<std::size_t, StateId>> queue;
  auto intern = [&](std::size_t k, StateId q) {
    auto [it, fresh] = index.emplace(std::make_pair(k, q), product.num_states());
    if (fresh) {
      product.add_state(a.is_accepting(q));
      queue.push_back({k, q});
    }
    return it->second;
  };
  product.initial = intern(0, a.initial);
  while (!queue.empty()) {
    auto [k, q] = queue.front();
    queue.pop_front();
    StateId from = index.at({k, q});
    SymbolSet letter = w.at(k);
    for (TransitionId t : out[q]) {
      const Label &label = a.transitions[t].label;
      bool match = false;
      switch (label.kind) {
        case Label::Kind::guard:
          match = label.guard.admits(letter);
          break;
        case Label::Kind::services:
          match = label.services == letter;
          break;
        case Label::Kind::silent:
          match = false;
          break;
      }
      if (!match) continue;
      StateId to = intern(w.next(k), a.transitions[t].target);
      product.add_transition(from, Label::of_guard({}), to);
    }
  }
  return find_accepting_lasso(product).has_value();
}

BuchiAutomaton restrict_states(const BuchiAutomaton &a, const std::vector<char> &keep) {
  if (!keep.at(a.initial)) throw std::invalid_argument("initial state must be kept");
  BuchiAutomaton r;
  r.alphabet = a.alphabet;
  std::vector<StateId> renumber(a.num_states(), -1);
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (!keep[q]) continue;
    renumber[q] = r.add_state(a.is_accepting(q), a.origin[q]);
  }
  r.initial = renumber[a.initial];
  for (TransitionId t = 0; t < a.num_transitions(); ++t) {
    const auto &tr = a.transitions[t];
    if (renumber[tr.source] < 0 || renumber[tr.target] < 0) continue;
    r.add_transition(renumber[tr.source], tr.label, renumber[tr.target]);
    if (a.has_witnesses()) r.witness.push_back(a.witness[t]);
    if (a.has_dependencies()) r.dependency.push_back(a.dependency[t]);
  }
  return r;
}

BuchiAutomaton prune_non_coaccessible(const BuchiAutomaton &a) {
  std::vector<char> keep(a.num_states(), 0);
  auto in = a.in_edges();
  std::deque<StateId> queue;
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (a.is_accepting(q)) {
      keep[q] = 1;
      queue.push_back(q);
    }
  }
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    for (TransitionId t : in[q]) {
      StateId p = a.transitions[t].source;
      if (!keep[p]) {
        keep[p] = 1;
        queue.push_back(p);
      }
    }
  }
  keep[a.initial] = 1;
  return restrict_states(a, keep);
}

BuchiAutomaton trim_unreachable(const BuchiAutomaton &a) {
  return restrict_states(a, reachable_states(a));
}

BuchiAutomaton merge_duplicate_states(const BuchiAutomaton &a) {
  // Signature: acceptance, sorted outgoing (label, target) and incoming
  // (label, source), self-loops normalized so that looping states compare
  // equal. Members of a class never have edges among each other (the
  // normalization would make their signatures differ), so dropping all but
  // the smallest member is exact.
  constexpr StateId self = -1;
  using Edge = std::pair<Label, StateId>;
  struct Signature {
    bool accepting;
    std::vector<Edge> out, in;
    bool operator<(const Signature &o) const {
      return std::tie(accepting, out, in) < std::tie(o.accepting, o.out, o.in);
    }
  };
  std::vector<Signature> sig(a.num_states());
  for (StateId q = 0; q < a.num_states(); ++q) sig[q].accepting = a.is_accepting(q);
  for (const auto &t : a.transitions) {
    bool loop = t.source == t.target;
    sig[t.source].out.push_back({t.label, loop ? self : t.target});
    sig[t.target].in.push_back({t.label, loop ? self : t.source});
  }
  for (auto &s : sig) {
    std::sort(s.out.begin(), s.out.end());
    s.out.erase(std::unique(s.out.begin(), s.out.end()), s.out.end());
    std::sort(s.in.begin(), s.in.end());
    s.in.erase(std::unique(s.in.begin(), s.in.end()), s.in.end());
  }
  std::map<Signature, StateId> survivor;
  std::vector<char> keep(a.num_states(), 1);
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (q == a.initial) continue;
    auto [it, fresh] = survivor.emplace(sig[q], q);
    if (!fresh) keep[q] = 0;
  }
  if (std::all_of(keep.begin(), keep.end(), [](char k) { return k != 0; })) return a;
  return restrict_states(a, keep);
}

}  // namespace syncplan
