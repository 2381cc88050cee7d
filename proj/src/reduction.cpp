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

#include "syncplan/reduction.hpp"

#include <deque>
#include <map>
#include <tuple>

namespace syncplan {
namespace {

struct Edge {
  StateId source;
  Label label;
  StateId target;
  std::vector<TransitionId> witness;
  AgentSet dependency;
  bool alive = true;
};

class WorkGraph {
 public:
  explicit WorkGraph(const BuchiAutomaton &a)
      : out_(a.num_states()), in_(a.num_states()), present_(a.num_states(), 1) {
    for (TransitionId t = 0; t < a.num_transitions(); ++t) {
      const auto &tr = a.transitions[t];
      add(tr.source, tr.label, tr.target, {t}, a.has_dependencies() ? a.dependency[t] : 0);
    }
  }

  void add(StateId source, const Label &label, StateId target,
           std::vector<TransitionId> witness, AgentSet dependency) {
    auto key = std::make_tuple(source, label, target, dependency);
    auto it = index_.find(key);
    if (it != index_.end()) {
      Edge &existing = edges_[it->second];
      if (existing.alive && existing.witness.size() <= witness.size()) return;
      if (existing.alive) {
        existing.witness = std::move(witness);
        return;
      }
    }
    int id = static_cast<int>(edges_.size());
    edges_.push_back({source, label, target, std::move(witness), dependency});
    index_[key] = id;
    out_[source].push_back(id);
    in_[target].push_back(id);
  }

  std::vector<int> live_out(StateId q) const { return live(out_[q]); }
  std::vector<int> live_in(StateId q) const { return live(in_[q]); }
  const Edge &edge(int id) const { return edges_[id]; }
  bool present(StateId q) const { return present_[q] != 0; }

  void remove_state(StateId q) {
    present_[q] = 0;
    for (int e : out_[q]) edges_[e].alive = false;
    for (int e : in_[q]) edges_[e].alive = false;
  }

  // Shortest silent path from `from` to `to`, avoiding `avoid`, as edge ids.
  std::optional<std::vector<int>> silent_path(StateId from, StateId to, StateId avoid) const {
    std::map<StateId, int> parent;
    std::deque<StateId> queue{from};
    parent[from] = -1;
    while (!queue.empty()) {
      StateId q = queue.front();
      queue.pop_front();
      if (q == to) {
        std::vector<int> path;
        for (StateId cur = to; parent.at(cur) >= 0; cur = edges_[parent.at(cur)].source)
          path.insert(path.begin(), parent.at(cur));
        return path;
      }
      for (int e : live_out(q)) {
        const Edge &edge = edges_[e];
        if (!edge.label.is_silent() || edge.target == avoid) continue;
        if (parent.emplace(edge.target, e).second) queue.push_back(edge.target);
      }
    }
    return std::nullopt;
  }

  int num_edges() const { return static_cast<int>(edges_.size()); }

 private:
  std::vector<int> live(const std::vector<int> &ids) const {
    std::vector<int> out;
    for (int e : ids)
      if (edges_[e].alive) out.push_back(e);
    return out;
  }

  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_, in_;
  std::vector<char> present_;
  std::map<std::tuple<StateId, Label, StateId, AgentSet>, int> index_;
};

std::vector<TransitionId> concat(std::vector<TransitionId> a, const std::vector<TransitionId> &b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

BuchiAutomaton eliminate_insignificant(const BuchiAutomaton &source,
                                       const std::vector<char> &significant,
                                       ReductionReport *report) {
  ReductionReport local;
  ReductionReport &stats = report ? *report : local;
  WorkGraph g(source);
  const int n = source.num_states();

  for (StateId p = 0; p < n; ++p) {
    if (significant[p] || source.is_accepting(p) || p == source.initial) continue;
    auto in = g.live_in(p), out = g.live_out(p);
    g.remove_state(p);
    for (int ei : in) {
      const Edge head = g.edge(ei);
      if (head.source == p) continue;
      for (int eo : out) {
        const Edge &tail = g.edge(eo);
        if (tail.target == p) continue;
        if (!tail.label.is_silent())
          throw std::logic_error("insignificant state with a non-silent outgoing transition");
        g.add(head.source, head.label, tail.target, concat(head.witness, tail.witness),
              head.dependency);
      }
    }
    ++stats.removed_plain;
  }

  for (StateId p = 0; p < n; ++p) {
    if (significant[p] || !source.is_accepting(p) || p == source.initial || !g.present(p))
      continue;
    auto in = g.live_in(p), out = g.live_out(p);
    bool all_insignificant = true;
    for (int e : in) {
      StateId q = g.edge(e).source;
      if (q != p && (significant[q] || q == source.initial)) all_insignificant = false;
    }
    if (!all_insignificant) continue;

    std::optional<int> self_loop;
    for (int e : out)
      if (g.edge(e).target == p && g.edge(e).label.is_silent()) self_loop = e;

    // Each lifted loop must expand to a closed path of the source, so it
    // travels q -> p, loops at p, and returns silently to q.
    struct Lift {
      StateId at;
      std::vector<TransitionId> witness;
      AgentSet dependency;
    };
    std::vector<Lift> lifts;
    bool liftable = true;
    if (self_loop) {
      for (int e : in) {
        const Edge &enter = g.edge(e);
        if (enter.source == p || !enter.label.is_silent()) continue;
        auto back = g.silent_path(p, enter.source, -1);
        if (!back) {
          liftable = false;
          break;
        }
        auto witness = concat(enter.witness, g.edge(*self_loop).witness);
        for (int b : *back) witness = concat(std::move(witness), g.edge(b).witness);
        lifts.push_back({enter.source, std::move(witness), enter.dependency});
      }
    }
    if (!liftable) {
      ++stats.kept_accepting;
      continue;
    }
    std::vector<std::pair<Edge, Edge>> bypasses;
    for (int ei : in) {
      const Edge &head = g.edge(ei);
      if (head.source == p || !head.label.is_silent()) continue;
      for (int eo : out) {
        const Edge &tail = g.edge(eo);
        if (tail.target == p || !tail.label.is_silent()) continue;
        bypasses.push_back({head, tail});
      }
    }
    g.remove_state(p);
    for (auto &lift : lifts) {
      g.add(lift.at, Label::silent(g.edge(*self_loop).label.owner), lift.at,
            std::move(lift.witness), lift.dependency);
      ++stats.lifted_loops;
    }
    for (const auto &[head, tail] : bypasses)
      g.add(head.source, head.label, tail.target, concat(head.witness, tail.witness),
            head.dependency);
    ++stats.removed_accepting;
  }

  BuchiAutomaton reduced;
  reduced.alphabet = source.alphabet;
  std::vector<StateId> renumber(n, -1);
  for (StateId q = 0; q < n; ++q)
    if (g.present(q)) renumber[q] = reduced.add_state(source.is_accepting(q), q);
  reduced.initial = renumber[source.initial];
  for (int e = 0; e < g.num_edges(); ++e) {
    const Edge &edge = g.edge(e);
    if (!edge.alive) continue;
    reduced.add_transition(renumber[edge.source], edge.label, renumber[edge.target]);
    reduced.witness.push_back(edge.witness);
    if (source.has_dependencies()) reduced.dependency.push_back(edge.dependency);
  }
  return merge_duplicate_states(prune_non_coaccessible(trim_unreachable(reduced)));
}

std::vector<TransitionId> expand_witnesses(const BuchiAutomaton &reduced,
                                           const std::vector<TransitionId> &path) {
  std::vector<TransitionId> out;
  for (TransitionId t : path)
    out.insert(out.end(), reduced.witness.at(t).begin(), reduced.witness.at(t).end());
  return out;
}

}  // namespace syncplan
