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

#include "syncplan/motion.hpp"

#include <deque>
#include <map>
#include <set>
#include <tuple>

namespace syncplan {

MotionProduct build_motion_product(const AgentModel &agent, const BuchiAutomaton &spec,
                                   const Alphabet &services) {
  MotionProduct p;
  p.automaton.alphabet = services;
  const auto &ts = agent.ts;
  auto ts_out = ts.out_edges();
  auto spec_out = spec.out_edges();
  std::map<std::pair<TsState, StateId>, StateId> index;
  std::deque<std::pair<TsState, StateId>> queue;
  auto intern = [&](TsState s, StateId q) {
    auto [it, fresh] = index.emplace(std::make_pair(s, q), p.automaton.num_states());
    if (fresh) {
      p.automaton.add_state(spec.is_accepting(q));
      p.states.push_back({s, q});
      queue.push_back({s, q});
    }
    return it->second;
  };
  if (spec.num_states() == 0) throw std::invalid_argument("motion automaton has no states");
  p.automaton.initial = intern(ts.initial, spec.initial);
  std::set<std::tuple<StateId, Label, StateId>> seen;
  while (!queue.empty()) {
    auto [s, q] = queue.front();
    queue.pop_front();
    StateId from = index.at({s, q});
    for (int k : ts_out[s]) {
      const auto &move = ts.transitions[k];
      Label label = agent.label_of(move.action);
      for (TransitionId t : spec_out[q]) {
        const auto &edge = spec.transitions[t];
        if (edge.label.kind != Label::Kind::guard)
          throw std::invalid_argument("motion automaton must be guard labeled");
        if (!edge.label.guard.admits(ts.labels[s])) continue;
        StateId to = intern(move.target, edge.target);
        if (!seen.insert({from, label, to}).second) continue;
        p.automaton.add_transition(from, label, to);
        p.actions.push_back(move.action);
      }
    }
  }
  return p;
}

std::vector<char> classify_significance(const BuchiAutomaton &product) {
  std::vector<char> significant(product.num_states(), 0);
  if (product.num_states() > 0) significant[product.initial] = 1;
  for (const auto &t : product.transitions)
    if (!t.label.is_silent()) significant[t.source] = 1;
  return significant;
}

ReducedMotionProduct reduce(const MotionProduct &product) {
  ReducedMotionProduct r;
  r.significant = classify_significance(product.automaton);
  r.automaton = eliminate_insignificant(product.automaton, r.significant, &r.report);
  return r;
}

}  // namespace syncplan
