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

#include "syncplan/taskprod.hpp"

#include <deque>
#include <map>

namespace syncplan {
namespace {

std::vector<char> idle_tails(const BuchiAutomaton &task) {
  std::vector<char> out(task.num_states(), 0);
  BuchiAutomaton idle;
  idle.alphabet = task.alphabet;
  for (StateId q = 0; q < task.num_states(); ++q) idle.add_state(task.is_accepting(q));
  for (const auto &t : task.transitions)
    if (t.label.kind == Label::Kind::guard && t.label.guard.admits(0))
      idle.add_transition(t.source, t.label, t.target);
  for (StateId q = 0; q < task.num_states(); ++q) {
    idle.initial = q;
    out[q] = find_accepting_lasso(idle).has_value();
  }
  return out;
}

}  // namespace

void TaskMotionProduct::index_transitions() {
  index_.clear();
  for (const auto &t : automaton.transitions)
    if (t.label.kind == Label::Kind::services) index_.insert({t.source, t.label.services, t.target});
}

TaskMotionProduct build_task_motion_product(const ReducedMotionProduct &motion,
                                            const BuchiAutomaton &task, const Scenario &scenario,
                                            int agent) {
  TaskMotionProduct tm;
  tm.agent = agent;
  tm.own_services = scenario.agents.at(agent).services;
  tm.service_owner = scenario.service_owners();
  tm.automaton.alphabet = scenario.services;
  tm.idle_tail_accepted = idle_tails(task);
  const SymbolSet foreign = scenario.services.universe() & ~tm.own_services;
  if (count(foreign) > max_foreign_services)
    throw std::length_error("too many foreign services to enumerate");

  // Subsets of the foreign services, ascending.
  std::vector<SymbolSet> extras;
  for (SymbolSet x = 0;; x = (x - foreign) & foreign) {
    extras.push_back(x);
    if (x == foreign) break;
  }

  const BuchiAutomaton &m = motion.automaton;
  auto m_out = m.out_edges();
  auto task_out = task.out_edges();
  std::map<std::tuple<StateId, StateId, int>, StateId> index;
  std::deque<TaskMotionState> queue;
  auto intern = [&](StateId q1, StateId q2, int j) {
    auto [it, fresh] = index.emplace(std::make_tuple(q1, q2, j), tm.automaton.num_states());
    if (fresh) {
      tm.automaton.add_state(j == 2 && task.is_accepting(q2));
      tm.states.push_back({q1, q2, j});
      queue.push_back({q1, q2, j});
    }
    return it->second;
  };
  auto next_counter = [&](int j, StateId q1, StateId q2) {
    if (j == 1 && m.is_accepting(q1)) return 2;
    if (j == 2 && task.is_accepting(q2)) return 3;
    if (j == 3) return 1;
    return j;
  };

  tm.automaton.initial = intern(m.initial, task.initial, 1);
  std::set<std::tuple<StateId, Label, StateId>> seen;
  while (!queue.empty()) {
    auto [q1, q2, j] = queue.front();
    queue.pop_front();
    StateId from = index.at({q1, q2, j});
    for (TransitionId mt : m_out[q1]) {
      const auto &move = m.transitions[mt];
      if (move.label.is_silent()) {
        StateId to = intern(move.target, q2, next_counter(j, move.target, q2));
        if (!seen.insert({from, move.label, to}).second) continue;
        tm.automaton.add_transition(from, move.label, to);
        tm.motion_transition.push_back(mt);
        tm.task_transition.push_back(-1);
        continue;
      }
      for (SymbolSet x : extras) {
        SymbolSet sigma = move.label.services | x;
        for (TransitionId tt : task_out[q2]) {
          const auto &edge = task.transitions[tt];
          if (!edge.label.guard.admits(sigma)) continue;
          StateId to = intern(move.target, edge.target, next_counter(j, move.target, edge.target));
          Label label = Label::of_services(sigma);
          if (!seen.insert({from, label, to}).second) continue;
          tm.automaton.add_transition(from, label, to);
          tm.motion_transition.push_back(mt);
          tm.task_transition.push_back(tt);
        }
      }
    }
  }
  tm.index_transitions();
  return tm;
}

bool compute_assisting(const TaskMotionProduct &tm, TransitionId t, int service) {
  if (contains(tm.own_services, service))
    throw std::invalid_argument("assisting is defined for foreign services only");
  const auto &tr = tm.automaton.transitions.at(t);
  if (tr.label.is_silent()) return false;
  SymbolSet with = tr.label.services | symbol_bit(service);
  SymbolSet without = tr.label.services & ~symbol_bit(service);
  return tm.has_transition(tr.source, with, tr.target) !=
         tm.has_transition(tr.source, without, tr.target);
}

const std::vector<AgentSet> &compute_dep(TaskMotionProduct &tm) {
  auto &dep = tm.automaton.dependency;
  dep.assign(tm.automaton.num_transitions(), agent_bit(tm.agent));
  const int services = static_cast<int>(tm.service_owner.size());
  for (TransitionId t = 0; t < tm.automaton.num_transitions(); ++t) {
    if (tm.automaton.transitions[t].label.is_silent()) continue;
    for (int s = 0; s < services; ++s) {
      int owner = tm.service_owner[s];
      if (owner < 0 || owner == tm.agent || (dep[t] & agent_bit(owner))) continue;
      if (compute_assisting(tm, t, s)) dep[t] |= agent_bit(owner);
    }
  }
  return dep;
}

std::vector<SymbolSet> compute_globally_assisting(const std::vector<TaskMotionProduct> &all,
                                                  int agents) {
  std::vector<SymbolSet> result(agents, 0);
  for (const auto &tm : all) {
    const int services = static_cast<int>(tm.service_owner.size());
    for (TransitionId t = 0; t < tm.automaton.num_transitions(); ++t) {
      if (tm.automaton.transitions[t].label.is_silent()) continue;
      for (int s = 0; s < services; ++s) {
        int owner = tm.service_owner[s];
        if (owner < 0 || owner == tm.agent || contains(result[owner], s)) continue;
        if (compute_assisting(tm, t, s)) result[owner] |= symbol_bit(s);
      }
    }
  }
  return result;
}

std::vector<char> classify_task_significance(const TaskMotionProduct &tm,
                                             SymbolSet globally_assisting) {
  const auto &a = tm.automaton;
  if (a.dependency.size() != a.transitions.size())
    throw std::logic_error("compute_dep must run first");
  std::vector<char> significant(a.num_states(), 0);
  if (a.num_states() > 0) significant[a.initial] = 1;
  for (TransitionId t = 0; t < a.num_transitions(); ++t) {
    const auto &tr = a.transitions[t];
    bool assists = !tr.label.is_silent() &&
                   (tr.label.services & tm.own_services & globally_assisting) != 0;
    if (assists || a.dependency[t] != agent_bit(tm.agent)) significant[tr.source] = 1;
  }
  return significant;
}

ReducedTaskMotionProduct reduce_task_motion(const TaskMotionProduct &tm,
                                            const std::vector<SymbolSet> &globally_assisting) {
  ReducedTaskMotionProduct r;
  r.agent = tm.agent;
  r.globally_assisting = globally_assisting.at(tm.agent);
  r.significant = classify_task_significance(tm, r.globally_assisting);

  // Outgoing transitions of insignificant states become silent. Of the
  // variants collapsing onto one silent edge, the one with the fewest
  // foreign services is kept as witness.
  const auto &a = tm.automaton;
  BuchiAutomaton relabeled;
  relabeled.alphabet = a.alphabet;
  for (StateId q = 0; q < a.num_states(); ++q) relabeled.add_state(a.is_accepting(q), q);
  relabeled.initial = a.initial;
  std::map<std::pair<StateId, StateId>, TransitionId> silenced;
  std::vector<TransitionId> original;
  auto foreign_count = [&](TransitionId t) {
    const auto &label = a.transitions[t].label;
    return label.is_silent() ? 0 : count(label.services & ~tm.own_services);
  };
  for (TransitionId t = 0; t < a.num_transitions(); ++t) {
    const auto &tr = a.transitions[t];
    if (r.significant[tr.source]) {
      relabeled.add_transition(tr.source, tr.label, tr.target);
      relabeled.dependency.push_back(a.dependency[t]);
      original.push_back(t);
      continue;
    }
    auto [it, fresh] = silenced.emplace(std::make_pair(tr.source, tr.target), relabeled.num_transitions());
    if (fresh) {
      relabeled.add_transition(tr.source, Label::silent(tm.agent), tr.target);
      relabeled.dependency.push_back(agent_bit(tm.agent));
      original.push_back(t);
    } else if (foreign_count(t) < foreign_count(original[it->second])) {
      original[it->second] = t;
    }
  }

  r.automaton = eliminate_insignificant(relabeled, r.significant, &r.report);
  for (auto &w : r.automaton.witness)
    for (auto &t : w) t = original[t];
  return r;
}

}  // namespace syncplan
