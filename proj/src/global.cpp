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

#include "syncplan/global.hpp"

#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace syncplan {
namespace {

struct LocalIndex {
  // Non-silent transitions per state and label, silent transitions per state.
  std::vector<std::map<SymbolSet, std::vector<TransitionId>>> joint;
  std::vector<std::vector<TransitionId>> silent;

  explicit LocalIndex(const BuchiAutomaton &a) : joint(a.num_states()), silent(a.num_states()) {
    for (TransitionId t = 0; t < a.num_transitions(); ++t) {
      const auto &tr = a.transitions[t];
      if (tr.label.is_silent())
        silent[tr.source].push_back(t);
      else
        joint[tr.source][tr.label.services].push_back(t);
    }
  }
};

}  // namespace

GlobalProduct build_global_product(const std::vector<AgentArtifacts> &artifacts,
                                   const std::vector<int> &members,
                                   const std::vector<int> &service_owner,
                                   std::size_t state_cap) {
  GlobalProduct gp;
  gp.members = members;
  const int width = static_cast<int>(members.size());
  if (width == 0) throw std::invalid_argument("global product needs at least one agent");
  std::vector<const BuchiAutomaton *> local;
  std::vector<LocalIndex> index;
  std::vector<int> position(max_agents, -1);
  for (int k = 0; k < width; ++k) {
    local.push_back(&artifacts.at(members[k]).reduced_task.automaton);
    index.emplace_back(*local.back());
    position.at(members[k]) = k;
  }
  if (!artifacts.empty()) gp.automaton.alphabet = local[0]->alphabet;
  AgentSet member_set = 0;
  for (int a : members) member_set |= agent_bit(a);

  auto owners_of = [&](SymbolSet sigma) -> std::optional<AgentSet> {
    AgentSet owners = 0;
    bool known = true;
    for_each_member(sigma, [&](int s) {
      if (s >= static_cast<int>(service_owner.size()) || service_owner[s] < 0)
        known = false;
      else
        owners |= agent_bit(service_owner[s]);
    });
    if (!known) return std::nullopt;
    return owners;
  };

  using Key = std::pair<std::vector<StateId>, int>;
  std::map<Key, StateId> ids;
  std::deque<StateId> queue;
  auto intern = [&](const std::vector<StateId> &locals, int counter) {
    auto [it, fresh] = ids.emplace(Key{locals, counter}, gp.automaton.num_states());
    if (fresh) {
      if (static_cast<std::size_t>(gp.automaton.num_states()) >= state_cap)
        throw std::length_error("global product exceeds the state cap");
      bool accept = counter == width && local[width - 1]->is_accepting(locals[width - 1]);
      gp.automaton.add_state(accept);
      gp.locals.insert(gp.locals.end(), locals.begin(), locals.end());
      gp.counters.push_back(counter);
      queue.push_back(it->second);
    }
    return it->second;
  };
  auto next_counter = [&](int counter, const std::vector<TransitionId> &chosen) {
    if (counter == width + 1) return 1;
    TransitionId t = chosen[counter - 1];
    if (t >= 0 && local[counter - 1]->is_accepting(local[counter - 1]->transitions[t].target))
      return counter + 1;
    return counter;
  };

  std::vector<StateId> start(width);
  for (int k = 0; k < width; ++k) start[k] = local[k]->initial;
  gp.automaton.initial = intern(start, 1);

  std::set<std::tuple<StateId, Label, StateId, AgentSet>> seen;
  auto emit = [&](StateId from, const Label &label, AgentSet coalition,
                  const std::vector<TransitionId> &chosen) {
    std::vector<StateId> locals(gp.locals.begin() + from * width,
                                gp.locals.begin() + (from + 1) * width);
    for (int k = 0; k < width; ++k)
      if (chosen[k] >= 0) locals[k] = local[k]->transitions[chosen[k]].target;
    int counter = next_counter(gp.counters[from], chosen);
    StateId to = intern(locals, counter);
    if (!seen.insert({from, label, to, coalition}).second) return;
    gp.automaton.add_transition(from, label, to);
    gp.automaton.dependency.push_back(coalition);
    gp.moves.insert(gp.moves.end(), chosen.begin(), chosen.end());
  };

  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    std::vector<StateId> here(gp.locals.begin() + q * width, gp.locals.begin() + (q + 1) * width);

    for (int k = 0; k < width; ++k) {
      for (TransitionId t : index[k].silent[here[k]]) {
        std::vector<TransitionId> chosen(width, -1);
        chosen[k] = t;
        emit(q, Label::silent(members[k]), agent_bit(members[k]), chosen);
      }
    }

    // Joint moves: close the coalition under the owners of the label's
    // services and the members' dependency sets.
    std::set<std::vector<TransitionId>> done;
    for (int k = 0; k < width; ++k) {
      for (const auto &[sigma, seeds] : index[k].joint[here[k]]) {
        auto owners = owners_of(sigma);
        if (!owners || (*owners & ~member_set)) continue;
        for (TransitionId seed : seeds) {
          std::vector<TransitionId> chosen(width, -1);
          chosen[k] = seed;
          auto close = [&](auto &self, AgentSet coalition, AgentSet required) -> void {
            AgentSet missing = required & ~coalition;
            if (missing & ~member_set) return;
            if (missing == 0) {
              if (done.insert(chosen).second) emit(q, Label::of_services(sigma), coalition, chosen);
              return;
            }
            int agent = std::countr_zero(missing);
            int a = position[agent];
            auto it = index[a].joint[here[a]].find(sigma);
            if (it == index[a].joint[here[a]].end()) return;
            for (TransitionId t : it->second) {
              chosen[a] = t;
              self(self, coalition | agent_bit(agent), required | local[a]->dependency[t]);
            }
            chosen[a] = -1;
          };
          close(close, agent_bit(members[k]), *owners | local[k]->dependency[seed]);
        }
      }
    }
  }
  return gp;
}

LassoConstraints GlobalProduct::fairness(const std::vector<AgentArtifacts> &artifacts) const {
  LassoConstraints c;
  std::vector<char> wrapped(automaton.num_states(), 0);
  for (StateId q = 0; q < automaton.num_states(); ++q) wrapped[q] = counters[q] == width() + 1;
  c.state_sets.push_back(std::move(wrapped));

  for (int k = 0; k < width(); ++k) {
    const int agent = members[k];
    const auto &reduced = artifacts.at(agent).reduced_task.automaton;
    const auto &tm = artifacts.at(agent).task_motion;
    const auto &full = tm.automaton;
    // A local move is productive when it provides one of the agent's
    // services, or when the agent may stop providing services for good:
    // silent moves leave the task state unchanged, so an all-silent cycle
    // is sound only where the task automaton accepts the empty set forever.
    std::vector<char> productive(reduced.num_transitions(), 0);
    for (TransitionId t = 0; t < reduced.num_transitions(); ++t) {
      const auto &tr = reduced.transitions[t];
      if (tm.idle_tail_accepted[tm.states[reduced.origin[tr.source]].task]) productive[t] = 1;
      for (TransitionId w : reduced.witness[t])
        if (!full.transitions[w].label.is_silent()) productive[t] = 1;
    }
    std::vector<char> set(automaton.num_transitions(), 0);
    for (TransitionId t = 0; t < automaton.num_transitions(); ++t) {
      TransitionId mine = move(t, k);
      if (mine < 0) continue;
      set[t] = !automaton.transitions[t].label.is_silent() || productive[mine];
    }
    c.transition_sets.push_back(std::move(set));
  }
  return c;
}

std::optional<Lasso> find_global_lasso(const GlobalProduct &gp,
                                       const std::vector<AgentArtifacts> &artifacts) {
  return find_accepting_lasso(gp.automaton, gp.fairness(artifacts));
}

namespace {

struct Step {
  TransitionId transition;
  AgentSet sync;
};

// Replaces each step by the witness path of its transition; the first
// element keeps the synchronization, the rest are solo.
std::vector<Step> expand(const std::vector<Step> &steps, const BuchiAutomaton &reduced,
                         AgentSet solo) {
  std::vector<Step> out;
  for (const auto &s : steps) {
    const auto &w = reduced.witness.at(s.transition);
    for (std::size_t k = 0; k < w.size(); ++k) out.push_back({w[k], k == 0 ? s.sync : solo});
  }
  return out;
}

}  // namespace

std::vector<Strategy> synthesize(const GlobalProduct &gp, const Lasso &lasso,
                                 const std::vector<AgentArtifacts> &artifacts) {
  std::vector<Strategy> result;
  for (int k = 0; k < gp.width(); ++k) {
    const int agent = gp.members[k];
    const AgentSet solo = agent_bit(agent);
    const auto &art = artifacts.at(agent);
    auto project = [&](const std::vector<TransitionId> &part) {
      // (i) steps of the global run that involve the agent
      std::vector<Step> steps;
      for (TransitionId t : part) {
        AgentSet coalition = gp.automaton.dependency[t];
        if (!(coalition & solo)) continue;
        if (gp.move(t, k) < 0) throw std::logic_error("coalition member does not move");
        steps.push_back({gp.move(t, k), coalition});
      }
      // (ii) down to the task-and-motion product
      steps = expand(steps, art.reduced_task.automaton, solo);
      // (iii) drop the task component
      for (auto &s : steps) s.transition = art.task_motion.motion_transition.at(s.transition);
      // (iv) down to the motion product
      steps = expand(steps, art.reduced_motion.automaton, solo);
      // (v) transition system states and actions
      std::vector<StrategyStep> out;
      for (const auto &s : steps) {
        const auto &tr = art.motion.automaton.transitions.at(s.transition);
        out.push_back({art.motion.states.at(tr.source).first, art.motion.actions.at(s.transition),
                       s.sync});
      }
      return out;
    };
    Strategy strategy;
    strategy.agent = agent;
    strategy.prefix = project(lasso.prefix);
    strategy.cycle = project(lasso.cycle);
    if (strategy.cycle.empty())
      throw std::logic_error("agent " + std::to_string(agent + 1) + " has an empty cycle");
    result.push_back(std::move(strategy));
  }
  return result;
}

std::vector<Strategy> synthesize(const GlobalProduct &gp,
                                 const std::vector<AgentArtifacts> &artifacts) {
  auto lasso = find_global_lasso(gp, artifacts);
  if (!lasso) throw emptiness_error("global", -1, "the global product has no accepting run");
  return synthesize(gp, *lasso, artifacts);
}

std::vector<Strategy> minimize_synchronizations(std::vector<Strategy> strategies,
                                                const Scenario &scenario) {
  for (auto &s : strategies) {
    const auto &agent = scenario.agents.at(s.agent);
    auto stay = agent.ts.actions.find(agent.stay_action);
    if (!stay) continue;
    auto idle = [&](const StrategyStep &step) {
      return step.action == *stay && step.sync == agent_bit(s.agent);
    };
    std::erase_if(s.prefix, idle);
    std::vector<StrategyStep> kept;
    for (const auto &step : s.cycle)
      if (!idle(step)) kept.push_back(step);
    if (kept.empty() && !s.cycle.empty()) kept.push_back(s.cycle.front());
    s.cycle = std::move(kept);
  }

  // Coalition events are matched by their order of occurrence, separately
  // in prefixes and cycles.
  auto downgrade = [&](auto part) {
    std::map<AgentSet, std::map<int, std::vector<StrategyStep *>>> events;
    for (auto &s : strategies)
      for (auto &step : s.*part)
        if (step.sync != agent_bit(s.agent)) events[step.sync][s.agent].push_back(&step);
    for (auto &[coalition, per_agent] : events) {
      std::size_t occurrences = SIZE_MAX;
      for (auto &[agent, list] : per_agent) occurrences = std::min(occurrences, list.size());
      if (static_cast<int>(per_agent.size()) != count(coalition)) continue;
      for (std::size_t n = 0; n < occurrences; ++n) {
        bool all_silent = true;
        for (auto &[agent, list] : per_agent)
          all_silent = all_silent && scenario.agents[agent].is_silent(list[n]->action);
        if (!all_silent) continue;
        for (auto &[agent, list] : per_agent) list[n]->sync = agent_bit(agent);
      }
    }
  };
  downgrade(&Strategy::prefix);
  downgrade(&Strategy::cycle);
  return strategies;
}

std::vector<std::vector<int>> compute_dependency_classes(
    const std::vector<TaskMotionProduct> &products, int agents) {
  std::vector<int> parent(agents);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto &tm : products) {
    AgentSet all = 0;
    for (AgentSet d : tm.automaton.dependency) all |= d;
    for_each_member(all, [&](int other) {
      int a = find(tm.agent), b = find(other);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    });
  }
  std::map<int, std::vector<int>> classes;
  for (int i = 0; i < agents; ++i) classes[find(i)].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto &[root, list] : classes) out.push_back(std::move(list));
  return out;
}

}  // namespace syncplan
