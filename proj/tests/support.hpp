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

#pragma once

#include <random>
#include <string>
#include <vector>

#include "syncplan/agents.hpp"
#include "syncplan/buchi.hpp"
#include "syncplan/formula.hpp"
#include "syncplan/motion.hpp"
#include "syncplan/taskprod.hpp"
#include "syncplan/translate.hpp"

namespace syncplan::testing {

inline Alphabet letters(int n) {
  Alphabet a;
  for (int k = 0; k < n; ++k) a.add(std::string(1, static_cast<char>('a' + k)));
  return a;
}

inline Formula random_formula(std::mt19937 &rng, int depth, int atoms, bool allow_next = true) {
  std::uniform_int_distribution<int> pick(0, 9);
  int choice = depth == 0 ? 0 : pick(rng);
  if (choice == 3 && !allow_next) choice = 4;
  auto atom = [&] {
    int k = std::uniform_int_distribution<int>(0, atoms - 1)(rng);
    return Formula::make_atom(std::string(1, static_cast<char>('a' + k)), k);
  };
  switch (choice) {
    case 0:
    case 1:
      return atom();
    case 2:
      return Formula::unary(Op::negation, random_formula(rng, depth - 1, atoms, allow_next));
    case 3:
      return Formula::unary(Op::next, random_formula(rng, depth - 1, atoms, allow_next));
    case 4:
      return Formula::unary(Op::eventually, random_formula(rng, depth - 1, atoms, allow_next));
    case 5:
      return Formula::unary(Op::always, random_formula(rng, depth - 1, atoms, allow_next));
    case 6:
      return Formula::binary(Op::conjunction, random_formula(rng, depth - 1, atoms, allow_next),
                             random_formula(rng, depth - 1, atoms, allow_next));
    case 7:
      return Formula::binary(Op::disjunction, random_formula(rng, depth - 1, atoms, allow_next),
                             random_formula(rng, depth - 1, atoms, allow_next));
    default:
      return Formula::binary(Op::until, random_formula(rng, depth - 1, atoms, allow_next),
                             random_formula(rng, depth - 1, atoms, allow_next));
  }
}

inline UltimatelyPeriodicWord random_word(std::mt19937 &rng, int atoms, int max_prefix = 5,
                                          int max_period = 5) {
  std::uniform_int_distribution<int> prefix_len(0, max_prefix), period_len(1, max_period);
  std::uniform_int_distribution<SymbolSet> letter(0, (SymbolSet{1} << atoms) - 1);
  UltimatelyPeriodicWord w;
  for (int k = prefix_len(rng); k > 0; --k) w.prefix.push_back(letter(rng));
  for (int k = period_len(rng); k > 0; --k) w.period.push_back(letter(rng));
  return w;
}

// Direct recursive semantics at an unfolded index. From any index every
// folded position recurs within |prefix|+|period| steps, so bounded
// look-ahead over that horizon decides U, F, G and R exactly.
inline bool satisfies(const Formula &f, const UltimatelyPeriodicWord &w, std::size_t i) {
  const std::size_t horizon = w.positions();
  switch (f.op) {
    case Op::atom:
      return contains(w.letter(i), f.atom);
    case Op::top:
      return true;
    case Op::bottom:
      return false;
    case Op::negation:
      return !satisfies(f.lhs(), w, i);
    case Op::conjunction:
      return satisfies(f.lhs(), w, i) && satisfies(f.rhs(), w, i);
    case Op::disjunction:
      return satisfies(f.lhs(), w, i) || satisfies(f.rhs(), w, i);
    case Op::next:
      return satisfies(f.lhs(), w, i + 1);
    case Op::eventually:
      for (std::size_t k = i; k <= i + horizon; ++k)
        if (satisfies(f.lhs(), w, k)) return true;
      return false;
    case Op::always:
      for (std::size_t k = i; k <= i + horizon; ++k)
        if (!satisfies(f.lhs(), w, k)) return false;
      return true;
    case Op::until:
      for (std::size_t k = i; k <= i + horizon; ++k) {
        if (satisfies(f.rhs(), w, k)) return true;
        if (!satisfies(f.lhs(), w, k)) return false;
      }
      return false;
    case Op::release:
      for (std::size_t k = i; k <= i + horizon; ++k) {
        if (!satisfies(f.rhs(), w, k)) return false;
        if (satisfies(f.lhs(), w, k)) return true;
      }
      return true;
  }
  return false;
}

// Random guard-labeled automaton over `atoms` atoms.
inline BuchiAutomaton random_automaton(std::mt19937 &rng, int states, int atoms, double density) {
  BuchiAutomaton a;
  a.alphabet = letters(atoms);
  std::bernoulli_distribution accept(0.3), edge(density);
  std::uniform_int_distribution<int> literal(0, 2);
  for (int k = 0; k < states; ++k) a.add_state(accept(rng));
  for (int p = 0; p < states; ++p) {
    for (int q = 0; q < states; ++q) {
      if (!edge(rng)) continue;
      Guard g;
      for (int x = 0; x < atoms; ++x) {
        int l = literal(rng);
        if (l == 1) g.required |= symbol_bit(x);
        if (l == 2) g.forbidden |= symbol_bit(x);
      }
      a.add_transition(p, Label::of_guard(g), q);
    }
  }
  return a;
}

// Explicit agent over propositions a, b whose actions are silent or provide
// a nonempty subset of `own`. Every state has a stay loop; other actions
// are deterministic with random targets.
inline AgentModel random_agent(std::mt19937 &rng, int id, int states, SymbolSet own,
                               int actions = 3) {
  AgentModel m;
  m.id = id;
  m.name = "agent" + std::to_string(id + 1);
  m.services = own;
  m.ts.propositions = letters(2);
  std::uniform_int_distribution<SymbolSet> label(0, 3);
  std::uniform_int_distribution<int> target(0, states - 1);
  std::bernoulli_distribution present(0.5), silent(0.5);
  for (int s = 0; s < states; ++s) m.ts.add_state("s" + std::to_string(s), label(rng));
  for (int k = 0; k < actions; ++k) {
    std::optional<SymbolSet> provided;
    if (own && !silent(rng)) {
      SymbolSet subset = 0;
      while (subset == 0) subset = std::uniform_int_distribution<SymbolSet>(0, own)(rng) & own;
      provided = subset;
    }
    std::string name = "act" + std::to_string(k);
    m.set_label(name, provided);
    for (int s = 0; s < states; ++s)
      if (present(rng)) m.ts.add_transition(s, name, target(rng));
  }
  add_stay_loops(m);
  m.action_labels.resize(m.ts.actions.size());
  return m;
}

// Non-silent labels along a path, in order.
inline std::vector<SymbolSet> service_sequence(const BuchiAutomaton &a,
                                               const std::vector<TransitionId> &path) {
  std::vector<SymbolSet> out;
  for (TransitionId t : path)
    if (!a.transitions[t].label.is_silent()) out.push_back(a.transitions[t].label.services);
  return out;
}

struct MotionInstance {
  AgentModel agent;
  BuchiAutomaton spec;
};

// Random agent with up to three services and a random motion formula whose
// product has at most `max_states` states.
inline MotionInstance random_motion_instance(std::mt19937 &rng, int max_states = 12) {
  while (true) {
    int states = std::uniform_int_distribution<int>(1, 6)(rng);
    auto agent = random_agent(rng, 0, states, 0b111);
    auto props = agent.ts.propositions;
    auto spec = translate(random_formula(rng, 2, 2, false), props);
    if (build_motion_product(agent, spec).automaton.num_states() <= max_states)
      return {std::move(agent), std::move(spec)};
  }
}

inline TaskMotionProduct build_task_product(const Scenario &scenario, int agent) {
  const auto &model = scenario.agents[agent];
  const auto &props = model.ts.propositions;
  auto motion = reduce(build_motion_product(
      model, translate(parse(scenario.motion_formulas[agent], props), props)));
  auto task = translate(parse(scenario.task_formulas[agent], scenario.services), scenario.services);
  auto tm = build_task_motion_product(motion, task, scenario, agent);
  compute_dep(tm);
  return tm;
}

// Agent 0 provides a and b, agent 1 provides c.
inline Scenario random_pair(std::mt19937 &rng) {
  Scenario s;
  s.services = letters(3);
  s.agents.push_back(random_agent(rng, 0, std::uniform_int_distribution<int>(1, 4)(rng), 0b011));
  s.agents.push_back(random_agent(rng, 1, std::uniform_int_distribution<int>(1, 3)(rng), 0b100));
  for (int i = 0; i < 2; ++i) {
    s.motion_formulas.push_back(to_string(random_formula(rng, 1, 2, false)));
    s.task_formulas.push_back(to_string(random_formula(rng, 2, 3)));
  }
  return s;
}

// Non-silent labels of the path's transitions leaving states marked in
// `from`.
inline std::vector<SymbolSet> service_sequence_from(const BuchiAutomaton &a,
                                                    const std::vector<TransitionId> &path,
                                                    const std::vector<char> &from) {
  std::vector<SymbolSet> out;
  for (TransitionId t : path) {
    const auto &tr = a.transitions[t];
    if (from[tr.source] && !tr.label.is_silent()) out.push_back(tr.label.services);
  }
  return out;
}

}  // namespace syncplan::testing
