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

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "syncplan/symbols.hpp"
#include "syncplan/word.hpp"

namespace syncplan {

using StateId = int;
using TransitionId = int;

// Conjunction of literals over an alphabet. The empty cube is `true`.
struct Guard {
  SymbolSet required = 0;
  SymbolSet forbidden = 0;

  bool admits(SymbolSet letter) const {
    return (letter & required) == required && (letter & forbidden) == 0;
  }
  auto operator<=>(const Guard &) const = default;
};

// A transition label is either a propositional guard (specification
// automata), a concrete service set, or the silent set of one agent.
struct Label {
  enum class Kind : std::uint8_t { guard, services, silent };

  Kind kind = Kind::guard;
  Guard guard;
  SymbolSet services = 0;
  int owner = -1;  // silent labels only

  static Label of_guard(Guard g) { return {Kind::guard, g, 0, -1}; }
  static Label of_services(SymbolSet s) { return {Kind::services, {}, s, -1}; }
  static Label silent(int agent) { return {Kind::silent, {}, 0, agent}; }

  bool is_silent() const { return kind == Kind::silent; }
  auto operator<=>(const Label &) const = default;
};

struct Transition {
  StateId source = 0;
  Label label;
  StateId target = 0;
};

// Explicit-state Buchi automaton. Besides Q, q_init, delta and F it carries
// annotation slots that rebuild operations keep in sync:
//   origin[q]      - the state of a source automaton q stands for
//   witness[t]     - the path of source transitions t abbreviates
//   dependency[t]  - agents that must synchronize to take t
// `witness` and `dependency` are either empty or parallel to `transitions`.
struct BuchiAutomaton {
  StateId initial = 0;
  std::vector<char> accepting;
  std::vector<Transition> transitions;
  std::vector<StateId> origin;
  std::vector<std::vector<TransitionId>> witness;
  std::vector<AgentSet> dependency;
  Alphabet alphabet;  // names for guard / service-set text

  int num_states() const { return static_cast<int>(accepting.size()); }
  int num_transitions() const { return static_cast<int>(transitions.size()); }
  bool is_accepting(StateId q) const { return accepting[q] != 0; }

  StateId add_state(bool accept, StateId from = -1);
  TransitionId add_transition(StateId source, Label label, StateId target);

  bool has_witnesses() const { return !witness.empty(); }
  bool has_dependencies() const { return !dependency.empty(); }

  // Outgoing / incoming transition ids per state, in id order.
  std::vector<std::vector<TransitionId>> out_edges() const;
  std::vector<std::vector<TransitionId>> in_edges() const;

  // Throws std::logic_error when an invariant is broken.
  void check() const;
};

std::string format_label(const Label &label, const Alphabet &alphabet);

// Finite representation of an accepting run.
struct Lasso {
  std::vector<TransitionId> prefix;
  std::vector<TransitionId> cycle;
};

// Extra conditions an accepting cycle has to meet: it must pass through at
// least one state of every state set and take at least one transition of
// every transition set (generalized Buchi acceptance).
struct LassoConstraints {
  std::vector<std::vector<char>> state_sets;
  std::vector<std::vector<char>> transition_sets;
};

// Shortest prefix first, then shortest cycle, then smallest state id.
std::optional<Lasso> find_accepting_lasso(const BuchiAutomaton &a,
                                          const LassoConstraints &extra = {});

// Checks that the lasso is a path from the initial state whose cycle is
// closed and visits an accepting state.
bool is_valid_lasso(const BuchiAutomaton &a, const Lasso &lasso);

// Strongly connected components (Tarjan); component ids are in reverse
// topological order.
std::vector<int> strongly_connected_components(const BuchiAutomaton &a);

class alphabet_mismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool check_lasso_membership(const BuchiAutomaton &a, const UltimatelyPeriodicWord &w);

BuchiAutomaton prune_non_coaccessible(const BuchiAutomaton &a);
BuchiAutomaton trim_unreachable(const BuchiAutomaton &a);
BuchiAutomaton merge_duplicate_states(const BuchiAutomaton &a);

// Keeps the listed states (the initial state must be among them) and the
// transitions between them; annotation slots are carried over.
BuchiAutomaton restrict_states(const BuchiAutomaton &a, const std::vector<char> &keep);

std::vector<char> reachable_states(const BuchiAutomaton &a);

}  // namespace syncplan
