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

#include <optional>
#include <string>
#include <vector>

#include "syncplan/symbols.hpp"

namespace syncplan {

using TsState = int;
using ActionId = int;

struct TsTransition {
  TsState source = 0;
  ActionId action = 0;
  TsState target = 0;
};

// Deterministic transition system with action-labeled transitions and
// proposition-labeled states.
struct TransitionSystem {
  std::vector<std::string> state_names;
  TsState initial = 0;
  Alphabet actions;
  std::vector<TsTransition> transitions;
  Alphabet propositions;
  std::vector<SymbolSet> labels;  // per state

  int num_states() const { return static_cast<int>(state_names.size()); }

  TsState add_state(std::string name, SymbolSet label = 0);
  void add_transition(TsState source, std::string_view action, TsState target);

  std::optional<TsState> successor(TsState s, ActionId action) const;
  std::optional<TsState> find_state(std::string_view name) const;
  std::vector<std::vector<int>> out_edges() const;  // transition indices

  // Pairs (state, action) with more than one successor.
  std::vector<std::pair<TsState, ActionId>> nondeterministic_choices() const;
};

}  // namespace syncplan
