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

#include "syncplan/transition_system.hpp"

#include <algorithm>
#include <map>

namespace syncplan {

TsState TransitionSystem::add_state(std::string name, SymbolSet label) {
  state_names.push_back(std::move(name));
  labels.push_back(label);
  return num_states() - 1;
}

void TransitionSystem::add_transition(TsState source, std::string_view action, TsState target) {
  transitions.push_back({source, actions.add(action), target});
}

std::optional<TsState> TransitionSystem::successor(TsState s, ActionId action) const {
  for (const auto &t : transitions)
    if (t.source == s && t.action == action) return t.target;
  return std::nullopt;
}

std::optional<TsState> TransitionSystem::find_state(std::string_view name) const {
  auto it = std::find(state_names.begin(), state_names.end(), name);
  if (it == state_names.end()) return std::nullopt;
  return static_cast<TsState>(it - state_names.begin());
}

std::vector<std::vector<int>> TransitionSystem::out_edges() const {
  std::vector<std::vector<int>> out(num_states());
  for (int k = 0; k < static_cast<int>(transitions.size()); ++k)
    out[transitions[k].source].push_back(k);
  return out;
}

std::vector<std::pair<TsState, ActionId>> TransitionSystem::nondeterministic_choices() const {
  std::map<std::pair<TsState, ActionId>, std::vector<TsState>> targets;
  for (const auto &t : transitions) targets[{t.source, t.action}].push_back(t.target);
  std::vector<std::pair<TsState, ActionId>> out;
  for (auto &[key, list] : targets) {
    std::sort(list.begin(), list.end());
    if (std::unique(list.begin(), list.end()) - list.begin() > 1) out.push_back(key);
  }
  return out;
}

}  // namespace syncplan
