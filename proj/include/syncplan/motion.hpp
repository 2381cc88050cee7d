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

#include <utility>
#include <vector>

#include "syncplan/agents.hpp"
#include "syncplan/buchi.hpp"
#include "syncplan/reduction.hpp"

namespace syncplan {

// Product of an agent's transition system with its motion automaton. Labels
// are the action's service set or the agent's silent label.
struct MotionProduct {
  BuchiAutomaton automaton;
  std::vector<std::pair<TsState, StateId>> states;  // (TS state, motion automaton state)
  std::vector<ActionId> actions;                    // per transition
};

struct ReducedMotionProduct {
  BuchiAutomaton automaton;       // witness[t] lists motion product transitions
  std::vector<char> significant;  // per motion product state
  ReductionReport report;
};

// `services` only names labels for printing.
MotionProduct build_motion_product(const AgentModel &agent, const BuchiAutomaton &spec,
                                   const Alphabet &services = {});

// Initial, or with a non-silent outgoing transition.
std::vector<char> classify_significance(const BuchiAutomaton &product);

ReducedMotionProduct reduce(const MotionProduct &product);

}  // namespace syncplan
