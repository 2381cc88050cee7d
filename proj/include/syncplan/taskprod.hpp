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

#include <set>
#include <tuple>
#include <vector>

#include "syncplan/agents.hpp"
#include "syncplan/motion.hpp"
#include "syncplan/reduction.hpp"

namespace syncplan {

struct TaskMotionState {
  StateId motion;  // reduced motion product state
  StateId task;    // task automaton state
  int counter;     // 1, 2 or 3
};

// Product of a reduced motion product with a task automaton. Joint labels
// are the agent's own services plus any combination of foreign services.
// The dependency slot holds each transition's required agents once
// compute_dep has run.
struct TaskMotionProduct {
  int agent = 0;
  SymbolSet own_services = 0;
  std::vector<int> service_owner;  // per service of the team alphabet
  BuchiAutomaton automaton;
  std::vector<TaskMotionState> states;
  std::vector<TransitionId> motion_transition;  // per transition
  std::vector<TransitionId> task_transition;    // per transition, -1 when stuttering
  std::vector<char> idle_tail_accepted;         // per task state: the empty set forever is accepted

  bool has_transition(StateId p, SymbolSet sigma, StateId target) const {
    return index_.count({p, sigma, target}) != 0;
  }
  void index_transitions();

 private:
  std::set<std::tuple<StateId, SymbolSet, StateId>> index_;
};

struct ReducedTaskMotionProduct {
  int agent = 0;
  BuchiAutomaton automaton;       // witness[t] lists task-and-motion product transitions
  std::vector<char> significant;  // per task-and-motion product state
  SymbolSet globally_assisting = 0;
  ReductionReport report;
};

// Foreign-service combinations are enumerated exhaustively; more than this
// many foreign services is rejected.
inline constexpr int max_foreign_services = 16;

TaskMotionProduct build_task_motion_product(const ReducedMotionProduct &motion,
                                            const BuchiAutomaton &task, const Scenario &scenario,
                                            int agent);

bool compute_assisting(const TaskMotionProduct &tm, TransitionId t, int service);

// Fills tm.automaton.dependency and returns it.
const std::vector<AgentSet> &compute_dep(TaskMotionProduct &tm);

// Per agent: its services assisting on some transition of another agent.
std::vector<SymbolSet> compute_globally_assisting(const std::vector<TaskMotionProduct> &all,
                                                  int agents);

std::vector<char> classify_task_significance(const TaskMotionProduct &tm,
                                             SymbolSet globally_assisting);

ReducedTaskMotionProduct reduce_task_motion(const TaskMotionProduct &tm,
                                            const std::vector<SymbolSet> &globally_assisting);

}  // namespace syncplan
