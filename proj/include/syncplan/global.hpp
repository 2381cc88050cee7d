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
#include <stdexcept>
#include <string>
#include <vector>

#include "syncplan/agents.hpp"
#include "syncplan/motion.hpp"
#include "syncplan/taskprod.hpp"

namespace syncplan {

// Everything built for one agent on the way to the global product.
struct AgentArtifacts {
  BuchiAutomaton motion_spec;
  BuchiAutomaton task_spec;
  MotionProduct motion;
  ReducedMotionProduct reduced_motion;
  TaskMotionProduct task_motion;
  ReducedTaskMotionProduct reduced_task;
};

// Product of the reduced task-and-motion products of `members`. State k
// holds one local state per member and a counter in 1..members+1. The
// dependency slot holds the coalition of every transition.
struct GlobalProduct {
  std::vector<int> members;  // agent ids, ascending
  BuchiAutomaton automaton;
  std::vector<StateId> locals;  // num_states x members, row-major
  std::vector<int> counters;
  std::vector<TransitionId> moves;  // num_transitions x members, -1 when frozen

  int width() const { return static_cast<int>(members.size()); }
  StateId local(StateId q, int k) const { return locals[q * width() + k]; }
  TransitionId move(TransitionId t, int k) const { return moves[t * width() + k]; }

  // Cycle requirements besides acceptance: the counter wraps, and every
  // member takes part in a synchronization or provides a service.
  LassoConstraints fairness(const std::vector<AgentArtifacts> &artifacts) const;
};

GlobalProduct build_global_product(const std::vector<AgentArtifacts> &artifacts,
                                   const std::vector<int> &members,
                                   const std::vector<int> &service_owner,
                                   std::size_t state_cap = 2'000'000);

struct StrategyStep {
  TsState state = 0;
  ActionId action = 0;
  AgentSet sync = 0;
  bool operator==(const StrategyStep &) const = default;
};

// Trace with its synchronization sequence, as a lasso: the cycle starts at
// the state the prefix ends in and returns to it.
struct Strategy {
  int agent = 0;
  std::vector<StrategyStep> prefix;
  std::vector<StrategyStep> cycle;
  bool operator==(const Strategy &) const = default;
};

class emptiness_error : public std::runtime_error {
 public:
  emptiness_error(std::string stage, int agent, const std::string &message)
      : std::runtime_error(message), stage_(std::move(stage)), agent_(agent) {}
  const std::string &stage() const { return stage_; }
  int agent() const { return agent_; }

 private:
  std::string stage_;
  int agent_;
};

std::optional<Lasso> find_global_lasso(const GlobalProduct &gp,
                                       const std::vector<AgentArtifacts> &artifacts);

// Projects the global lasso onto each member and expands it down to its
// transition system.
std::vector<Strategy> synthesize(const GlobalProduct &gp, const Lasso &lasso,
                                 const std::vector<AgentArtifacts> &artifacts);
std::vector<Strategy> synthesize(const GlobalProduct &gp,
                                 const std::vector<AgentArtifacts> &artifacts);

// Drops stay steps with singleton synchronization and downgrades
// coalitions in which every member acts silently.
std::vector<Strategy> minimize_synchronizations(std::vector<Strategy> strategies,
                                                const Scenario &scenario);

// Finest partition where i and i' share a class whenever i' belongs to the
// dependency set of some transition of agent i's task-and-motion product.
std::vector<std::vector<int>> compute_dependency_classes(
    const std::vector<TaskMotionProduct> &products, int agents);

}  // namespace syncplan
