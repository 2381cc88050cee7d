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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "syncplan/agents.hpp"
#include "syncplan/global.hpp"
#include "syncplan/word.hpp"

namespace syncplan {

struct DurationRange {
  double lo = 1.0;
  double hi = 5.0;
};

struct SimulationConfig {
  std::uint64_t seed = 0;
  DurationRange duration;
  std::map<std::string, DurationRange> overrides;  // by action name
  int unrollings = 3;

  void check() const;
};

// One executed step: the agent reaches `state` at state_time, waits, and
// starts `action` at action_time. Steps of one barrier share their event
// id; every other step has an id of its own.
struct TimedStep {
  TsState state = 0;
  ActionId action = 0;
  AgentSet sync = 0;
  double state_time = 0;
  double action_time = 0;
  double duration = 0;
  long event = 0;
};

struct Behavior {
  int agent = 0;
  std::size_t prefix_steps = 0;
  std::size_t cycle_steps = 0;
  int unrollings = 0;
  std::vector<TimedStep> steps;
  TsState final_state = 0;
  double final_time = 0;
};

struct Barrier {
  long event = 0;
  AgentSet coalition = 0;
  double release = 0;
  std::vector<double> waits;  // per member, ascending agent id
};

struct LogEntry {
  double time = 0;
  int agent = 0;
  std::string kind;  // sync-request, barrier-release, action-start, action-end, service
  std::string payload;
};

struct SimulationResult {
  std::vector<Behavior> behaviors;  // indexed by agent
  std::vector<Barrier> barriers;
  std::vector<LogEntry> log;        // sorted by time, then agent
  bool deadlock = false;
  std::string diagnostic;
};

SimulationResult simulate(const std::vector<Strategy> &strategies, const Scenario &scenario,
                          const SimulationConfig &config);

std::string format_log(const SimulationResult &result);

// Services provided by every agent at agent i's non-silent instants, folded
// with the strategy's period. A finite word is padded with empty sets.
UltimatelyPeriodicWord extract_local_word(const SimulationResult &result,
                                          const Scenario &scenario, int agent);

// L(s_1) L(s_2) ... of the agent's trace.
UltimatelyPeriodicWord trace_word(const Behavior &behavior, const Scenario &scenario);

struct Verdict {
  int agent = 0;
  bool motion = false;
  bool task = false;
  bool oracles_agree = true;  // eval_ltl and automaton membership
};

std::vector<Verdict> check_local_satisfaction(const SimulationResult &result,
                                              const Scenario &scenario);

struct CentralizedEstimate {
  double ts_states = 0;        // product of the agents' state counts
  double automaton_states = 0; // product of the non-universal automata sizes times the counter
  double estimate = 0;
  std::string formula;
  bool materialized = false;
  std::size_t reachable = 0;
};

CentralizedEstimate estimate_centralized(const Scenario &scenario,
                                         std::size_t cap = 2'000'000);

}  // namespace syncplan
