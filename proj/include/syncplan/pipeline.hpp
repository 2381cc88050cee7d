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

#include <cstddef>
#include <vector>

#include "syncplan/global.hpp"

namespace syncplan {

struct PipelineOptions {
  bool per_class = false;  // one global product per dependency class
  std::size_t state_cap = 2'000'000;
};

// State counts per stage.
struct AgentStats {
  int motion_spec_states = 0;
  int task_spec_states = 0;
  int motion_product = 0;
  int reduced_motion = 0;
  int task_motion = 0;
  int significant_task_motion = 0;
  int reduced_task = 0;
};

struct PipelineResult {
  std::vector<AgentArtifacts> artifacts;
  std::vector<AgentStats> stats;
  std::vector<SymbolSet> globally_assisting;
  std::vector<std::vector<int>> classes;
  std::vector<GlobalProduct> globals;  // one per class, or a single one
  std::vector<Lasso> lassos;
  std::vector<Strategy> strategies;    // ordered by agent
  double seconds = 0;

  int global_states() const;
};

// Runs every stage; throws emptiness_error naming the first empty stage.
PipelineResult run_pipeline(const Scenario &scenario, const PipelineOptions &options = {});

}  // namespace syncplan
