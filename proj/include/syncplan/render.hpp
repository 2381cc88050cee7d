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

#include <stdexcept>
#include <string>
#include <vector>

#include "syncplan/agents.hpp"
#include "syncplan/global.hpp"

namespace syncplan {

class render_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Cells visited by a strategy: the prefix, one pass of the cycle and the
// cycle's first cell again, with repeats collapsed.
std::vector<Cell> trajectory(const Strategy &strategy, const AgentModel &agent);

// Cells where the agent provides a service inside a coalition.
std::vector<Cell> coalition_services(const Strategy &strategy, const AgentModel &agent);

// One frame per agent, top row first: '#' obstacle, '.' free, 'o' visited,
// '@' initial cell, '*' coalition service. Each frame is a title line
// followed by one line per grid row.
std::string render_ascii(const std::vector<Strategy> &strategies, const Scenario &scenario);

// Grid with the obstacles and walls of every agent, service cells, one
// polyline per moving agent (a dot for a stationary one) and a star per
// coalition service.
std::string render_svg(const std::vector<Strategy> &strategies, const Scenario &scenario);

}  // namespace syncplan
