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

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "syncplan/agents.hpp"
#include "syncplan/executor.hpp"
#include "syncplan/global.hpp"

namespace syncplan {

// `where` is "line L, column C" for syntax errors and a JSON pointer such
// as /agents/0/grid/width for schema errors.
class scenario_error : public std::runtime_error {
 public:
  scenario_error(std::string where, const std::string &message)
      : std::runtime_error(where + ": " + message), where_(std::move(where)) {}
  const std::string &where() const { return where_; }

 private:
  std::string where_;
};

struct ScenarioFile {
  Scenario scenario;
  std::vector<Room> rooms;
  std::optional<SimulationConfig> simulation;
  int runs = 5;
};

ScenarioFile parse_scenario(std::string_view text);
ScenarioFile load_scenario(const std::filesystem::path &path);

// One JSON document per agent; records are (state, action, sync) with
// agents numbered from 1.
std::string write_strategy(const Strategy &strategy, const Scenario &scenario);
Strategy read_strategy(std::string_view text, const Scenario &scenario);

std::string read_file(const std::filesystem::path &path);

}  // namespace syncplan
