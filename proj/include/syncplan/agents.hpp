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
#include <utility>
#include <vector>

#include "syncplan/buchi.hpp"
#include "syncplan/transition_system.hpp"

namespace syncplan {

struct Cell {
  int x = 0;
  int y = 0;
  auto operator<=>(const Cell &) const = default;
};

struct Room {
  std::string name;
  Cell lower;  // inclusive corners
  Cell upper;
  bool contains(Cell c) const {
    return c.x >= lower.x && c.x <= upper.x && c.y >= lower.y && c.y <= upper.y;
  }
};

struct ServiceCell {
  Cell cell;
  std::vector<std::string> services;
};

// Four-connected grid. Walls block the move between two adjacent cells in
// both directions; obstacles remove cells. y grows northwards.
struct GridSpec {
  int width = 1;
  int height = 1;
  std::vector<Cell> obstacles;
  std::vector<std::pair<Cell, Cell>> walls;
  std::vector<Room> rooms;
  std::vector<ServiceCell> service_cells;
  Cell initial;
  std::string stay_name = "stay";

  bool blocked(Cell c) const;
  bool wall_between(Cell a, Cell b) const;
};

std::string cell_name(Cell c);

// A transition system plus the services its actions provide. The agent may
// request any coalition containing itself. Agents are numbered from 0
// internally.
struct AgentModel {
  int id = 0;
  std::string name;
  TransitionSystem ts;
  SymbolSet services = 0;  // over the scenario's service alphabet
  std::vector<std::optional<SymbolSet>> action_labels;  // per action; nullopt is silent
  std::string stay_action = "stay";
  std::optional<GridSpec> grid;
  std::vector<Cell> state_cells;  // grid agents only

  bool is_silent(ActionId a) const { return !action_labels.at(a).has_value(); }
  Label label_of(ActionId a) const;
  void set_label(std::string_view action, std::optional<SymbolSet> label);
};

struct SyncRequest {
  int issuer = 0;
  AgentSet coalition = 0;
  bool operator==(const SyncRequest &) const = default;
};

struct Scenario {
  Alphabet services;  // the team's service alphabet
  std::vector<AgentModel> agents;
  std::vector<std::string> motion_formulas;  // over each agent's propositions
  std::vector<std::string> task_formulas;    // over the service alphabet

  int size() const { return static_cast<int>(agents.size()); }
  // Agent providing each service, -1 when undeclared.
  std::vector<int> service_owners() const;
};

struct Diagnostic {
  enum class Kind {
    missing_stay,
    stay_not_silent,
    alphabet_overlap,
    next_in_motion,
    undeclared_atom,
    syntax_error,
    nondeterministic,
    foreign_label,
    formula_count,
  };
  Kind kind;
  int agent = -1;
  std::string message;
};

std::string to_string(Diagnostic::Kind kind);

std::vector<Diagnostic> validate(const Scenario &scenario);

// Service names of a grid spec are added to `services` on first sight.
AgentModel build_grid_agent(const GridSpec &spec, int id, std::string name, Alphabet &services);

// Adds stay self-loops on every state of `model.ts`.
void add_stay_loops(AgentModel &model);

}  // namespace syncplan
