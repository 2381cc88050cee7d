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

#include "syncplan/agents.hpp"

#include <algorithm>
#include <map>

#include "syncplan/formula.hpp"

namespace syncplan {

bool GridSpec::blocked(Cell c) const {
  if (c.x < 0 || c.y < 0 || c.x >= width || c.y >= height) return true;
  return std::find(obstacles.begin(), obstacles.end(), c) != obstacles.end();
}

bool GridSpec::wall_between(Cell a, Cell b) const {
  for (const auto &[p, q] : walls)
    if ((p == a && q == b) || (p == b && q == a)) return true;
  return false;
}

std::string cell_name(Cell c) { return "c" + std::to_string(c.x) + "_" + std::to_string(c.y); }

Label AgentModel::label_of(ActionId a) const {
  const auto &label = action_labels.at(a);
  return label ? Label::of_services(*label) : Label::silent(id);
}

void AgentModel::set_label(std::string_view action, std::optional<SymbolSet> label) {
  int index = ts.actions.add(action);
  if (static_cast<int>(action_labels.size()) <= index) action_labels.resize(index + 1);
  action_labels[index] = label;
}

std::vector<int> Scenario::service_owners() const {
  std::vector<int> owner(services.size(), -1);
  for (const auto &agent : agents)
    for_each_member(agent.services, [&](int s) {
      if (owner[s] < 0) owner[s] = agent.id;
    });
  return owner;
}

std::string to_string(Diagnostic::Kind kind) {
  switch (kind) {
    case Diagnostic::Kind::missing_stay: return "missing-stay";
    case Diagnostic::Kind::stay_not_silent: return "stay-not-silent";
    case Diagnostic::Kind::alphabet_overlap: return "alphabet-overlap";
    case Diagnostic::Kind::next_in_motion: return "next-in-motion-formula";
    case Diagnostic::Kind::undeclared_atom: return "undeclared-atom";
    case Diagnostic::Kind::syntax_error: return "syntax-error";
    case Diagnostic::Kind::nondeterministic: return "nondeterministic-transition";
    case Diagnostic::Kind::foreign_label: return "foreign-service-label";
    case Diagnostic::Kind::formula_count: return "formula-count";
  }
  return "unknown";
}

namespace {

void check_formula(const std::string &text, const Alphabet &alphabet, int agent,
                   bool motion, std::vector<Diagnostic> &out) {
  const char *which = motion ? "motion" : "task";
  try {
    Formula f = parse(text, alphabet);
    if (motion && contains_next(f))
      out.push_back({Diagnostic::Kind::next_in_motion, agent,
                     std::string(which) + " formula uses X: " + text});
  } catch (const parse_error &e) {
    std::string what = e.what();
    auto kind = what.find("unknown atom") != std::string::npos ? Diagnostic::Kind::undeclared_atom
                                                               : Diagnostic::Kind::syntax_error;
    out.push_back({kind, agent, std::string(which) + " formula: " + what});
  }
}

}  // namespace

std::vector<Diagnostic> validate(const Scenario &scenario) {
  std::vector<Diagnostic> out;
  const int n = scenario.size();
  if (static_cast<int>(scenario.motion_formulas.size()) != n ||
      static_cast<int>(scenario.task_formulas.size()) != n) {
    out.push_back({Diagnostic::Kind::formula_count, -1,
                   "expected one motion and one task formula per agent"});
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      SymbolSet shared = scenario.agents[i].services & scenario.agents[j].services;
      if (shared)
        out.push_back({Diagnostic::Kind::alphabet_overlap, j,
                       "agents " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                           " both declare " + scenario.services.format(shared)});
    }
  }
  for (const auto &agent : scenario.agents) {
    const auto &ts = agent.ts;
    auto stay = ts.actions.find(agent.stay_action);
    for (TsState s = 0; s < ts.num_states(); ++s) {
      bool looped = stay && ts.successor(s, *stay) == s;
      if (!looped)
        out.push_back({Diagnostic::Kind::missing_stay, agent.id,
                       "state " + ts.state_names[s] + " lacks the " + agent.stay_action +
                           " self-loop"});
    }
    if (stay && !agent.is_silent(*stay))
      out.push_back({Diagnostic::Kind::stay_not_silent, agent.id,
                     "action " + agent.stay_action + " must be silent"});
    for (auto [s, a] : ts.nondeterministic_choices())
      out.push_back({Diagnostic::Kind::nondeterministic, agent.id,
                     "action " + ts.actions.name(a) + " has several successors in state " +
                         ts.state_names[s]});
    for (ActionId a = 0; a < ts.actions.size(); ++a) {
      const auto &label = agent.action_labels.at(a);
      if (label && (*label & ~agent.services))
        out.push_back({Diagnostic::Kind::foreign_label, agent.id,
                       "action " + ts.actions.name(a) + " provides " +
                           scenario.services.format(*label & ~agent.services) +
                           " outside the agent's services"});
    }
    if (agent.id < static_cast<int>(scenario.motion_formulas.size()))
      check_formula(scenario.motion_formulas[agent.id], ts.propositions, agent.id, true, out);
    if (agent.id < static_cast<int>(scenario.task_formulas.size()))
      check_formula(scenario.task_formulas[agent.id], scenario.services, agent.id, false, out);
  }
  return out;
}

void add_stay_loops(AgentModel &model) {
  for (TsState s = 0; s < model.ts.num_states(); ++s)
    if (!model.ts.successor(s, model.ts.actions.add(model.stay_action)))
      model.ts.add_transition(s, model.stay_action, s);
  model.set_label(model.stay_action, std::nullopt);
}

AgentModel build_grid_agent(const GridSpec &spec, int id, std::string name, Alphabet &services) {
  if (spec.width <= 0 || spec.height <= 0) throw std::invalid_argument("grid must be nonempty");
  if (spec.blocked(spec.initial))
    throw std::invalid_argument("initial cell " + cell_name(spec.initial) + " is blocked");

  AgentModel model;
  model.id = id;
  model.name = std::move(name);
  model.stay_action = spec.stay_name;
  model.grid = spec;
  auto &ts = model.ts;
  for (const auto &room : spec.rooms) ts.propositions.add(room.name);

  std::map<Cell, TsState> state_of;
  for (int y = 0; y < spec.height; ++y) {
    for (int x = 0; x < spec.width; ++x) {
      Cell c{x, y};
      if (spec.blocked(c)) continue;
      SymbolSet label = 0;
      for (const auto &room : spec.rooms)
        if (room.contains(c)) label |= symbol_bit(ts.propositions.index_of(room.name));
      state_of[c] = ts.add_state(cell_name(c), label);
      model.state_cells.push_back(c);
    }
  }
  ts.initial = state_of.at(spec.initial);

  struct Move {
    const char *name;
    int dx, dy;
  };
  constexpr Move moves[] = {{"north", 0, 1}, {"south", 0, -1}, {"east", 1, 0}, {"west", -1, 0}};
  for (const auto &m : moves) model.set_label(m.name, std::nullopt);
  for (const auto &[cell, s] : state_of) {
    for (const auto &m : moves) {
      Cell next{cell.x + m.dx, cell.y + m.dy};
      if (spec.blocked(next) || spec.wall_between(cell, next)) continue;
      ts.add_transition(s, m.name, state_of.at(next));
    }
  }
  add_stay_loops(model);

  for (const auto &sc : spec.service_cells) {
    if (spec.blocked(sc.cell))
      throw std::invalid_argument("service cell " + cell_name(sc.cell) + " is blocked");
    SymbolSet provided = 0;
    std::string action;
    for (const auto &service : sc.services) {
      provided |= symbol_bit(services.add(service));
      action += (action.empty() ? "" : "+") + service;
    }
    model.services |= provided;
    model.set_label(action, provided);
    ts.add_transition(state_of.at(sc.cell), action, state_of.at(sc.cell));
  }
  model.action_labels.resize(ts.actions.size());
  return model;
}

}  // namespace syncplan
