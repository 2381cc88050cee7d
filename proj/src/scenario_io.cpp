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

#include "syncplan/scenario_io.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace syncplan {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string &path, const std::string &message) {
  throw scenario_error(path.empty() ? "/" : path, message);
}

void expect_object(const json &j, const std::string &path, std::initializer_list<const char *> allowed) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto &[key, value] : j.items()) {
    bool known = false;
    for (const char *k : allowed) known = known || key == k;
    if (!known) fail(path + "/" + key, "unknown key");
  }
}

const json &member(const json &j, const std::string &path, const char *key) {
  if (!j.contains(key)) fail(path + "/" + key, "missing required key");
  return j.at(key);
}

int as_int(const json &j, const std::string &path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

double as_number(const json &j, const std::string &path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

std::string as_string(const json &j, const std::string &path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

const json &as_array(const json &j, const std::string &path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

std::vector<std::string> as_strings(const json &j, const std::string &path) {
  std::vector<std::string> out;
  const auto &arr = as_array(j, path);
  for (std::size_t k = 0; k < arr.size(); ++k) out.push_back(as_string(arr[k], path + "/" + std::to_string(k)));
  return out;
}

Cell as_cell(const json &j, const std::string &path) {
  if (!j.is_array() || j.size() != 2) fail(path, "expected a cell [x, y]");
  return {as_int(j[0], path + "/0"), as_int(j[1], path + "/1")};
}

DurationRange as_range(const json &j, const std::string &path) {
  if (!j.is_array() || j.size() != 2) fail(path, "expected a range [lo, hi]");
  DurationRange r{as_number(j[0], path + "/0"), as_number(j[1], path + "/1")};
  if (r.lo < 0 || r.hi < r.lo) fail(path, "range must satisfy 0 <= lo <= hi");
  return r;
}

std::string position_of(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t k = 0; k + 1 < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

void check_cell(const GridSpec &grid, Cell c, const std::string &path) {
  if (c.x < 0 || c.y < 0 || c.x >= grid.width || c.y >= grid.height) fail(path, "cell outside the grid");
}

AgentModel load_grid_agent(const json &j, const std::string &path, int id, const std::string &name,
                           const std::vector<Room> &rooms, Alphabet &services) {
  const json &g = member(j, path, "grid");
  const std::string gp = path + "/grid";
  expect_object(g, gp, {"width", "height", "obstacles", "walls"});
  GridSpec spec;
  spec.width = as_int(member(g, gp, "width"), gp + "/width");
  spec.height = as_int(member(g, gp, "height"), gp + "/height");
  if (spec.width <= 0 || spec.height <= 0) fail(gp, "grid dimensions must be positive");
  if (g.contains("obstacles")) {
    const auto &arr = as_array(g["obstacles"], gp + "/obstacles");
    for (std::size_t k = 0; k < arr.size(); ++k) {
      std::string p = gp + "/obstacles/" + std::to_string(k);
      spec.obstacles.push_back(as_cell(arr[k], p));
      check_cell(spec, spec.obstacles.back(), p);
    }
  }
  if (g.contains("walls")) {
    const auto &arr = as_array(g["walls"], gp + "/walls");
    for (std::size_t k = 0; k < arr.size(); ++k) {
      std::string p = gp + "/walls/" + std::to_string(k);
      if (!arr[k].is_array() || arr[k].size() != 2) fail(p, "expected a pair of cells");
      Cell a = as_cell(arr[k][0], p + "/0"), b = as_cell(arr[k][1], p + "/1");
      if (std::abs(a.x - b.x) + std::abs(a.y - b.y) != 1) fail(p, "wall cells must be adjacent");
      spec.walls.push_back({a, b});
    }
  }
  spec.rooms = rooms;
  if (j.contains("service_cells")) {
    const auto &arr = as_array(j["service_cells"], path + "/service_cells");
    for (std::size_t k = 0; k < arr.size(); ++k) {
      std::string p = path + "/service_cells/" + std::to_string(k);
      expect_object(arr[k], p, {"cell", "services"});
      ServiceCell sc{as_cell(member(arr[k], p, "cell"), p + "/cell"),
                     as_strings(member(arr[k], p, "services"), p + "/services")};
      check_cell(spec, sc.cell, p + "/cell");
      if (sc.services.empty()) fail(p + "/services", "a service cell needs at least one service");
      spec.service_cells.push_back(std::move(sc));
    }
  }
  spec.initial = as_cell(member(j, path, "initial"), path + "/initial");
  check_cell(spec, spec.initial, path + "/initial");
  if (spec.blocked(spec.initial)) fail(path + "/initial", "initial cell is an obstacle");
  if (j.contains("stay_name")) spec.stay_name = as_string(j["stay_name"], path + "/stay_name");
  try {
    return build_grid_agent(spec, id, name, services);
  } catch (const std::invalid_argument &e) {
    fail(path, e.what());
  }
}

AgentModel load_explicit_agent(const json &j, const std::string &path, int id,
                               const std::string &name, Alphabet &services) {
  const json &t = member(j, path, "explicit_ts");
  const std::string tp = path + "/explicit_ts";
  expect_object(t, tp, {"states", "transitions", "actions"});
  AgentModel model;
  model.id = id;
  model.name = name;
  if (j.contains("stay_name")) model.stay_action = as_string(j["stay_name"], path + "/stay_name");
  auto &ts = model.ts;
  const auto &states = as_array(member(t, tp, "states"), tp + "/states");
  for (std::size_t k = 0; k < states.size(); ++k) {
    std::string p = tp + "/states/" + std::to_string(k);
    expect_object(states[k], p, {"name", "labels"});
    std::string state = as_string(member(states[k], p, "name"), p + "/name");
    if (ts.find_state(state)) fail(p + "/name", "duplicate state " + state);
    SymbolSet label = 0;
    if (states[k].contains("labels"))
      for (const auto &prop : as_strings(states[k]["labels"], p + "/labels"))
        label |= symbol_bit(ts.propositions.add(prop));
    ts.add_state(state, label);
  }
  if (t.contains("actions")) {
    const auto &actions = t["actions"];
    if (!actions.is_object()) fail(tp + "/actions", "expected an object");
    for (const auto &[action, label] : actions.items()) {
      std::string p = tp + "/actions/" + action;
      if (label.is_null()) {
        model.set_label(action, std::nullopt);
        continue;
      }
      SymbolSet set = 0;
      for (const auto &s : as_strings(label, p)) set |= symbol_bit(services.add(s));
      model.set_label(action, set);
    }
  }
  const auto &transitions = as_array(member(t, tp, "transitions"), tp + "/transitions");
  for (std::size_t k = 0; k < transitions.size(); ++k) {
    std::string p = tp + "/transitions/" + std::to_string(k);
    expect_object(transitions[k], p, {"from", "action", "to"});
    auto from = ts.find_state(as_string(member(transitions[k], p, "from"), p + "/from"));
    auto to = ts.find_state(as_string(member(transitions[k], p, "to"), p + "/to"));
    if (!from) fail(p + "/from", "unknown state");
    if (!to) fail(p + "/to", "unknown state");
    ts.add_transition(*from, as_string(member(transitions[k], p, "action"), p + "/action"), *to);
  }
  model.action_labels.resize(ts.actions.size());
  auto initial = ts.find_state(as_string(member(j, path, "initial"), path + "/initial"));
  if (!initial) fail(path + "/initial", "unknown state");
  ts.initial = *initial;
  return model;
}

}  // namespace

ScenarioFile parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw scenario_error(position_of(text, e.byte), "malformed JSON");
  }
  expect_object(doc, "", {"rooms", "agents", "motion_formulas", "task_formulas", "simulation"});
  ScenarioFile file;
  auto &sc = file.scenario;

  if (doc.contains("rooms")) {
    const auto &arr = as_array(doc["rooms"], "/rooms");
    for (std::size_t k = 0; k < arr.size(); ++k) {
      std::string p = "/rooms/" + std::to_string(k);
      expect_object(arr[k], p, {"name", "from", "to"});
      Room room{as_string(member(arr[k], p, "name"), p + "/name"),
                as_cell(member(arr[k], p, "from"), p + "/from"),
                as_cell(member(arr[k], p, "to"), p + "/to")};
      file.rooms.push_back(std::move(room));
    }
  }

  const auto &agents = as_array(member(doc, "", "agents"), "/agents");
  if (agents.empty()) fail("/agents", "at least one agent is required");
  if (static_cast<int>(agents.size()) > max_agents) fail("/agents", "too many agents");
  for (std::size_t k = 0; k < agents.size(); ++k) {
    const auto &a = agents[k];
    std::string p = "/agents/" + std::to_string(k);
    expect_object(a, p, {"id", "name", "grid", "explicit_ts", "services", "service_cells",
                         "initial", "stay_name"});
    int id = static_cast<int>(k);
    if (a.contains("id") && as_int(a["id"], p + "/id") != id + 1)
      fail(p + "/id", "agent ids must be 1, 2, ... in file order");
    std::string name = a.contains("name") ? as_string(a["name"], p + "/name")
                                          : "agent" + std::to_string(id + 1);
    auto declared = as_strings(member(a, p, "services"), p + "/services");
    SymbolSet services = 0;
    for (const auto &s : declared) services |= symbol_bit(sc.services.add(s));
    if (a.contains("grid") == a.contains("explicit_ts"))
      fail(p, "exactly one of grid and explicit_ts is required");
    AgentModel model;
    if (a.contains("grid")) {
      model = load_grid_agent(a, p, id, name, file.rooms, sc.services);
    } else {
      if (a.contains("service_cells")) fail(p + "/service_cells", "only grid agents have service cells");
      model = load_explicit_agent(a, p, id, name, sc.services);
    }
    model.services = services;
    sc.agents.push_back(std::move(model));
  }

  auto formulas = [&](const char *key) {
    auto list = as_strings(member(doc, "", key), std::string("/") + key);
    if (list.size() != agents.size()) fail(std::string("/") + key, "expected one formula per agent");
    return list;
  };
  sc.motion_formulas = formulas("motion_formulas");
  sc.task_formulas = formulas("task_formulas");

  if (doc.contains("simulation")) {
    const auto &s = doc["simulation"];
    expect_object(s, "/simulation", {"seed", "runs", "unrollings", "duration", "overrides"});
    SimulationConfig cfg;
    if (s.contains("seed")) cfg.seed = static_cast<std::uint64_t>(as_int(s["seed"], "/simulation/seed"));
    if (s.contains("runs")) file.runs = as_int(s["runs"], "/simulation/runs");
    if (s.contains("unrollings")) cfg.unrollings = as_int(s["unrollings"], "/simulation/unrollings");
    if (cfg.unrollings < 2) fail("/simulation/unrollings", "at least two unrollings are required");
    if (s.contains("duration")) cfg.duration = as_range(s["duration"], "/simulation/duration");
    if (s.contains("overrides")) {
      if (!s["overrides"].is_object()) fail("/simulation/overrides", "expected an object");
      for (const auto &[action, range] : s["overrides"].items())
        cfg.overrides[action] = as_range(range, "/simulation/overrides/" + action);
    }
    file.simulation = cfg;
  }
  return file;
}

std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

ScenarioFile load_scenario(const std::filesystem::path &path) {
  return parse_scenario(read_file(path));
}

std::string write_strategy(const Strategy &strategy, const Scenario &scenario) {
  const auto &agent = scenario.agents.at(strategy.agent);
  auto records = [&](const std::vector<StrategyStep> &steps) {
    std::string out = "[";
    for (std::size_t k = 0; k < steps.size(); ++k) {
      ordered_json r;
      r["state"] = agent.ts.state_names.at(steps[k].state);
      r["action"] = agent.ts.actions.name(steps[k].action);
      std::vector<int> sync;
      for_each_member(steps[k].sync, [&](int a) { sync.push_back(a + 1); });
      r["sync"] = sync;
      out += (k ? ",\n    " : "\n    ") + r.dump();
    }
    return out + (steps.empty() ? "]" : "\n  ]");
  };
  std::string out = "{\n";
  out += "  \"agent\": " + std::to_string(strategy.agent + 1) + ",\n";
  out += "  \"name\": " + json(agent.name).dump() + ",\n";
  out += "  \"prefix\": " + records(strategy.prefix) + ",\n";
  out += "  \"cycle\": " + records(strategy.cycle) + "\n}\n";
  return out;
}

Strategy read_strategy(std::string_view text, const Scenario &scenario) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw scenario_error(position_of(text, e.byte), "malformed JSON");
  }
  expect_object(doc, "", {"agent", "name", "prefix", "cycle"});
  Strategy s;
  s.agent = as_int(member(doc, "", "agent"), "/agent") - 1;
  if (s.agent < 0 || s.agent >= scenario.size()) fail("/agent", "no such agent");
  const auto &agent = scenario.agents[s.agent];
  auto records = [&](const char *key) {
    std::vector<StrategyStep> steps;
    std::string p = std::string("/") + key;
    const auto &arr = as_array(member(doc, "", key), p);
    for (std::size_t k = 0; k < arr.size(); ++k) {
      std::string rp = p + "/" + std::to_string(k);
      expect_object(arr[k], rp, {"state", "action", "sync"});
      auto state = agent.ts.find_state(as_string(member(arr[k], rp, "state"), rp + "/state"));
      if (!state) fail(rp + "/state", "unknown state");
      auto action = agent.ts.actions.find(as_string(member(arr[k], rp, "action"), rp + "/action"));
      if (!action) fail(rp + "/action", "unknown action");
      AgentSet sync = 0;
      const auto &members = as_array(member(arr[k], rp, "sync"), rp + "/sync");
      for (std::size_t m = 0; m < members.size(); ++m) {
        int a = as_int(members[m], rp + "/sync/" + std::to_string(m)) - 1;
        if (a < 0 || a >= scenario.size()) fail(rp + "/sync/" + std::to_string(m), "no such agent");
        sync |= agent_bit(a);
      }
      if (!(sync & agent_bit(s.agent))) fail(rp + "/sync", "coalition must contain the agent");
      steps.push_back({*state, *action, sync});
    }
    return steps;
  };
  s.prefix = records("prefix");
  s.cycle = records("cycle");
  if (s.cycle.empty()) fail("/cycle", "cycle must not be empty");
  return s;
}

}  // namespace syncplan
