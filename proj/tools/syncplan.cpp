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

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "syncplan/dot.hpp"
#include "syncplan/formula.hpp"
#include "syncplan/pipeline.hpp"
#include "syncplan/render.hpp"
#include "syncplan/scenario_io.hpp"

namespace fs = std::filesystem;
using namespace syncplan;

namespace {

enum Exit { ok = 0, invalid = 1, empty = 2, verdict_failed = 3 };

struct Options {
  std::string scenario;
  std::vector<std::string> strategies;
  std::string out_dir = "strategies";
  std::string output;
  std::string dot_dir;
  std::string log_dir;
  std::string format = "ascii";
  std::optional<std::uint64_t> seed;
  std::optional<int> runs;
  std::size_t cap = 2'000'000;
  bool per_class = false;
};

void write_text(const fs::path &path, const std::string &text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

// Loads and validates; prints diagnostics and returns nullopt when invalid.
std::optional<ScenarioFile> load_valid(const std::string &path) {
  auto file = load_scenario(path);
  auto diagnostics = validate(file.scenario);
  for (const auto &d : diagnostics)
    std::cerr << path << ": " << (d.agent >= 0 ? "agent " + std::to_string(d.agent + 1) + ": " : "")
              << to_string(d.kind) << ": " << d.message << '\n';
  if (!diagnostics.empty()) return std::nullopt;
  return file;
}

std::string format_classes(const std::vector<std::vector<int>> &classes) {
  std::string out;
  for (const auto &c : classes) {
    AgentSet set = 0;
    for (int a : c) set |= agent_bit(a);
    out += (out.empty() ? "" : " ") + format_agents(set);
  }
  return out;
}

void print_stats(const PipelineResult &r, const Scenario &scenario, const CentralizedEstimate &e) {
  std::cout << std::left << std::setw(6) << "agent" << std::setw(12) << "name" << std::right
            << std::setw(8) << "motion" << std::setw(9) << "reduced" << std::setw(7) << "task"
            << std::setw(13) << "significant" << std::setw(14) << "reduced-task"
            << "  assisting\n";
  for (int i = 0; i < scenario.size(); ++i) {
    const auto &st = r.stats[i];
    std::cout << std::left << std::setw(6) << i + 1 << std::setw(12) << scenario.agents[i].name
              << std::right << std::setw(8) << st.motion_product << std::setw(9)
              << st.reduced_motion << std::setw(7) << st.task_motion << std::setw(13)
              << st.significant_task_motion << std::setw(14) << st.reduced_task << "  "
              << scenario.services.format(r.globally_assisting[i]) << '\n';
  }
  std::cout << "dependency classes: " << format_classes(r.classes) << '\n';
  std::cout << "global product: " << r.global_states() << " states in " << r.globals.size()
            << (r.globals.size() == 1 ? " product\n" : " products\n");
  std::cout << "centralized estimate: " << e.formula << '\n';
  if (e.materialized) std::cout << "centralized reachable: " << e.reachable << '\n';
  std::cout << "reduction ratio: " << std::setprecision(6) << e.estimate / r.global_states() << '\n';
  std::cout << "time: " << std::fixed << std::setprecision(2) << r.seconds << " s\n"
            << std::defaultfloat;
}

void write_dots(const PipelineResult &r, const Scenario &scenario, const fs::path &dir) {
  fs::create_directories(dir);
  for (int i = 0; i < scenario.size(); ++i) {
    const auto &art = r.artifacts[i];
    const std::string prefix = "agent" + std::to_string(i + 1) + "_";
    auto dump = [&](const std::string &name, const BuchiAutomaton &a, bool deps) {
      DotOptions options;
      options.name = prefix + name;
      options.show_dependencies = deps;
      write_text(dir / (prefix + name + ".dot"), to_dot(a, options));
    };
    dump("motion_spec", art.motion_spec, false);
    dump("task_spec", art.task_spec, false);
    dump("motion", art.motion.automaton, false);
    dump("motion_reduced", art.reduced_motion.automaton, false);
    dump("task_motion", art.task_motion.automaton, true);
    dump("task_reduced", art.reduced_task.automaton, true);
  }
  for (std::size_t k = 0; k < r.globals.size(); ++k) {
    DotOptions options;
    options.name = "global" + std::to_string(k + 1);
    options.show_dependencies = true;
    write_text(dir / (options.name + ".dot"), to_dot(r.globals[k].automaton, options));
  }
}

int cmd_check(const Options &o) {
  auto file = load_valid(o.scenario);
  if (!file) return invalid;
  std::cout << o.scenario << ": ok, " << file->scenario.size() << " agents, "
            << file->scenario.services.size() << " services\n";
  return ok;
}

int run_synthesis(const Options &o, bool write) {
  auto file = load_valid(o.scenario);
  if (!file) return invalid;
  const auto &scenario = file->scenario;
  PipelineOptions options;
  options.per_class = o.per_class;
  options.state_cap = o.cap;
  PipelineResult r;
  try {
    r = run_pipeline(scenario, options);
  } catch (const emptiness_error &e) {
    std::cerr << "empty at the " << e.stage() << " stage: " << e.what() << '\n';
    return empty;
  } catch (const std::length_error &e) {
    std::cerr << e.what() << " (" << o.cap << " states)\n";
    return empty;
  }
  print_stats(r, scenario, estimate_centralized(scenario, o.cap));
  if (!o.dot_dir.empty()) write_dots(r, scenario, o.dot_dir);
  if (write) {
    for (const auto &s : r.strategies) {
      fs::path path = fs::path(o.out_dir) / (scenario.agents[s.agent].name + ".json");
      write_text(path, write_strategy(s, scenario));
      std::cout << "wrote " << path.string() << '\n';
    }
  }
  return ok;
}

std::vector<Strategy> load_strategies(const std::vector<std::string> &paths, const Scenario &scenario) {
  std::vector<Strategy> out;
  for (const auto &p : paths) {
    try {
      out.push_back(read_strategy(read_file(p), scenario));
    } catch (const scenario_error &e) {
      throw scenario_error(p + ": " + e.where(), e.what());
    }
  }
  std::sort(out.begin(), out.end(), [](const Strategy &a, const Strategy &b) { return a.agent < b.agent; });
  for (int i = 0; i < static_cast<int>(out.size()); ++i)
    if (out[i].agent != i) throw std::invalid_argument("expected one strategy file per agent");
  if (static_cast<int>(out.size()) != scenario.size())
    throw std::invalid_argument("expected one strategy file per agent");
  return out;
}

int cmd_simulate(const Options &o) {
  auto file = load_valid(o.scenario);
  if (!file) return invalid;
  const auto &scenario = file->scenario;
  auto strategies = load_strategies(o.strategies, scenario);
  SimulationConfig config = file->simulation.value_or(SimulationConfig{});
  if (o.seed) config.seed = *o.seed;
  const int runs = o.runs.value_or(file->runs);
  bool all_true = true;
  std::cout << "seed  agent  motion  task  agree\n";
  for (int run = 0; run < runs; ++run) {
    SimulationConfig c = config;
    c.seed = config.seed + run;
    auto result = simulate(strategies, scenario, c);
    if (!o.log_dir.empty())
      write_text(fs::path(o.log_dir) / ("seed" + std::to_string(c.seed) + ".log"), format_log(result));
    if (result.deadlock) {
      std::cout << std::left << std::setw(6) << c.seed << result.diagnostic << '\n';
      all_true = false;
      continue;
    }
    for (const auto &v : check_local_satisfaction(result, scenario)) {
      std::cout << std::left << std::setw(6) << c.seed << std::setw(7) << v.agent + 1 << std::setw(8)
                << (v.motion ? "true" : "false") << std::setw(6) << (v.task ? "true" : "false")
                << (v.oracles_agree ? "yes" : "no") << '\n';
      all_true = all_true && v.motion && v.task && v.oracles_agree;
    }
  }
  return all_true ? ok : verdict_failed;
}

int cmd_render(const Options &o) {
  auto file = load_valid(o.scenario);
  if (!file) return invalid;
  auto strategies = load_strategies(o.strategies, file->scenario);
  std::string text = o.format == "svg" ? render_svg(strategies, file->scenario)
                                       : render_ascii(strategies, file->scenario);
  if (o.output.empty())
    std::cout << text;
  else
    write_text(o.output, text);
  return ok;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Decentralized multi-agent planning from LTL motion and task formulas"};
  app.require_subcommand(1);
  Options o;

  auto scenario_arg = [&](CLI::App *cmd) {
    cmd->add_option("scenario", o.scenario, "Scenario file")->required()->check(CLI::ExistingFile);
  };
  auto synthesis_flags = [&](CLI::App *cmd) {
    cmd->add_flag("--per-class", o.per_class, "One global product per dependency class");
    cmd->add_option("--cap", o.cap, "State budget for the global and centralized products");
    cmd->add_option("--dot-dir", o.dot_dir, "Write every automaton as Graphviz");
  };

  auto *check = app.add_subcommand("check", "Validate a scenario");
  scenario_arg(check);

  auto *synth = app.add_subcommand("synthesize", "Build strategies and print statistics");
  scenario_arg(synth);
  synthesis_flags(synth);
  synth->add_option("-o,--out", o.out_dir, "Directory for the strategy files");

  auto *stats = app.add_subcommand("stats", "Print product sizes without writing strategies");
  scenario_arg(stats);
  synthesis_flags(stats);

  auto *sim = app.add_subcommand("simulate", "Execute strategies and check every verdict");
  scenario_arg(sim);
  sim->add_option("strategies", o.strategies, "Strategy files, one per agent")->required()->check(CLI::ExistingFile);
  sim->add_option("--seed", o.seed, "First seed");
  sim->add_option("--runs", o.runs, "Number of seeds")->check(CLI::PositiveNumber);
  sim->add_option("--log-dir", o.log_dir, "Write one event log per seed");

  auto *render = app.add_subcommand("render", "Draw trajectories");
  scenario_arg(render);
  render->add_option("strategies", o.strategies, "Strategy files, one per agent")->required()->check(CLI::ExistingFile);
  render->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"ascii", "svg"}));
  render->add_option("-o,--output", o.output, "Output file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) return cmd_check(o);
    if (*synth) return run_synthesis(o, true);
    if (*stats) return run_synthesis(o, false);
    if (*sim) return cmd_simulate(o);
    if (*render) return cmd_render(o);
  } catch (const scenario_error &e) {
    std::cerr << o.scenario << ": " << e.what() << '\n';
  } catch (const parse_error &e) {
    std::cerr << o.scenario << ": formula " << e.what() << '\n';
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return invalid;
}
