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

#include "syncplan/executor.hpp"

#include <algorithm>
#include <deque>
#include <iomanip>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "syncplan/formula.hpp"
#include "syncplan/translate.hpp"

namespace syncplan {

void SimulationConfig::check() const {
  auto valid = [](const DurationRange &d) { return d.lo >= 0 && d.hi >= d.lo; };
  if (!valid(duration)) throw std::invalid_argument("duration range must satisfy 0 <= lo <= hi");
  for (const auto &[name, d] : overrides)
    if (!valid(d)) throw std::invalid_argument("duration override for " + name + " is invalid");
  if (unrollings < 2) throw std::invalid_argument("at least two cycle unrollings are required");
}

namespace {

std::string format_time(double t) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(6) << t;
  return out.str();
}

}  // namespace

SimulationResult simulate(const std::vector<Strategy> &strategies, const Scenario &scenario,
                          const SimulationConfig &config) {
  config.check();
  SimulationResult result;
  const int n = scenario.size();
  if (static_cast<int>(strategies.size()) != n)
    throw std::invalid_argument("one strategy per agent is required");

  struct Runner {
    std::vector<StrategyStep> plan;
    std::vector<double> durations;
    std::size_t position = 0;
    double time = 0;
    bool waiting = false;
  };
  std::vector<Runner> runners(n);
  result.behaviors.resize(n);
  for (int i = 0; i < n; ++i) {
    const auto &s = strategies[i];
    if (s.agent != i) throw std::invalid_argument("strategies must be ordered by agent");
    const auto &agent = scenario.agents[i];
    auto &r = runners[i];
    r.plan = s.prefix;
    for (int u = 0; u < config.unrollings; ++u) r.plan.insert(r.plan.end(), s.cycle.begin(), s.cycle.end());
    std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::mt19937_64 rng(seq);
    for (const auto &step : r.plan) {
      auto it = config.overrides.find(agent.ts.actions.name(step.action));
      const DurationRange &range = it == config.overrides.end() ? config.duration : it->second;
      r.durations.push_back(std::uniform_real_distribution<double>(range.lo, range.hi)(rng));
    }
    auto &b = result.behaviors[i];
    b.agent = i;
    b.prefix_steps = s.prefix.size();
    b.cycle_steps = s.cycle.size();
    b.unrollings = config.unrollings;
  }

  long next_event = 0;
  auto log = [&](double t, int agent, const char *kind, std::string payload) {
    result.log.push_back({t, agent, kind, std::move(payload)});
  };
  auto start_action = [&](int i, double state_time, double action_time, long event) {
    auto &r = runners[i];
    const auto &agent = scenario.agents[i];
    const auto &step = r.plan[r.position];
    double duration = r.durations[r.position];
    result.behaviors[i].steps.push_back(
        {step.state, step.action, step.sync, state_time, action_time, duration, event});
    const std::string &action = agent.ts.actions.name(step.action);
    log(action_time, i, "action-start", action + "@" + agent.ts.state_names[step.state]);
    if (!agent.is_silent(step.action))
      log(action_time, i, "service", scenario.services.format(*agent.action_labels[step.action]));
    r.time = action_time + duration;
    log(r.time, i, "action-end", action);
    ++r.position;
    r.waiting = false;
  };

  // Barrier occurrences are matched by coalition and rank.
  std::map<std::pair<AgentSet, int>, std::map<int, double>> arrivals;
  std::vector<std::map<AgentSet, int>> occurrences(n);
  std::vector<std::pair<AgentSet, int>> pending(n);

  bool progress = true;
  while (progress) {
    progress = false;
    for (int i = 0; i < n; ++i) {
      auto &r = runners[i];
      while (r.position < r.plan.size() && !r.waiting) {
        const auto &step = r.plan[r.position];
        if (!(step.sync & agent_bit(i)))
          throw std::invalid_argument("synchronization set must contain its issuer");
        if (step.sync == agent_bit(i)) {
          start_action(i, r.time, r.time, next_event++);
          progress = true;
          continue;
        }
        std::pair<AgentSet, int> key{step.sync, occurrences[i][step.sync]++};
        pending[i] = key;
        r.waiting = true;
        arrivals[key][i] = r.time;
        log(r.time, i, "sync-request", format_agents(step.sync));
        progress = true;
        auto &arrived = arrivals[key];
        if (static_cast<int>(arrived.size()) != count(step.sync)) break;
        double release = 0;
        for (auto &[m, t] : arrived) release = std::max(release, t);
        Barrier barrier{next_event++, step.sync, release, {}};
        for (auto &[m, t] : arrived) {
          barrier.waits.push_back(release - t);
          log(release, m, "barrier-release", format_agents(step.sync));
          start_action(m, t, release, barrier.event);
        }
        result.barriers.push_back(std::move(barrier));
        arrivals.erase(key);
      }
    }
  }

  for (int i = 0; i < n; ++i) {
    auto &r = runners[i];
    auto &b = result.behaviors[i];
    if (r.position < r.plan.size()) {
      result.deadlock = true;
      const auto &[coalition, rank] = pending[i];
      AgentSet present = 0;
      for (auto &[m, t] : arrivals[pending[i]]) present |= agent_bit(m);
      if (result.diagnostic.empty())
        result.diagnostic = "deadlock: coalition " + format_agents(coalition) + " (occurrence " +
                            std::to_string(rank + 1) + ") never completes; missing agents " +
                            format_agents(coalition & ~present);
      continue;
    }
    const auto &last = r.plan.back();
    auto next = scenario.agents[i].ts.successor(last.state, last.action);
    b.final_state = next.value_or(last.state);
    b.final_time = r.time;
  }
  std::stable_sort(result.log.begin(), result.log.end(), [](const LogEntry &a, const LogEntry &b) {
    return std::tie(a.time, a.agent) < std::tie(b.time, b.agent);
  });
  return result;
}

std::string format_log(const SimulationResult &result) {
  std::ostringstream out;
  for (const auto &e : result.log)
    out << format_time(e.time) << ' ' << (e.agent + 1) << ' ' << e.kind << ' ' << e.payload << '\n';
  return out.str();
}

UltimatelyPeriodicWord extract_local_word(const SimulationResult &result,
                                          const Scenario &scenario, int agent) {
  std::map<long, SymbolSet> provided;
  for (const auto &b : result.behaviors) {
    const auto &model = scenario.agents[b.agent];
    for (const auto &s : b.steps)
      if (!model.is_silent(s.action)) provided[s.event] |= *model.action_labels[s.action];
  }
  const auto &b = result.behaviors.at(agent);
  const auto &model = scenario.agents[agent];
  auto letters = [&](std::size_t from, std::size_t to) {
    std::vector<SymbolSet> out;
    for (std::size_t k = from; k < to && k < b.steps.size(); ++k)
      if (!model.is_silent(b.steps[k].action)) out.push_back(provided[b.steps[k].event]);
    return out;
  };
  UltimatelyPeriodicWord w;
  w.prefix = letters(0, b.prefix_steps);
  w.period = letters(b.prefix_steps, b.prefix_steps + b.cycle_steps);
  for (int u = 1; u < b.unrollings; ++u) {
    std::size_t from = b.prefix_steps + u * b.cycle_steps;
    if (letters(from, from + b.cycle_steps) != w.period)
      throw std::logic_error("local word of agent " + std::to_string(agent + 1) +
                             " is not periodic");
  }
  if (w.period.empty()) w.period.push_back(0);
  return w;
}

UltimatelyPeriodicWord trace_word(const Behavior &behavior, const Scenario &scenario) {
  const auto &ts = scenario.agents.at(behavior.agent).ts;
  UltimatelyPeriodicWord w;
  for (std::size_t k = 0; k < behavior.prefix_steps + behavior.cycle_steps; ++k) {
    SymbolSet label = ts.labels[behavior.steps.at(k).state];
    (k < behavior.prefix_steps ? w.prefix : w.period).push_back(label);
  }
  return w;
}

std::vector<Verdict> check_local_satisfaction(const SimulationResult &result,
                                              const Scenario &scenario) {
  std::vector<Verdict> verdicts;
  for (int i = 0; i < scenario.size(); ++i) {
    const auto &props = scenario.agents[i].ts.propositions;
    Formula phi = parse(scenario.motion_formulas.at(i), props);
    Formula psi = parse(scenario.task_formulas.at(i), scenario.services);
    auto trace = trace_word(result.behaviors.at(i), scenario);
    auto local = extract_local_word(result, scenario, i);
    Verdict v;
    v.agent = i;
    v.motion = eval_ltl(phi, trace);
    v.task = eval_ltl(psi, local);
    v.oracles_agree = check_lasso_membership(translate(phi, props), trace) == v.motion &&
                      check_lasso_membership(translate(psi, scenario.services), local) == v.task;
    verdicts.push_back(v);
  }
  return verdicts;
}

namespace {

bool universal(const BuchiAutomaton &a) {
  return a.num_states() == 1 && a.is_accepting(0) && a.num_transitions() == 1 &&
         a.transitions[0].label == Label::of_guard({});
}

Formula rename(const Formula &f, const Alphabet &from, Alphabet &to, const std::string &suffix) {
  if (f.op == Op::atom) {
    std::string name = from.name(f.atom) + suffix;
    return Formula::make_atom(name, to.add(name));
  }
  Formula g = f;
  for (auto &arg : g.args) arg = rename(arg, from, to, suffix);
  return g;
}

std::string format_count(double x) {
  std::ostringstream out;
  out << std::setprecision(12) << x;
  return out.str();
}

}  // namespace

CentralizedEstimate estimate_centralized(const Scenario &scenario, std::size_t cap) {
  CentralizedEstimate e;
  const int n = scenario.size();
  e.ts_states = 1;
  std::vector<BuchiAutomaton> automata;
  for (int i = 0; i < n; ++i) {
    const auto &props = scenario.agents[i].ts.propositions;
    e.ts_states *= scenario.agents[i].ts.num_states();
    automata.push_back(translate(parse(scenario.motion_formulas.at(i), props), props));
    automata.push_back(translate(parse(scenario.task_formulas.at(i), scenario.services),
                                 scenario.services));
  }
  std::string factors;
  e.automaton_states = 1;
  int nontrivial = 0;
  for (const auto &a : automata) {
    if (universal(a)) continue;
    ++nontrivial;
    e.automaton_states *= a.num_states();
    factors += (factors.empty() ? "" : "*") + std::to_string(a.num_states());
  }
  if (nontrivial >= 2) {
    e.automaton_states *= nontrivial + 1;
    factors += "*" + std::to_string(nontrivial + 1);
  }
  e.estimate = e.ts_states * e.automaton_states;
  std::string ts_factors;
  for (const auto &agent : scenario.agents)
    ts_factors += (ts_factors.empty() ? "" : "*") + std::to_string(agent.ts.num_states());
  e.formula = ts_factors + " * (" + (factors.empty() ? "1" : factors) + ") = " + format_count(e.estimate);
  if (e.estimate > static_cast<double>(cap)) return e;

  // Every agent moves at every step; the conjunction of all formulas reads
  // the agents' renamed propositions together with the provided services.
  Alphabet combined = scenario.services;
  Formula conjunction = Formula::truth();
  std::vector<std::vector<int>> prop_index(n);
  for (int i = 0; i < n; ++i) {
    const auto &props = scenario.agents[i].ts.propositions;
    std::string suffix = "@" + std::to_string(i + 1);
    Formula phi = rename(parse(scenario.motion_formulas[i], props), props, combined, suffix);
    Formula psi = parse(scenario.task_formulas[i], scenario.services);
    conjunction = Formula::binary(Op::conjunction, conjunction,
                                  Formula::binary(Op::conjunction, phi, psi));
    for (int p = 0; p < props.size(); ++p) prop_index[i].push_back(combined.add(props.name(p) + suffix));
  }
  if (combined.size() > max_symbols) return e;
  BuchiAutomaton spec = translate(conjunction, combined);
  auto spec_out = spec.out_edges();
  std::vector<std::vector<std::vector<int>>> ts_out(n);
  for (int i = 0; i < n; ++i) ts_out[i] = scenario.agents[i].ts.out_edges();

  using Key = std::pair<std::vector<TsState>, StateId>;
  std::set<Key> seen;
  std::deque<Key> queue;
  std::vector<TsState> start(n);
  for (int i = 0; i < n; ++i) start[i] = scenario.agents[i].ts.initial;
  seen.insert({start, spec.initial});
  queue.push_back({start, spec.initial});
  while (!queue.empty() && seen.size() <= cap) {
    auto [states, q] = queue.front();
    queue.pop_front();
    SymbolSet props = 0;
    for (int i = 0; i < n; ++i)
      for_each_member(scenario.agents[i].ts.labels[states[i]],
                      [&](int p) { props |= symbol_bit(prop_index[i][p]); });
    bool stuck = false;
    for (int i = 0; i < n; ++i) stuck = stuck || ts_out[i][states[i]].empty();
    if (stuck) continue;
    // Enumerate joint moves.
    std::vector<std::size_t> choice(n, 0);
    while (true) {
      std::vector<TsState> next(n);
      SymbolSet letter = props;
      for (int i = 0; i < n; ++i) {
        const auto &tr = scenario.agents[i].ts.transitions[ts_out[i][states[i]][choice[i]]];
        next[i] = tr.target;
        const auto &label = scenario.agents[i].action_labels.at(tr.action);
        if (label) letter |= *label;
      }
      for (TransitionId t : spec_out[q]) {
        if (!spec.transitions[t].label.guard.admits(letter)) continue;
        Key key{next, spec.transitions[t].target};
        if (seen.insert(key).second) queue.push_back(key);
      }
      int k = 0;
      while (k < n && ++choice[k] == ts_out[k][states[k]].size()) choice[k++] = 0;
      if (k == n) break;
    }
  }
  e.materialized = seen.size() <= cap;
  e.reachable = seen.size();
  return e;
}

}  // namespace syncplan
