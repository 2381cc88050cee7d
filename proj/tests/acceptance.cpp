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

// Prints one PASS/FAIL line per acceptance criterion; exits nonzero when
// any criterion fails.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "support.hpp"
#include "syncplan/pipeline.hpp"
#include "syncplan/scenario_io.hpp"

using namespace syncplan;
using namespace syncplan::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool condition, const std::string &what) {
    if (!condition) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

const std::string scenarios = SYNCPLAN_SCENARIOS;

Outcome state_space(const ScenarioFile &file, PipelineResult &result) {
  Outcome o;
  const auto &s = file.scenario;
  result = run_pipeline(s);
  auto estimate = estimate_centralized(s, 0);
  double ratio = estimate.estimate / result.global_states();
  o.detail << "time " << result.seconds << " s; reduced task products";
  for (const auto &st : result.stats) o.detail << ' ' << st.reduced_task;
  o.detail << " (reference 27 17 8); global " << result.global_states()
           << " (reference about 15000); estimate " << estimate.estimate << "; ratio " << ratio;
  o.require(result.seconds < 60, "time < 60 s");
  for (const auto &st : result.stats) o.require(st.reduced_task <= 60, "reduced task product <= 60");
  o.require(result.global_states() <= 50'000, "global product <= 50000");
  o.require(estimate.estimate >= 1e7, "estimate >= 1e7");
  o.require(ratio >= 100, "ratio >= 100");
  return o;
}

Outcome end_to_end(const ScenarioFile &file, const PipelineResult &result) {
  Outcome o;
  const auto &s = file.scenario;
  std::vector<Verdict> first;
  int deadlocks = 0, false_verdicts = 0;
  bool invariant = true;
  const int seeds = 5;
  for (int seed = 0; seed < seeds; ++seed) {
    SimulationConfig config;
    config.seed = seed;
    config.duration = {1, 5};
    auto r = simulate(result.strategies, s, config);
    if (r.deadlock) {
      ++deadlocks;
      continue;
    }
    auto verdicts = check_local_satisfaction(r, s);
    for (const auto &v : verdicts) false_verdicts += !v.motion + !v.task + !v.oracles_agree;
    if (seed == 0) first = verdicts;
    for (std::size_t i = 0; i < verdicts.size() && i < first.size(); ++i)
      invariant = invariant && verdicts[i].motion == first[i].motion && verdicts[i].task == first[i].task;
  }
  o.detail << seeds << " seeds, " << 2 * s.size() << " verdicts each; false " << false_verdicts
           << "; deadlocks " << deadlocks;
  o.require(false_verdicts == 0, "all verdicts true");
  o.require(deadlocks == 0, "no deadlock");
  o.require(invariant, "verdicts seed-invariant");
  return o;
}

Outcome translator() {
  Outcome o;
  auto start = Clock::now();
  std::mt19937 rng(20240101);
  const Alphabet atoms = letters(3);
  int checks = 0, disagreements = 0;
  for (int k = 0; k < 500; ++k) {
    Formula f = random_formula(rng, std::uniform_int_distribution<int>(1, 4)(rng), 3);
    auto automaton = translate(f, atoms);
    for (int j = 0; j < 20; ++j) {
      auto w = random_word(rng, 3);
      ++checks;
      disagreements += check_lasso_membership(automaton, w) != eval_ltl(f, w);
    }
  }
  double elapsed = seconds_since(start);
  o.detail << "500 formulas x 20 words; disagreements " << disagreements << " of " << checks
           << "; " << elapsed << " s";
  o.require(disagreements == 0, "100% agreement");
  o.require(elapsed < 120, "under 120 s");
  return o;
}

Outcome reduction(const PipelineResult &bundled) {
  Outcome o;
  std::mt19937 rng(99);
  int motion_cases = 0, motion_nonempty = 0, motion_bad = 0;
  for (; motion_cases < 150; ++motion_cases) {
    auto [agent, spec] = random_motion_instance(rng);
    auto p = build_motion_product(agent, spec);
    auto r = reduce(p);
    auto full = find_accepting_lasso(p.automaton);
    auto small = find_accepting_lasso(r.automaton);
    if (full.has_value() != small.has_value()) {
      ++motion_bad;
      continue;
    }
    if (!small) continue;
    ++motion_nonempty;
    Lasso expanded{expand_witnesses(r.automaton, small->prefix),
                   expand_witnesses(r.automaton, small->cycle)};
    bool ok = is_valid_lasso(p.automaton, expanded) &&
              service_sequence(p.automaton, expanded.prefix) == service_sequence(r.automaton, small->prefix) &&
              service_sequence(p.automaton, expanded.cycle) == service_sequence(r.automaton, small->cycle);
    motion_bad += !ok;
  }

  int task_cases = 0, task_nonempty = 0, task_bad = 0, over_bound = 0, bound_cases = 0;
  std::string worst;
  auto bound = [&](int reduced, const std::vector<char> &significant, const std::string &name) {
    int sig = 0;
    for (char c : significant) sig += c;
    ++bound_cases;
    if (reduced > 2 * sig) {
      ++over_bound;
      if (worst.empty()) worst = name + " " + std::to_string(reduced) + " > 2*" + std::to_string(sig);
    }
  };
  for (int round = 0; round < 80; ++round) {
    auto s = random_pair(rng);
    std::vector<TaskMotionProduct> products{build_task_product(s, 0), build_task_product(s, 1)};
    auto ga = compute_globally_assisting(products, 2);
    for (int i = 0; i < 2; ++i, ++task_cases) {
      const auto &tm = products[i];
      auto r = reduce_task_motion(tm, ga);
      bound(r.automaton.num_states(), r.significant, "random instance " + std::to_string(task_cases));
      auto full = find_accepting_lasso(tm.automaton);
      auto small = find_accepting_lasso(r.automaton);
      if (full.has_value() != small.has_value()) {
        ++task_bad;
        continue;
      }
      if (!small) continue;
      ++task_nonempty;
      Lasso expanded{expand_witnesses(r.automaton, small->prefix),
                     expand_witnesses(r.automaton, small->cycle)};
      bool ok = is_valid_lasso(tm.automaton, expanded) &&
                service_sequence_from(tm.automaton, expanded.prefix, r.significant) ==
                    service_sequence(r.automaton, small->prefix) &&
                service_sequence_from(tm.automaton, expanded.cycle, r.significant) ==
                    service_sequence(r.automaton, small->cycle);
      task_bad += !ok;
    }
  }
  for (std::size_t i = 0; i < bundled.artifacts.size(); ++i) {
    const auto &rt = bundled.artifacts[i].reduced_task;
    bound(rt.automaton.num_states(), rt.significant, "bundled agent " + std::to_string(i + 1));
  }

  o.detail << "motion " << motion_cases << " cases (" << motion_nonempty << " nonempty), "
           << motion_bad << " mismatches; task " << task_cases << " cases (" << task_nonempty
           << " nonempty), " << task_bad << " mismatches; size bound exceeded on " << over_bound
           << " of " << bound_cases;
  if (!worst.empty()) o.detail << ", first: " << worst;
  o.require(motion_bad == 0, "motion reduction preserves runs");
  o.require(task_bad == 0, "task reduction preserves runs");
  o.require(over_bound == 0, "reduced size <= 2 * significant");
  return o;
}

Outcome timing(const ScenarioFile &file, const PipelineResult &result) {
  Outcome o;
  int behaviors = 0, steps = 0, identity_errors = 0, barriers = 0, no_zero_wait = 0;
  auto check = [&](const SimulationResult &r) {
    for (const auto &b : r.behaviors) {
      ++behaviors;
      if (b.steps.empty() || std::abs(b.steps.front().state_time) > 1e-9) ++identity_errors;
      for (std::size_t j = 0; j < b.steps.size(); ++j) {
        ++steps;
        const auto &s = b.steps[j];
        double next = j + 1 < b.steps.size() ? b.steps[j + 1].state_time : b.final_time;
        if (std::abs(next - s.action_time - s.duration) > 1e-9 || s.action_time < s.state_time - 1e-9)
          ++identity_errors;
      }
    }
    for (const auto &barrier : r.barriers) {
      ++barriers;
      bool zero = false;
      for (double w : barrier.waits) zero = zero || std::abs(w) <= 1e-9;
      no_zero_wait += !zero;
    }
  };
  for (int seed = 0; seed < 5; ++seed) {
    SimulationConfig config;
    config.seed = seed;
    check(simulate(result.strategies, file.scenario, config));
  }
  auto pairs = load_scenario(scenarios + "/pairs.json");
  auto pair_strategies = run_pipeline(pairs.scenario).strategies;
  for (int seed = 0; seed < 5; ++seed) {
    SimulationConfig config;
    config.seed = seed;
    check(simulate(pair_strategies, pairs.scenario, config));
  }
  o.detail << behaviors << " behaviors, " << steps << " steps, " << identity_errors
           << " identity violations; " << barriers << " barriers, " << no_zero_wait
           << " without a zero-wait member";
  o.require(identity_errors == 0, "timing identities");
  o.require(barriers > 0, "barriers exercised");
  o.require(no_zero_wait == 0, "zero-wait member");
  return o;
}

Outcome asymmetry() {
  Outcome o;
  auto file = load_scenario(scenarios + "/asymmetry.json");
  const auto &s = file.scenario;
  std::vector<Strategy> strategies{read_strategy(read_file(scenarios + "/asymmetry/giver.json"), s),
                                   read_strategy(read_file(scenarios + "/asymmetry/passer.json"), s)};
  auto r = simulate(strategies, s, file.simulation.value_or(SimulationConfig{}));
  o.require(!r.deadlock, "no deadlock");
  if (r.deadlock) return o;
  auto v = check_local_satisfaction(r, s);
  o.detail << "formula '" << s.task_formulas[0] << "' for both agents; agent 1 "
           << (v[0].task ? "satisfied" : "violated") << ", agent 2 "
           << (v[1].task ? "satisfied" : "violated");
  o.require(s.task_formulas[0] == s.task_formulas[1], "same formula");
  o.require(v[0].task && !v[1].task, "agent 1 satisfied, agent 2 violated");
  o.require(v[0].oracles_agree && v[1].oracles_agree, "oracles agree");
  return o;
}

}  // namespace

int main() {
  auto warehouse = load_scenario(scenarios + "/warehouse.json");
  PipelineResult result;
  std::vector<std::pair<std::string, Outcome>> outcomes;
  outcomes.emplace_back("state-space reduction", state_space(warehouse, result));
  outcomes.emplace_back("end-to-end correctness", end_to_end(warehouse, result));
  outcomes.emplace_back("translator validation", translator());
  outcomes.emplace_back("reduction soundness", reduction(result));
  outcomes.emplace_back("timing semantics", timing(warehouse, result));
  outcomes.emplace_back("local-satisfaction asymmetry", asymmetry());
  bool all = true;
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    const auto &[name, o] = outcomes[k];
    std::cout << "criterion " << k + 1 << ' ' << (o.pass ? "PASS" : "FAIL") << ' ' << name << ": "
              << o.detail.str() << '\n';
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
