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

#include <doctest.h>

#include <random>

#include "support.hpp"
#include "syncplan/pipeline.hpp"
#include "syncplan/scenario_io.hpp"
#include "syncplan/translate.hpp"

using namespace syncplan;
using namespace syncplan::testing;

namespace {

const PipelineResult &warehouse() {
  static const auto scenario = load_scenario(SYNCPLAN_SCENARIOS "/warehouse.json").scenario;
  static const auto result = run_pipeline(scenario);
  return result;
}

const Scenario &warehouse_scenario() {
  static const auto scenario = load_scenario(SYNCPLAN_SCENARIOS "/warehouse.json").scenario;
  return scenario;
}

SymbolSet service(const Scenario &s, const char *name) { return symbol_bit(*s.services.find(name)); }

}  // namespace

TEST_CASE("a trivial task cycles the counter through every value") {
  Scenario s;
  GridSpec cell;
  s.agents.push_back(build_grid_agent(cell, 0, "still", s.services));
  s.motion_formulas = {"true"};
  s.task_formulas = {"true"};
  auto tm = build_task_product(s, 0);
  REQUIRE(tm.automaton.num_states() == 3);
  for (const auto &t : tm.automaton.transitions) {
    CHECK(t.label.is_silent());
    int from = tm.states[t.source].counter;
    CHECK(tm.states[t.target].counter == from % 3 + 1);
  }
  for (StateId q = 0; q < 3; ++q)
    CHECK(tm.automaton.is_accepting(q) == (tm.states[q].counter == 2));
  CHECK(tm.idle_tail_accepted == std::vector<char>{1});
  CHECK(find_accepting_lasso(tm.automaton));
}

TEST_CASE("the first load needs both helpers") {
  const auto &s = warehouse_scenario();
  const auto &tm = warehouse().artifacts[0].task_motion;
  SymbolSet load = service(s, "load"), unload = service(s, "unload");
  SymbolSet help = service(s, "help"), assist = service(s, "assist");
  bool saw_load = false, saw_help_only = false, saw_assist_only = false;
  for (TransitionId t = 0; t < tm.automaton.num_transitions(); ++t) {
    const auto &tr = tm.automaton.transitions[t];
    AgentSet dep = tm.automaton.dependency[t];
    if (tr.label.is_silent()) {
      CHECK(dep == agent_bit(0));
      continue;
    }
    SymbolSet sigma = tr.label.services;
    if (sigma & load) {
      saw_load = true;
      CHECK((sigma & (help | assist)) == (help | assist));
      CHECK(dep == 0b111);
    }
    if ((sigma & unload) && !(sigma & load)) {
      saw_help_only = saw_help_only || dep == 0b011;
      saw_assist_only = saw_assist_only || dep == 0b101;
    }
  }
  CHECK(saw_load);
  CHECK(saw_help_only);
  CHECK(saw_assist_only);
}

TEST_CASE("assisting services") {
  const auto &s = warehouse_scenario();
  const auto &tm = warehouse().artifacts[0].task_motion;
  int load = *s.services.find("load");
  CHECK_THROWS_AS(compute_assisting(tm, 0, load), std::invalid_argument);

  // Adding or dropping the service from a label gives the same answer.
  for (TransitionId t = 0; t < tm.automaton.num_transitions(); ++t) {
    const auto &tr = tm.automaton.transitions[t];
    if (tr.label.is_silent()) continue;
    for (int x = 0; x < s.services.size(); ++x) {
      if (contains(tm.own_services, x)) continue;
      SymbolSet flipped = tr.label.services ^ symbol_bit(x);
      for (TransitionId u = 0; u < tm.automaton.num_transitions(); ++u) {
        const auto &other = tm.automaton.transitions[u];
        if (other.source == tr.source && other.target == tr.target &&
            !other.label.is_silent() && other.label.services == flipped)
          CHECK(compute_assisting(tm, t, x) == compute_assisting(tm, u, x));
      }
    }
  }
}

TEST_CASE("globally assisting services") {
  const auto &s = warehouse_scenario();
  const auto &ga = warehouse().globally_assisting;
  REQUIRE(ga.size() == 3);
  CHECK(ga[0] == 0);
  CHECK(ga[1] == service(s, "help"));
  CHECK(ga[2] == service(s, "assist"));

  Scenario single;
  single.services = letters(1);
  std::mt19937 rng(3);
  single.agents.push_back(random_agent(rng, 0, 3, 0b1));
  single.motion_formulas = {"true"};
  single.task_formulas = {"G F a"};
  CHECK(compute_globally_assisting({build_task_product(single, 0)}, 1) == std::vector<SymbolSet>{0});
}

TEST_CASE("task reduction preserves emptiness and runs on random pairs") {
  std::mt19937 rng(77);
  int nonempty = 0;
  for (int round = 0; round < 120; ++round) {
    auto s = random_pair(rng);
    std::vector<TaskMotionProduct> products{build_task_product(s, 0), build_task_product(s, 1)};
    auto ga = compute_globally_assisting(products, 2);
    for (int i = 0; i < 2; ++i) {
      const auto &tm = products[i];
      auto r = reduce_task_motion(tm, ga);
      CHECK(r.automaton.num_states() <= tm.automaton.num_states());
      auto full = find_accepting_lasso(tm.automaton);
      auto reduced = find_accepting_lasso(r.automaton);
      REQUIRE(full.has_value() == reduced.has_value());
      if (!reduced) continue;
      ++nonempty;
      Lasso expanded{expand_witnesses(r.automaton, reduced->prefix),
                     expand_witnesses(r.automaton, reduced->cycle)};
      CHECK(is_valid_lasso(tm.automaton, expanded));
      CHECK(service_sequence_from(tm.automaton, expanded.prefix, r.significant) ==
            service_sequence(r.automaton, reduced->prefix));
      CHECK(service_sequence_from(tm.automaton, expanded.cycle, r.significant) ==
            service_sequence(r.automaton, reduced->cycle));

      // Dependencies of kept transitions come from their first witness step.
      for (TransitionId t = 0; t < r.automaton.num_transitions(); ++t)
        CHECK(r.automaton.dependency[t] ==
              tm.automaton.dependency[r.automaton.witness[t].front()]);

      // When the cycle provides services, the services along the run
      // satisfy the task formula.
      UltimatelyPeriodicWord w{service_sequence(tm.automaton, expanded.prefix),
                               service_sequence(tm.automaton, expanded.cycle)};
      if (!w.period.empty())
        CHECK(eval_ltl(parse(s.task_formulas[i], s.services), w));
    }
  }
  CHECK(nonempty > 40);
}
