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

#include "syncplan/pipeline.hpp"

#include <algorithm>
#include <chrono>

#include "syncplan/formula.hpp"
#include "syncplan/translate.hpp"

namespace syncplan {

int PipelineResult::global_states() const {
  int total = 0;
  for (const auto &g : globals) total += g.automaton.num_states();
  return total;
}

PipelineResult run_pipeline(const Scenario &scenario, const PipelineOptions &options) {
  auto started = std::chrono::steady_clock::now();
  PipelineResult r;
  const int n = scenario.size();
  r.artifacts.resize(n);
  r.stats.resize(n);

  for (int i = 0; i < n; ++i) {
    const auto &agent = scenario.agents[i];
    auto &art = r.artifacts[i];
    auto &st = r.stats[i];
    const auto &props = agent.ts.propositions;
    art.motion_spec = translate(parse(scenario.motion_formulas.at(i), props), props);
    art.task_spec = translate(parse(scenario.task_formulas.at(i), scenario.services),
                              scenario.services);
    art.motion = build_motion_product(agent, art.motion_spec, scenario.services);
    art.reduced_motion = reduce(art.motion);
    st.motion_spec_states = art.motion_spec.num_states();
    st.task_spec_states = art.task_spec.num_states();
    st.motion_product = art.motion.automaton.num_states();
    st.reduced_motion = art.reduced_motion.automaton.num_states();
    if (!find_accepting_lasso(art.reduced_motion.automaton))
      throw emptiness_error("motion", i, "agent " + std::to_string(i + 1) +
                                             ": no trace satisfies the motion formula");
    art.task_motion = build_task_motion_product(art.reduced_motion, art.task_spec, scenario, i);
    compute_dep(art.task_motion);
    st.task_motion = art.task_motion.automaton.num_states();
  }

  std::vector<TaskMotionProduct> products;
  for (const auto &art : r.artifacts) products.push_back(art.task_motion);
  r.globally_assisting = compute_globally_assisting(products, n);
  r.classes = compute_dependency_classes(products, n);

  for (int i = 0; i < n; ++i) {
    auto &art = r.artifacts[i];
    art.reduced_task = reduce_task_motion(art.task_motion, r.globally_assisting);
    const auto &sig = art.reduced_task.significant;
    r.stats[i].significant_task_motion = static_cast<int>(std::count(sig.begin(), sig.end(), 1));
    r.stats[i].reduced_task = art.reduced_task.automaton.num_states();
    if (!find_accepting_lasso(art.reduced_task.automaton))
      throw emptiness_error("task", i, "agent " + std::to_string(i + 1) +
                                           ": no run satisfies the task formula");
  }

  std::vector<std::vector<int>> groups;
  if (options.per_class) {
    groups = r.classes;
  } else {
    groups.emplace_back(n);
    for (int i = 0; i < n; ++i) groups[0][i] = i;
  }
  const auto owners = scenario.service_owners();
  r.strategies.resize(n);
  for (const auto &members : groups) {
    r.globals.push_back(build_global_product(r.artifacts, members, owners, options.state_cap));
    const auto &gp = r.globals.back();
    auto lasso = find_global_lasso(gp, r.artifacts);
    if (!lasso) throw emptiness_error("global", -1, "the global product has no accepting run");
    r.lassos.push_back(*lasso);
    for (auto &s : synthesize(gp, *lasso, r.artifacts)) r.strategies[s.agent] = std::move(s);
  }
  r.strategies = minimize_synchronizations(std::move(r.strategies), scenario);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return r;
}

}  // namespace syncplan
