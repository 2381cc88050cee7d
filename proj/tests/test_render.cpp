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

#include <sstream>

#include "syncplan/pipeline.hpp"
#include "syncplan/render.hpp"
#include "syncplan/scenario_io.hpp"

using namespace syncplan;

namespace {

int occurrences(const std::string &text, const std::string &needle) {
  int n = 0;
  for (auto at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++n;
  return n;
}

std::vector<std::string> lines(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("the bundled figure has three trajectories and coalition stars") {
  auto file = load_scenario(SYNCPLAN_SCENARIOS "/warehouse.json");
  const auto &s = file.scenario;
  auto strategies = run_pipeline(s).strategies;
  auto svg = render_svg(strategies, s);
  CHECK(occurrences(svg, "<polyline") == 3);
  CHECK(occurrences(svg, "class=\"start\"") == 3);
  CHECK(occurrences(svg, "class=\"star\"") >= 3);
  CHECK(occurrences(svg, "class=\"wall\"") > 0);
  CHECK(svg == render_svg(strategies, s));

  auto frames = lines(render_ascii(strategies, s));
  REQUIRE(frames.size() == 3 * 11);
  for (int i = 0; i < 3; ++i) {
    CHECK(frames[i * 11].rfind("agent " + std::to_string(i + 1), 0) == 0);
    for (int row = 1; row <= 10; ++row) CHECK(frames[i * 11 + row].size() == 10);
  }
  // The ground agent starts at (4, 0): bottom row, fifth column.
  CHECK(frames[10][4] == '@');
  CHECK(frames[10][0] == '*');
}

TEST_CASE("a stationary agent is a single marker") {
  auto s = parse_scenario(R"({
    "agents": [{"services": [], "grid": {"width": 2, "height": 2}, "initial": [1, 1]}],
    "motion_formulas": ["true"],
    "task_formulas": ["true"]
  })").scenario;
  TsState start = s.agents[0].ts.initial;
  Strategy still{0, {}, {{start, *s.agents[0].ts.actions.find("stay"), 1}}};
  CHECK(trajectory(still, s.agents[0]) == std::vector<Cell>{{1, 1}});
  auto svg = render_svg({still}, s);
  CHECK(occurrences(svg, "<polyline") == 0);
  CHECK(occurrences(svg, "class=\"start\"") == 1);
  CHECK(render_ascii({still}, s) == "agent 1 agent1\n.@\n..\n");
}

TEST_CASE("non-grid scenarios are rejected") {
  auto s = load_scenario(SYNCPLAN_SCENARIOS "/asymmetry.json").scenario;
  std::vector<Strategy> idle{{0, {}, {{0, 0, 1}}}, {1, {}, {{0, 0, 2}}}};
  CHECK_THROWS_AS(render_svg(idle, s), render_error);
  CHECK_THROWS_AS(render_ascii(idle, s), render_error);
}
