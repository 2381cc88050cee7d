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

#include "syncplan/render.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace syncplan {
namespace {

constexpr double cell_px = 40;
constexpr double margin = 20;
const char *const palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                               "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

const GridSpec &grid_of(const AgentModel &agent) {
  if (!agent.grid) throw render_error(agent.name + " is not a grid agent");
  return *agent.grid;
}

void check_inputs(const std::vector<Strategy> &strategies, const Scenario &scenario) {
  if (strategies.size() != scenario.agents.size())
    throw render_error("one strategy per agent is required");
  if (scenario.agents.empty()) throw render_error("the scenario has no agents");
  const auto &first = grid_of(scenario.agents[0]);
  for (const auto &agent : scenario.agents) {
    const auto &g = grid_of(agent);
    if (g.width != first.width || g.height != first.height)
      throw render_error("agents live on grids of different sizes");
  }
}

std::vector<StrategyStep> one_pass(const Strategy &s) {
  std::vector<StrategyStep> steps = s.prefix;
  steps.insert(steps.end(), s.cycle.begin(), s.cycle.end());
  return steps;
}

struct Point {
  double x, y;
};

Point center(Cell c, int height) {
  return {margin + (c.x + 0.5) * cell_px, margin + (height - c.y - 0.5) * cell_px};
}

std::string star(Point p, double outer, const char *color) {
  std::ostringstream out;
  out << "<polygon class=\"star\" fill=\"" << color << "\" stroke=\"black\" points=\"";
  for (int k = 0; k < 10; ++k) {
    double r = k % 2 ? outer * 0.45 : outer;
    double angle = M_PI / 2 + k * M_PI / 5;
    out << (k ? " " : "") << p.x + r * std::cos(angle) << ',' << p.y - r * std::sin(angle);
  }
  out << "\"/>\n";
  return out.str();
}

}  // namespace

std::vector<Cell> trajectory(const Strategy &strategy, const AgentModel &agent) {
  std::vector<Cell> out;
  auto visit = [&](TsState s) {
    Cell c = agent.state_cells.at(s);
    if (out.empty() || out.back() != c) out.push_back(c);
  };
  for (const auto &step : one_pass(strategy)) visit(step.state);
  if (!strategy.cycle.empty()) visit(strategy.cycle.front().state);
  return out;
}

std::vector<Cell> coalition_services(const Strategy &strategy, const AgentModel &agent) {
  std::vector<Cell> out;
  for (const auto &step : one_pass(strategy))
    if (count(step.sync) > 1 && !agent.is_silent(step.action))
      out.push_back(agent.state_cells.at(step.state));
  return out;
}

std::string render_ascii(const std::vector<Strategy> &strategies, const Scenario &scenario) {
  check_inputs(strategies, scenario);
  std::ostringstream out;
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    const auto &agent = scenario.agents[i];
    const auto &g = grid_of(agent);
    std::vector<std::string> rows(g.height, std::string(g.width, '.'));
    auto put = [&](Cell c, char glyph) { rows[g.height - 1 - c.y][c.x] = glyph; };
    for (Cell c : g.obstacles) put(c, '#');
    for (Cell c : trajectory(strategies[i], agent)) put(c, 'o');
    put(agent.state_cells.at(agent.ts.initial), '@');
    for (Cell c : coalition_services(strategies[i], agent)) put(c, '*');
    out << "agent " << i + 1 << ' ' << agent.name << '\n';
    for (const auto &row : rows) out << row << '\n';
  }
  return out.str();
}

std::string render_svg(const std::vector<Strategy> &strategies, const Scenario &scenario) {
  check_inputs(strategies, scenario);
  const auto &base = grid_of(scenario.agents[0]);
  const int width = base.width, height = base.height;
  std::set<Cell> obstacles;
  std::set<std::pair<Cell, Cell>> walls;
  std::map<Cell, std::set<std::string>> services;
  for (const auto &agent : scenario.agents) {
    const auto &g = grid_of(agent);
    obstacles.insert(g.obstacles.begin(), g.obstacles.end());
    for (auto [a, b] : g.walls) walls.insert(std::minmax(a, b));
    for (const auto &sc : g.service_cells) services[sc.cell].insert(sc.services.begin(), sc.services.end());
  }

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 2 * margin + width * cell_px
      << "\" height=\"" << 2 * margin + height * cell_px << "\" font-family=\"sans-serif\">\n";
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      Cell c{x, y};
      const char *fill = obstacles.count(c) ? "#555555" : services.count(c) ? "#fff2b3" : "white";
      out << "<rect x=\"" << margin + x * cell_px << "\" y=\"" << margin + (height - 1 - y) * cell_px
          << "\" width=\"" << cell_px << "\" height=\"" << cell_px << "\" fill=\"" << fill
          << "\" stroke=\"#cccccc\"/>\n";
    }
  }
  for (const auto &[c, names] : services) {
    std::string text;
    for (const auto &n : names) text += (text.empty() ? "" : ",") + n;
    Point p = center(c, height);
    out << "<text x=\"" << p.x << "\" y=\"" << p.y - cell_px * 0.3
        << "\" font-size=\"8\" text-anchor=\"middle\">" << text << "</text>\n";
  }
  for (auto [a, b] : walls) {
    // The wall is the shared edge of two adjacent cells.
    Point pa = center(a, height), pb = center(b, height);
    Point mid{(pa.x + pb.x) / 2, (pa.y + pb.y) / 2};
    double dx = a.x == b.x ? cell_px / 2 : 0, dy = a.y == b.y ? cell_px / 2 : 0;
    out << "<line class=\"wall\" x1=\"" << mid.x - dx << "\" y1=\"" << mid.y - dy << "\" x2=\""
        << mid.x + dx << "\" y2=\"" << mid.y + dy << "\" stroke=\"black\" stroke-width=\"4\"/>\n";
  }
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    const auto &agent = scenario.agents[i];
    const char *color = palette[i % std::size(palette)];
    // Agents sharing a cell are told apart by a small offset.
    double shift = (static_cast<double>(i) - (strategies.size() - 1) / 2.0) * 4;
    auto path = trajectory(strategies[i], agent);
    if (path.size() > 1) {
      out << "<polyline class=\"trajectory\" fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"2\" points=\"";
      for (std::size_t k = 0; k < path.size(); ++k) {
        Point p = center(path[k], height);
        out << (k ? " " : "") << p.x + shift << ',' << p.y + shift;
      }
      out << "\"/>\n";
    }
    Point start = center(agent.state_cells.at(agent.ts.initial), height);
    out << "<circle class=\"start\" cx=\"" << start.x + shift << "\" cy=\"" << start.y + shift
        << "\" r=\"5\" fill=\"" << color << "\"/>\n";
    std::set<Cell> starred;
    for (Cell c : coalition_services(strategies[i], agent)) {
      if (!starred.insert(c).second) continue;
      Point p = center(c, height);
      out << star({p.x + shift, p.y + shift}, 9, color);
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace syncplan
