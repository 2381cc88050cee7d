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

#include "syncplan/dot.hpp"

#include <sstream>

namespace syncplan {
namespace {

std::string escape(const std::string &text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string to_dot(const BuchiAutomaton &a, const DotOptions &options) {
  std::ostringstream out;
  out << "digraph \"" << escape(options.name) << "\" {\n  rankdir=LR;\n";
  out << "  init [shape=point];\n";
  for (StateId q = 0; q < a.num_states(); ++q) {
    std::string name = q < static_cast<int>(options.state_names.size())
                           ? options.state_names[q]
                           : std::to_string(q);
    out << "  q" << q << " [label=\"" << escape(name) << "\", shape="
        << (a.is_accepting(q) ? "doublecircle" : "circle") << "];\n";
  }
  out << "  init -> q" << a.initial << ";\n";
  for (TransitionId t = 0; t < a.num_transitions(); ++t) {
    const auto &tr = a.transitions[t];
    std::string label = format_label(tr.label, a.alphabet);
    if (options.show_dependencies && a.has_dependencies())
      label += " / Dep=" + format_agents(a.dependency[t]);
    out << "  q" << tr.source << " -> q" << tr.target << " [label=\"" << escape(label) << "\"";
    if (a.has_witnesses()) out << ", tooltip=\"witness " << a.witness[t].size() << "\"";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace syncplan
