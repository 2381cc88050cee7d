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

#include "syncplan/symbols.hpp"

#include <algorithm>

namespace syncplan {

Alphabet::Alphabet(std::vector<std::string> names) {
  for (auto &name : names) add(name);
}

int Alphabet::add(std::string_view name) {
  if (auto found = find(name)) return *found;
  if (size() >= max_symbols) {
    throw std::length_error("alphabet exceeds " + std::to_string(max_symbols) +
                            " symbols");
  }
  names_.emplace_back(name);
  return size() - 1;
}

std::optional<int> Alphabet::find(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<int>(it - names_.begin());
}

int Alphabet::index_of(std::string_view name) const {
  if (auto found = find(name)) return *found;
  throw std::out_of_range("unknown symbol '" + std::string(name) + "'");
}

SymbolSet Alphabet::universe() const {
  if (size() == max_symbols) return ~SymbolSet{0};
  return symbol_bit(size()) - 1;
}

std::string Alphabet::format(SymbolSet set) const {
  std::string out = "{";
  bool first = true;
  for_each_member(set, [&](int index) {
    if (!first) out += ",";
    first = false;
    out += index < size() ? names_[index] : "#" + std::to_string(index);
  });
  return out + "}";
}

SymbolSet Alphabet::parse_set(const std::vector<std::string> &members) const {
  SymbolSet set = 0;
  for (const auto &m : members) set |= symbol_bit(index_of(m));
  return set;
}

std::string format_agents(AgentSet agents) {
  std::string out = "{";
  bool first = true;
  for_each_member(agents, [&](int agent) {
    if (!first) out += ",";
    first = false;
    out += std::to_string(agent + 1);
  });
  return out + "}";
}

}  // namespace syncplan
