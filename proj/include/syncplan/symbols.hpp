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

#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace syncplan {

// A set of symbols (propositions or services) drawn from an Alphabet,
// stored as a bitmask. Bit k stands for the alphabet's k-th name.
using SymbolSet = std::uint64_t;

// A set of agents, bit k is agent k (0-based).
using AgentSet = std::uint32_t;

inline constexpr int max_symbols = 64;
inline constexpr int max_agents = 32;

constexpr SymbolSet symbol_bit(int index) { return SymbolSet{1} << index; }
constexpr AgentSet agent_bit(int agent) { return AgentSet{1} << agent; }

constexpr bool contains(SymbolSet set, int index) {
  return (set >> index) & 1U;
}

constexpr int count(SymbolSet set) { return std::popcount(set); }

// Calls f(index) for each member of the set in ascending order.
template <typename F>
void for_each_member(std::uint64_t set, F &&f) {
  while (set != 0) {
    int index = std::countr_zero(set);
    f(index);
    set &= set - 1;
  }
}

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  // Returns the index of the name, adding it when absent.
  int add(std::string_view name);
  std::optional<int> find(std::string_view name) const;
  int index_of(std::string_view name) const;

  const std::string &name(int index) const { return names_.at(index); }
  const std::vector<std::string> &names() const { return names_; }
  int size() const { return static_cast<int>(names_.size()); }
  SymbolSet universe() const;

  // "{a,b}" in index order.
  std::string format(SymbolSet set) const;
  SymbolSet parse_set(const std::vector<std::string> &members) const;

  bool operator==(const Alphabet &) const = default;

 private:
  std::vector<std::string> names_;
};

std::string format_agents(AgentSet agents);

}  // namespace syncplan
