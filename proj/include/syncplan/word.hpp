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

#include <cstddef>
#include <string>
#include <vector>

#include "syncplan/symbols.hpp"

namespace syncplan {

// prefix . period^omega
struct UltimatelyPeriodicWord {
  std::vector<SymbolSet> prefix;
  std::vector<SymbolSet> period;

  std::size_t positions() const { return prefix.size() + period.size(); }

  // Successor of a position in the folded representation.
  std::size_t next(std::size_t position) const {
    return position + 1 < positions() ? position + 1 : prefix.size();
  }

  SymbolSet at(std::size_t position) const {
    return position < prefix.size() ? prefix[position]
                                     : period[position - prefix.size()];
  }

  // Letter at an arbitrary (unfolded) index.
  SymbolSet letter(std::size_t index) const {
    if (index < prefix.size()) return prefix[index];
    return period[(index - prefix.size()) % period.size()];
  }

  SymbolSet symbols_used() const {
    SymbolSet all = 0;
    for (auto s : prefix) all |= s;
    for (auto s : period) all |= s;
    return all;
  }

  bool operator==(const UltimatelyPeriodicWord &) const = default;
};

std::string format_word(const UltimatelyPeriodicWord &w, const Alphabet &alphabet);

}  // namespace syncplan
