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

#include <string>
#include <vector>

#include "syncplan/buchi.hpp"

namespace syncplan {

struct DotOptions {
  std::string name = "automaton";
  std::vector<std::string> state_names;  // optional, indexed by state id
  bool show_dependencies = false;
};

// Graphviz text: accepting states are doubled circles, silent labels print
// as eps_i, witness lengths become edge tooltips.
std::string to_dot(const BuchiAutomaton &a, const DotOptions &options = {});

}  // namespace syncplan
