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

#include "syncplan/buchi.hpp"
#include "syncplan/formula.hpp"

namespace syncplan {

// LTL to Buchi automaton: on-the-fly tableau into a generalized automaton,
// then counter degeneralization, pruning and duplicate merging. Transition
// labels are guard cubes over `alphabet` (the one f was parsed against).
BuchiAutomaton translate(const Formula &f, const Alphabet &alphabet);

}  // namespace syncplan
