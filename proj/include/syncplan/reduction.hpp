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

#include <vector>

#include "syncplan/buchi.hpp"

namespace syncplan {

struct ReductionReport {
  int removed_plain = 0;      // insignificant non-accepting states
  int removed_accepting = 0;  // insignificant accepting states
  int lifted_loops = 0;
  int kept_accepting = 0;     // accepting states kept for lack of a silent return path
};

// Removes insignificant states of `source` in ascending id order: first the
// non-accepting ones, bypassing them with concatenated transitions, then the
// accepting ones whose predecessors are all insignificant, lifting their
// silent self-loops onto the predecessors. Outgoing transitions of
// insignificant states must all be silent. The result's witness[t] lists
// source transitions, origin[q] the source state, and dependency (if the
// source has one) is taken from the first transition of each witness.
// Unreachable and non-coaccessible states are dropped and duplicates merged.
BuchiAutomaton eliminate_insignificant(const BuchiAutomaton &source,
                                       const std::vector<char> &significant,
                                       ReductionReport *report = nullptr);

// Replaces every transition by its witness; the result is a path of the
// source automaton.
std::vector<TransitionId> expand_witnesses(const BuchiAutomaton &reduced,
                                           const std::vector<TransitionId> &path);

}  // namespace syncplan
