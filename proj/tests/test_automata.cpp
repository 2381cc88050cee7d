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

#include <algorithm>

#include "support.hpp"
#include "syncplan/dot.hpp"
#include "syncplan/translate.hpp"

using namespace syncplan;
using namespace syncplan::testing;

namespace {

const Label any = Label::of_guard({});

// All lassos of the form prefix+cycle with |prefix|+|cycle| <= bound,
// enumerated by brute force over transition sequences.
std::vector<Lasso> enumerate_lassos(const BuchiAutomaton &a, std::size_t bound) {
  std::vector<Lasso> found;
  std::vector<TransitionId> path;
  auto out = a.out_edges();
  auto recurse = [&](auto &self, StateId q) -> void {
    for (std::size_t split = 0; split < path.size(); ++split) {
      Lasso l{{path.begin(), path.begin() + split}, {path.begin() + split, path.end()}};
      if (is_valid_lasso(a, l)) found.push_back(l);
    }
    if (path.size() == bound) return;
    for (TransitionId t : out[q]) {
      path.push_back(t);
      self(self, a.transitions[t].target);
      path.pop_back();
    }
  };
  recurse(recurse, a.initial);
  return found;
}

}  // namespace

TEST_CASE("lasso on the smallest accepting automaton") {
  BuchiAutomaton a;
  a.add_state(true);
  a.add_transition(0, any, 0);
  auto l = find_accepting_lasso(a);
  REQUIRE(l);
  CHECK(l->prefix.empty());
  CHECK(l->cycle == std::vector<TransitionId>{0});
}

TEST_CASE("unreachable accepting state gives no lasso") {
  BuchiAutomaton a;
  a.add_state(false);
  a.add_state(true);
  a.add_transition(0, any, 0);
  a.add_transition(1, any, 1);
  CHECK_FALSE(find_accepting_lasso(a));
}

TEST_CASE("chain lasso matches exhaustive enumeration") {
  BuchiAutomaton a;
  a.add_state(false);
  a.add_state(false);
  a.add_state(true);
  a.add_transition(0, any, 1);
  a.add_transition(1, any, 2);
  a.add_transition(2, any, 2);
  // Shortest lassos by (prefix, cycle) found by enumeration up to length 4.
  auto all = enumerate_lassos(a, 4);
  REQUIRE(!all.empty());
  auto best = *std::min_element(all.begin(), all.end(), [](const Lasso &x, const Lasso &y) {
    return std::make_pair(x.prefix.size(), x.cycle.size()) <
           std::make_pair(y.prefix.size(), y.cycle.size());
  });
  CHECK(best.prefix == std::vector<TransitionId>{0, 1});
  CHECK(best.cycle == std::vector<TransitionId>{2});
  auto l = find_accepting_lasso(a);
  REQUIRE(l);
  CHECK(l->prefix == best.prefix);
  CHECK(l->cycle == best.cycle);
}

TEST_CASE("lasso search prefers the shortest prefix and cycle") {
  std::mt19937 rng(8);
  for (int n = 0; n < 200; ++n) {
    auto a = random_automaton(rng, 5, 1, 0.3);
    auto l = find_accepting_lasso(a);
    auto all = enumerate_lassos(a, 6);
    if (!l) {
      CHECK(all.empty());
      continue;
    }
    CHECK(is_valid_lasso(a, *l));
    std::size_t best_prefix = SIZE_MAX;
    for (const auto &x : all) best_prefix = std::min(best_prefix, x.prefix.size());
    CHECK(l->prefix.size() == best_prefix);
  }
}

TEST_CASE("lasso constraints") {
  // 0 <-> 1 and 0 <-> 2, only 0 accepting.
  BuchiAutomaton a;
  a.add_state(true);
  a.add_state(false);
  a.add_state(false);
  a.add_transition(0, any, 1);
  a.add_transition(1, any, 0);
  a.add_transition(0, any, 2);
  a.add_transition(2, any, 0);
  auto plain = find_accepting_lasso(a);
  REQUIRE(plain);
  CHECK(plain->cycle == std::vector<TransitionId>{0, 1});

  LassoConstraints c;
  c.state_sets.push_back({0, 0, 1});
  auto through_two = find_accepting_lasso(a, c);
  REQUIRE(through_two);
  CHECK(through_two->cycle == std::vector<TransitionId>{2, 3});

  LassoConstraints both;
  both.transition_sets.push_back({1, 0, 0, 0});
  both.transition_sets.push_back({0, 0, 0, 1});
  auto l = find_accepting_lasso(a, both);
  REQUIRE(l);
  CHECK(is_valid_lasso(a, *l));
  CHECK(l->cycle.size() == 4);

  LassoConstraints impossible;
  impossible.state_sets.push_back({0, 0, 0});
  CHECK_FALSE(find_accepting_lasso(a, impossible));
}

TEST_CASE("membership examples") {
  auto al = letters(2);
  const SymbolSet a_ = 1, b_ = 2;
  auto ga = translate(parse("G a", al), al);
  CHECK(check_lasso_membership(ga, {{}, {a_}}));
  CHECK(eval_ltl(parse("G a", al), {{}, {a_}}));
  auto fb = translate(parse("F b", al), al);
  CHECK(check_lasso_membership(fb, {{b_}, {0}}));
  CHECK_FALSE(check_lasso_membership(ga, {{b_}, {a_}}));

  BuchiAutomaton explicit_a;
  explicit_a.alphabet = al;
  explicit_a.add_state(true);
  explicit_a.add_transition(0, Label::of_services(a_), 0);
  CHECK(check_lasso_membership(explicit_a, {{}, {a_}}));
  CHECK_FALSE(check_lasso_membership(explicit_a, {{}, {a_ | b_}}));
  CHECK_THROWS_AS(check_lasso_membership(explicit_a, {{}, {4}}), alphabet_mismatch);
}

TEST_CASE("prune removes dead branches") {
  BuchiAutomaton a;
  a.add_state(false);
  a.add_state(true);
  a.add_state(false);
  a.add_transition(0, any, 1);
  a.add_transition(1, any, 1);
  a.add_transition(0, any, 2);
  a.add_transition(2, any, 2);
  auto p = prune_non_coaccessible(a);
  CHECK(p.num_states() == 2);
  CHECK(p.num_transitions() == 2);
  auto again = prune_non_coaccessible(p);
  CHECK(again.num_states() == p.num_states());
  CHECK(again.num_transitions() == p.num_transitions());

  BuchiAutomaton dead;
  dead.add_state(false);
  dead.add_state(false);
  dead.add_transition(0, any, 1);
  auto d = prune_non_coaccessible(dead);
  CHECK(d.num_states() == 1);
  CHECK_FALSE(find_accepting_lasso(d));
}

TEST_CASE("merge duplicate states") {
  Guard ga{1, 0};
  BuchiAutomaton a;
  a.add_state(false);
  a.add_state(true);
  a.add_state(true);
  a.add_state(false);
  a.add_transition(0, Label::of_guard(ga), 1);
  a.add_transition(0, Label::of_guard(ga), 2);
  a.add_transition(1, any, 3);
  a.add_transition(2, any, 3);
  a.add_transition(3, any, 0);
  auto m = merge_duplicate_states(a);
  CHECK(m.num_states() == 3);
  CHECK(m.num_transitions() == 3);

  a.accepting[2] = 0;
  CHECK(merge_duplicate_states(a).num_states() == 4);

  BuchiAutomaton single;
  single.add_state(true);
  single.add_transition(0, any, 0);
  CHECK(merge_duplicate_states(single).num_states() == 1);
}

TEST_CASE("rebuild operations preserve membership") {
  std::mt19937 rng(77);
  for (int n = 0; n < 40; ++n) {
    auto a = random_automaton(rng, 6, 2, 0.35);
    auto pruned = prune_non_coaccessible(a);
    auto merged = merge_duplicate_states(a);
    pruned.check();
    merged.check();
    CHECK(find_accepting_lasso(a).has_value() == find_accepting_lasso(pruned).has_value());
    // Emptiness iff no reachable accepting state of the pruned automaton
    // lies on a cycle.
    bool reachable_accept = false;
    auto reach = reachable_states(pruned);
    auto comp = strongly_connected_components(pruned);
    std::vector<char> cyclic(pruned.num_states(), 0);
    for (const auto &t : pruned.transitions)
      if (comp[t.source] == comp[t.target]) cyclic[t.source] = 1;
    for (StateId q = 0; q < pruned.num_states(); ++q)
      reachable_accept = reachable_accept || (reach[q] && cyclic[q] && pruned.is_accepting(q));
    CHECK(find_accepting_lasso(a).has_value() == reachable_accept);
    for (int k = 0; k < 100; ++k) {
      auto w = random_word(rng, 2, 3, 3);
      bool in = check_lasso_membership(a, w);
      CHECK(check_lasso_membership(pruned, w) == in);
      CHECK(check_lasso_membership(merged, w) == in);
    }
  }
}

TEST_CASE("strongly connected components") {
  BuchiAutomaton a;
  for (int k = 0; k < 4; ++k) a.add_state(false);
  a.add_transition(0, any, 1);
  a.add_transition(1, any, 0);
  a.add_transition(1, any, 2);
  a.add_transition(2, any, 3);
  a.add_transition(3, any, 2);
  auto c = strongly_connected_components(a);
  CHECK(c[0] == c[1]);
  CHECK(c[2] == c[3]);
  CHECK(c[0] != c[2]);
}

TEST_CASE("dot export") {
  BuchiAutomaton a;
  a.alphabet = Alphabet({"load"});
  a.add_state(false);
  a.add_state(true);
  a.add_transition(0, Label::of_services(1), 1);
  a.add_transition(1, Label::silent(0), 1);
  auto text = to_dot(a);
  CHECK(text.find("doublecircle") != std::string::npos);
  CHECK(text.find("eps_1") != std::string::npos);
  CHECK(text.find("{load}") != std::string::npos);
}
