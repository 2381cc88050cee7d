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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "syncplan/symbols.hpp"
#include "syncplan/word.hpp"

namespace syncplan {

// LTL abstract syntax. `release` never comes out of the parser; it is the
// dual of `until` introduced by to_nnf.
enum class Op {
  atom,
  top,
  bottom,
  negation,
  conjunction,
  disjunction,
  next,
  until,
  release,
  eventually,
  always,
};

struct Formula {
  Op op = Op::top;
  std::string name;  // atoms only
  int atom = -1;     // index into the alphabet the formula was parsed against
  std::vector<Formula> args;

  static Formula make_atom(std::string name, int index);
  static Formula truth() { return {}; }
  static Formula falsity() { return {Op::bottom, {}, -1, {}}; }
  static Formula unary(Op op, Formula arg);
  static Formula binary(Op op, Formula lhs, Formula rhs);

  const Formula &lhs() const { return args.at(0); }
  const Formula &rhs() const { return args.at(1); }

  bool operator==(const Formula &) const = default;
};

int arity(Op op);

class parse_error : public std::runtime_error {
 public:
  parse_error(std::string message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Grammar (lowest to highest precedence): `||`, `&&`, `U` (right
// associative), then the prefix operators `!`, `X`, `F`, `G`. Atoms must be
// declared in the alphabet.
Formula parse(std::string_view text, const Alphabet &alphabet);

Formula to_nnf(const Formula &f);

std::string to_string(const Formula &f);

bool contains_next(const Formula &f);
SymbolSet atoms_of(const Formula &f);
int depth(const Formula &f);

// Decides w |= f by fixpoint evaluation over the positions of the lasso.
bool eval_ltl(const Formula &f, const UltimatelyPeriodicWord &w);

}  // namespace syncplan
