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

#include "syncplan/formula.hpp"

#include <algorithm>
#include <cctype>

namespace syncplan {

Formula Formula::make_atom(std::string name, int index) {
  return {Op::atom, std::move(name), index, {}};
}

Formula Formula::unary(Op op, Formula arg) {
  Formula f{op, {}, -1, {}};
  f.args.push_back(std::move(arg));
  return f;
}

Formula Formula::binary(Op op, Formula lhs, Formula rhs) {
  Formula f{op, {}, -1, {}};
  f.args.push_back(std::move(lhs));
  f.args.push_back(std::move(rhs));
  return f;
}

int arity(Op op) {
  switch (op) {
    case Op::atom:
    case Op::top:
    case Op::bottom:
      return 0;
    case Op::negation:
    case Op::next:
    case Op::eventually:
    case Op::always:
      return 1;
    case Op::conjunction:
    case Op::disjunction:
    case Op::until:
    case Op::release:
      return 2;
  }
  return 0;
}

parse_error::parse_error(std::string message, std::size_t position)
    : std::runtime_error("at position " + std::to_string(position) + ": " +
                         message),
      position_(position) {}

namespace {

enum class Tok { ident, lparen, rparen, bang, land, lor, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t position;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = i;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
        ++i;
      out.push_back({Tok::ident, std::string(text.substr(start, i - start)), start});
    } else if (c == '(') {
      out.push_back({Tok::lparen, "(", i++});
    } else if (c == ')') {
      out.push_back({Tok::rparen, ")", i++});
    } else if (c == '!') {
      out.push_back({Tok::bang, "!", i++});
    } else if (c == '&' && i + 1 < text.size() && text[i + 1] == '&') {
      out.push_back({Tok::land, "&&", i});
      i += 2;
    } else if (c == '|' && i + 1 < text.size() && text[i + 1] == '|') {
      out.push_back({Tok::lor, "||", i});
      i += 2;
    } else {
      throw parse_error(std::string("unexpected character '") + c + "'", i);
    }
  }
  out.push_back({Tok::end, "", text.size()});
  return out;
}

bool is_operator_run(const std::string &s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return c == 'X' || c == 'F' || c == 'G';
  });
}

class Parser {
 public:
  Parser(std::string_view text, const Alphabet &alphabet)
      : tokens_(tokenize(text)), alphabet_(alphabet) {}

  Formula run() {
    Formula f = disjunction();
    if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token &peek() const { return tokens_[pos_]; }
  const Token &take() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const std::string &message) const {
    throw parse_error(message, peek().position);
  }

  bool at_keyword(std::string_view word) const {
    return peek().kind == Tok::ident && peek().text == word;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (peek().kind == Tok::lor) {
      take();
      f = Formula::binary(Op::disjunction, std::move(f), conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = until();
    while (peek().kind == Tok::land) {
      take();
      f = Formula::binary(Op::conjunction, std::move(f), until());
    }
    return f;
  }

  Formula until() {
    Formula lhs = unary();
    if (at_keyword("U")) {
      take();
      return Formula::binary(Op::until, std::move(lhs), until());
    }
    return lhs;
  }

  Formula unary() {
    const Token &t = peek();
    if (t.kind == Tok::bang) {
      take();
      return Formula::unary(Op::negation, unary());
    }
    if (t.kind == Tok::lparen) {
      take();
      Formula f = disjunction();
      if (peek().kind != Tok::rparen) fail("expected ')'");
      take();
      return f;
    }
    if (t.kind != Tok::ident) fail(t.kind == Tok::end ? "unexpected end of formula"
                                                      : "unexpected '" + t.text + "'");
    if (t.text == "true") {
      take();
      return Formula::truth();
    }
    if (t.text == "false") {
      take();
      return Formula::falsity();
    }
    if (t.text == "U") fail("'U' is missing its left operand");
    // Runs such as "GF" are read as nested prefix operators unless the
    // alphabet declares them as atoms.
    if (is_operator_run(t.text) && !alphabet_.find(t.text)) {
      std::string ops = take().text;
      Formula f = unary();
      for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        Op op = *it == 'X' ? Op::next : *it == 'F' ? Op::eventually : Op::always;
        f = Formula::unary(op, std::move(f));
      }
      return f;
    }
    auto index = alphabet_.find(t.text);
    if (!index) fail("unknown atom '" + t.text + "'");
    take();
    return Formula::make_atom(t.text, *index);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Alphabet &alphabet_;
};

Formula negate_nnf(const Formula &f);

Formula nnf(const Formula &f) {
  switch (f.op) {
    case Op::atom:
    case Op::top:
    case Op::bottom:
      return f;
    case Op::negation:
      return negate_nnf(f.lhs());
    case Op::next:
    case Op::eventually:
    case Op::always:
      return Formula::unary(f.op, nnf(f.lhs()));
    case Op::conjunction:
    case Op::disjunction:
    case Op::until:
    case Op::release:
      return Formula::binary(f.op, nnf(f.lhs()), nnf(f.rhs()));
  }
  return f;
}

Formula negate_nnf(const Formula &f) {
  switch (f.op) {
    case Op::atom:
      return Formula::unary(Op::negation, f);
    case Op::top:
      return Formula::falsity();
    case Op::bottom:
      return Formula::truth();
    case Op::negation:
      return nnf(f.lhs());
    case Op::next:
      return Formula::unary(Op::next, negate_nnf(f.lhs()));
    case Op::eventually:
      return Formula::unary(Op::always, negate_nnf(f.lhs()));
    case Op::always:
      return Formula::unary(Op::eventually, negate_nnf(f.lhs()));
    case Op::conjunction:
      return Formula::binary(Op::disjunction, negate_nnf(f.lhs()), negate_nnf(f.rhs()));
    case Op::disjunction:
      return Formula::binary(Op::conjunction, negate_nnf(f.lhs()), negate_nnf(f.rhs()));
    case Op::until:
      return Formula::binary(Op::release, negate_nnf(f.lhs()), negate_nnf(f.rhs()));
    case Op::release:
      return Formula::binary(Op::until, negate_nnf(f.lhs()), negate_nnf(f.rhs()));
  }
  return f;
}

using Truth = std::vector<char>;

Truth evaluate(const Formula &f, const UltimatelyPeriodicWord &w) {
  const std::size_t n = w.positions();
  Truth v(n, 0);
  switch (f.op) {
    case Op::atom:
      for (std::size_t k = 0; k < n; ++k) v[k] = contains(w.at(k), f.atom);
      return v;
    case Op::top:
      std::fill(v.begin(), v.end(), 1);
      return v;
    case Op::bottom:
      return v;
    case Op::negation: {
      Truth a = evaluate(f.lhs(), w);
      for (std::size_t k = 0; k < n; ++k) v[k] = !a[k];
      return v;
    }
    case Op::conjunction:
    case Op::disjunction: {
      Truth a = evaluate(f.lhs(), w);
      Truth b = evaluate(f.rhs(), w);
      for (std::size_t k = 0; k < n; ++k)
        v[k] = f.op == Op::conjunction ? (a[k] && b[k]) : (a[k] || b[k]);
      return v;
    }
    case Op::next: {
      Truth a = evaluate(f.lhs(), w);
      for (std::size_t k = 0; k < n; ++k) v[k] = a[w.next(k)];
      return v;
    }
    default:
      break;
  }

  // Temporal fixpoints. `until`/`eventually` are least fixpoints,
  // `release`/`always` greatest.
  Truth hold;   // the operand that must hold until / is released
  Truth goal;   // the operand that ends the obligation
  bool greatest = false;
  switch (f.op) {
    case Op::until:
      hold = evaluate(f.lhs(), w);
      goal = evaluate(f.rhs(), w);
      break;
    case Op::eventually:
      hold = Truth(n, 1);
      goal = evaluate(f.lhs(), w);
      break;
    case Op::release:
      hold = evaluate(f.lhs(), w);
      goal = evaluate(f.rhs(), w);
      greatest = true;
      break;
    case Op::always:
      hold = Truth(n, 0);
      goal = evaluate(f.lhs(), w);
      greatest = true;
      break;
    default:
      break;
  }
  std::fill(v.begin(), v.end(), greatest ? 1 : 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t k = n; k-- > 0;) {
      char nv = greatest ? (goal[k] && (hold[k] || v[w.next(k)]))
                         : (goal[k] || (hold[k] && v[w.next(k)]));
      if (nv != v[k]) {
        v[k] = nv;
        changed = true;
      }
    }
  }
  return v;
}

bool needs_parens(const Formula &f) { return arity(f.op) == 2; }

}  // namespace

Formula parse(std::string_view text, const Alphabet &alphabet) {
  return Parser(text, alphabet).run();
}

Formula to_nnf(const Formula &f) { return nnf(f); }

std::string to_string(const Formula &f) {
  auto wrap = [](const Formula &g) {
    return needs_parens(g) ? "(" + to_string(g) + ")" : to_string(g);
  };
  switch (f.op) {
    case Op::atom:
      return f.name;
    case Op::top:
      return "true";
    case Op::bottom:
      return "false";
    case Op::negation:
      return "!" + wrap(f.lhs());
    case Op::next:
      return "X " + wrap(f.lhs());
    case Op::eventually:
      return "F " + wrap(f.lhs());
    case Op::always:
      return "G " + wrap(f.lhs());
    case Op::conjunction:
      return wrap(f.lhs()) + " && " + wrap(f.rhs());
    case Op::disjunction:
      return wrap(f.lhs()) + " || " + wrap(f.rhs());
    case Op::until:
      return wrap(f.lhs()) + " U " + wrap(f.rhs());
    case Op::release:
      return wrap(f.lhs()) + " R " + wrap(f.rhs());
  }
  return "?";
}

bool contains_next(const Formula &f) {
  if (f.op == Op::next) return true;
  return std::any_of(f.args.begin(), f.args.end(), contains_next);
}

SymbolSet atoms_of(const Formula &f) {
  SymbolSet out = f.op == Op::atom ? symbol_bit(f.atom) : 0;
  for (const auto &a : f.args) out |= atoms_of(a);
  return out;
}

int depth(const Formula &f) {
  int d = 0;
  for (const auto &a : f.args) d = std::max(d, depth(a));
  return f.args.empty() ? 0 : d + 1;
}

bool eval_ltl(const Formula &f, const UltimatelyPeriodicWord &w) {
  if (w.period.empty()) throw std::invalid_argument("word period must be nonempty");
  return evaluate(f, w)[0] != 0;
}

std::string format_word(const UltimatelyPeriodicWord &w, const Alphabet &alphabet) {
  std::string out;
  for (auto s : w.prefix) out += alphabet.format(s) + " ";
  out += "(";
  for (std::size_t k = 0; k < w.period.size(); ++k) {
    if (k) out += " ";
    out += alphabet.format(w.period[k]);
  }
  return out + ")^w";
}

}  // namespace syncplan
