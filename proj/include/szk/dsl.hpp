// Copyright 2026 The szk Authors
//
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
//
#pragma once

// Text syntax for group descriptions and p.p. formulas.
//
//   group     := term ("+" term)* | "0"
//   term      := atom ("^" mult)?
//   atom      := "Z(" prime "^" nat ")" | "Z(" prime "^inf)" | "Z_(" prime ")"
//              | "Z(" prime-power ")"
//              | "Q" | "tail(" prime ("," mult)? ("," "cutoff" "=" nat)? ")"
//              | "forall_p{" shape "}"
//   shape     := shapeterm ("+" shapeterm)*   (shape terms use P as the prime)
//   mult      := nat | "w"
//   formula   := "top" | fatom ("&" fatom)*
//   fatom     := "tor(" nat ")" | "div(" prime "," nat "," nat ")"
//
// Whitespace between tokens is ignored. A forall_p block fixes the data of
// every prime that no other term mentions.

#include <cctype>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "szk/description.hpp"
#include "szk/error.hpp"
#include "szk/formula.hpp"

namespace szk {
namespace dsl_detail {

enum class TokenKind { kIdent, kNumber, kPunct, kEnd };

struct Token {
  TokenKind kind;
  std::string_view text;
  std::uint64_t number = 0;
  SourceSpan span;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> tokenize() {
    std::vector<Token> out;
    std::size_t i = 0;
    while (true) {
      while (i < text_.size() &&
             std::isspace(static_cast<unsigned char>(text_[i]))) {
        ++i;
      }
      if (i == text_.size()) {
        out.push_back({TokenKind::kEnd, {}, 0, {i, i}});
        return out;
      }
      const char c = text_[i];
      const std::size_t start = i;
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        while (i < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[i])) ||
                text_[i] == '_')) {
          ++i;
        }
        out.push_back({TokenKind::kIdent, text_.substr(start, i - start), 0,
                       {start, i}});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::uint64_t v = 0;
        while (i < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[i]))) {
          const std::uint64_t digit = static_cast<std::uint64_t>(text_[i] - '0');
          if (v > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) {
            throw ParseError("number too large", {start, i + 1});
          }
          v = v * 10 + digit;
          ++i;
        }
        out.push_back({TokenKind::kNumber, text_.substr(start, i - start), v,
                       {start, i}});
      } else if (std::string_view("()[]{}^+,=&").find(c) !=
                 std::string_view::npos) {
        ++i;
        out.push_back({TokenKind::kPunct, text_.substr(start, 1), 0,
                       {start, i}});
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'",
                         {start, start + 1});
      }
    }
  }

 private:
  std::string_view text_;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(Lexer(text).tokenize()) {}

  SzmielewDescription group() {
    SzmielewDescription out;
    if (peek().kind == TokenKind::kNumber && peek().number == 0 &&
        tokens_[pos_ + 1].kind == TokenKind::kEnd) {
      ++pos_;
      return out;
    }
    std::optional<PrimeTailShape> shape;
    term(out, shape);
    while (accept_punct('+')) term(out, shape);
    expect_end();
    out.prime_tail = shape;
    return out;
  }

  PPFormula formula() {
    PPFormula out;
    if (accept_ident("top")) {
      expect_end();
      return out;
    }
    out.atoms.push_back(formula_atom());
    while (accept_punct('&')) out.atoms.push_back(formula_atom());
    expect_end();
    return out;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (t.kind != TokenKind::kEnd) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const std::string& what, const Token& t) const {
    const std::string got =
        t.kind == TokenKind::kEnd ? "end of input" : "'" + std::string(t.text) + "'";
    throw ParseError("expected " + what + ", got " + got, t.span);
  }

  bool accept_punct(char c) {
    if (peek().kind == TokenKind::kPunct && peek().text[0] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect_punct(char c) {
    if (!accept_punct(c)) fail(std::string("'") + c + "'", peek());
  }
  bool accept_ident(std::string_view name) {
    if (peek().kind == TokenKind::kIdent && peek().text == name) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect_ident(std::string_view name) {
    if (!accept_ident(name)) fail("'" + std::string(name) + "'", peek());
  }
  void expect_end() {
    if (peek().kind != TokenKind::kEnd) fail("end of input", peek());
  }

  std::uint64_t nat() {
    const Token& t = peek();
    if (t.kind != TokenKind::kNumber) fail("a number", t);
    ++pos_;
    return t.number;
  }

  std::uint64_t prime() {
    const Token& t = peek();
    const std::uint64_t p = nat();
    if (!is_prime(p)) throw ParseError(std::to_string(p) + " is not prime", t.span);
    return p;
  }

  Mult mult() {
    if (accept_ident("w")) return kOmega;
    return Mult(nat());
  }

  Mult optional_power() { return accept_punct('^') ? mult() : Mult(1); }

  static void add_component(SzmielewDescription& d, std::uint64_t p,
                            const PrimeComponent& c) {
    d.set_component(p, d.component(p) + c);
  }

  void term(SzmielewDescription& out, std::optional<PrimeTailShape>& shape) {
    const Token& head = peek();
    if (accept_ident("Q")) {
      out.q_mult = out.q_mult + optional_power();
      return;
    }
    if (accept_ident("forall_p")) {
      expect_punct('{');
      PrimeTailShape s = shape_term();
      while (accept_punct('+')) s = s + shape_term();
      expect_punct('}');
      const Mult k = optional_power();
      s.tf_mult = s.tf_mult * k;
      s.div_mult = s.div_mult * k;
      for (auto& [n, m] : s.cyclic_pattern) m = m * k;
      shape = shape ? *shape + s : s;
      return;
    }
    PrimeComponent c;
    std::uint64_t p = 0;
    const Token& start = peek();
    if (accept_ident("tail")) {
      expect_punct('(');
      p = prime();
      TailSpec t;
      if (accept_punct(',')) {
        if (accept_ident("cutoff")) {
          expect_punct('=');
          t.cutoff = nat();
        } else {
          t.mult = mult();
          if (accept_punct(',')) {
            expect_ident("cutoff");
            expect_punct('=');
            t.cutoff = nat();
          }
        }
      }
      expect_punct(')');
      t.mult = t.mult * optional_power();
      if (t.mult.is_zero()) {
        throw ParseError("tail multiplicity must be >= 1",
                         {start.span.start, tokens_[pos_ - 1].span.end});
      }
      c.tail = t;
    } else {
      auto [kind, q, n] = cyclic_like_atom(/*formal_prime=*/false);
      p = q;
      const Mult m = optional_power();
      switch (kind) {
        case Kind::kCyclic:
          if (n == 0) {
            throw ParseError("exponent must be >= 1",
                             {start.span.start, tokens_[pos_ - 1].span.end});
          }
          c.cyclic[n] = m;
          break;
        case Kind::kPrufer:
          c.div = m;
          break;
        case Kind::kLocal:
          c.tf = m;
          break;
      }
    }
    (void)head;
    add_component(out, p, c);
  }

  enum class Kind { kCyclic, kPrufer, kLocal };
  struct CyclicLike {
    Kind kind;
    std::uint64_t prime;
    std::uint64_t exponent;
  };

  // Z(p^n) | Z(p^inf) | Z_(p), with P in place of p when formal_prime.
  CyclicLike cyclic_like_atom(bool formal_prime) {
    auto read_prime = [&]() -> std::uint64_t {
      if (formal_prime) {
        expect_ident("P");
        return 0;
      }
      return prime();
    };
    if (accept_ident("Z_")) {
      expect_punct('(');
      const std::uint64_t p = read_prime();
      expect_punct(')');
      return {Kind::kLocal, p, 0};
    }
    if (!accept_ident("Z")) {
      fail(formal_prime ? "Z(P^n), Z(P^inf) or Z_(P)"
                        : "Z(p^n), Z(p^inf), Z_(p), Q, tail(...) or forall_p{...}",
           peek());
    }
    expect_punct('(');
    if (!formal_prime && peek().kind == TokenKind::kNumber &&
        tokens_[pos_ + 1].kind == TokenKind::kPunct &&
        tokens_[pos_ + 1].text[0] == ')') {
      // Shorthand Z(m) for a prime power m = p^n.
      const Token& t = next();
      const auto f = factorize(t.number);
      if (f.size() != 1) {
        throw ParseError(std::to_string(t.number) + " is not a prime power",
                         t.span);
      }
      expect_punct(')');
      return {Kind::kCyclic, f.begin()->first, f.begin()->second};
    }
    const std::uint64_t p = read_prime();
    expect_punct('^');
    if (accept_ident("inf")) {
      expect_punct(')');
      return {Kind::kPrufer, p, 0};
    }
    const std::uint64_t n = nat();
    expect_punct(')');
    return {Kind::kCyclic, p, n};
  }

  PrimeTailShape shape_term() {
    const Token& start = peek();
    auto [kind, unused, n] = cyclic_like_atom(/*formal_prime=*/true);
    (void)unused;
    const Mult m = optional_power();
    PrimeTailShape s;
    switch (kind) {
      case Kind::kCyclic:
        if (n == 0) {
          throw ParseError("exponent must be >= 1",
                           {start.span.start, tokens_[pos_ - 1].span.end});
        }
        s.cyclic_pattern[n] = m;
        break;
      case Kind::kPrufer:
        s.div_mult = m;
        break;
      case Kind::kLocal:
        s.tf_mult = m;
        break;
    }
    return s;
  }

  Atom formula_atom() {
    const Token& start = peek();
    if (accept_ident("tor")) {
      expect_punct('(');
      const std::uint64_t m = nat();
      expect_punct(')');
      if (m == 0) {
        throw ParseError("tor requires m >= 1",
                         {start.span.start, tokens_[pos_ - 1].span.end});
      }
      return Tor{m};
    }
    if (accept_ident("div")) {
      expect_punct('(');
      const std::uint64_t p = prime();
      expect_punct(',');
      const std::uint64_t r = nat();
      expect_punct(',');
      const std::uint64_t s = nat();
      expect_punct(')');
      if (s >= r) {
        throw ParseError("div(p,r,s) requires s < r",
                         {start.span.start, tokens_[pos_ - 1].span.end});
      }
      return Div{p, r, s};
    }
    fail("tor(m) or div(p,r,s)", peek());
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

inline std::string power(const Mult& m) {
  return m == Mult(1) ? std::string() : "^" + m.to_string();
}

inline void append_term(std::string& out, const std::string& term) {
  if (!out.empty()) out += " + ";
  out += term;
}

}  // namespace dsl_detail

// Throws ParseError (with the offending span) or InputError for semantic
// violations.
inline SzmielewDescription parse_group(std::string_view text) {
  SzmielewDescription d = dsl_detail::Parser(text).group();
  if (auto v = validate(d); !v.empty()) {
    throw InputError(v.front().message);
  }
  return d;
}

inline PPFormula parse_formula(std::string_view text) {
  return dsl_detail::Parser(text).formula();
}

// Canonical text: primes ascending; per prime cyclic summands by exponent,
// then Z_(p), Z(p^inf), tail; then Q; then the forall_p block.
inline std::string render(const SzmielewDescription& d) {
  using dsl_detail::append_term;
  using dsl_detail::power;
  std::string out;
  for (std::uint64_t p : d.mentioned_primes()) {
    const std::string ps = std::to_string(p);
    const PrimeComponent c = d.component(p);
    for (const auto& [n, m] : c.cyclic) {
      append_term(out, "Z(" + ps + "^" + std::to_string(n) + ")" + power(m));
    }
    if (d.tf.contains(p)) append_term(out, "Z_(" + ps + ")" + power(c.tf));
    if (d.div.contains(p)) append_term(out, "Z(" + ps + "^inf)" + power(c.div));
    if (c.tail) {
      std::string t = "tail(" + ps;
      if (c.tail->mult != Mult(1)) t += ", " + c.tail->mult.to_string();
      if (c.tail->cutoff != 0) t += ", cutoff=" + std::to_string(c.tail->cutoff);
      append_term(out, t + ")");
    }
  }
  if (!d.q_mult.is_zero()) append_term(out, "Q" + power(d.q_mult));
  if (d.prime_tail) {
    std::string s;
    for (const auto& [n, m] : d.prime_tail->cyclic_pattern) {
      append_term(s, "Z(P^" + std::to_string(n) + ")" + power(m));
    }
    if (!d.prime_tail->tf_mult.is_zero()) {
      append_term(s, "Z_(P)" + power(d.prime_tail->tf_mult));
    }
    if (!d.prime_tail->div_mult.is_zero()) {
      append_term(s, "Z(P^inf)" + power(d.prime_tail->div_mult));
    }
    if (s.empty()) s = "Z_(P)^0";
    append_term(out, "forall_p{" + s + "}");
  }
  return out.empty() ? "0" : out;
}

inline std::string render(const PPFormula& f) {
  const PPFormula c = canonicalize(f);
  if (c.is_top()) return "top";
  std::string out;
  for (const auto& a : c.atoms) {
    if (!out.empty()) out += " & ";
    out += to_string(a);
  }
  return out;
}

}  // namespace szk
