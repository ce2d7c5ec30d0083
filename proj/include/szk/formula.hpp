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

#include <algorithm>
#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "szk/error.hpp"
#include "szk/primes.hpp"

namespace szk {

// m x = 0
struct Tor {
  std::uint64_t m = 1;
  friend auto operator<=>(const Tor&, const Tor&) = default;
};

// p^r | p^s x, with s < r.
struct Div {
  std::uint64_t p = 2;
  std::uint64_t r = 1;
  std::uint64_t s = 0;
  friend auto operator<=>(const Div&, const Div&) = default;
};

using Atom = std::variant<Tor, Div>;

inline std::string to_string(const Atom& a) {
  if (const auto* t = std::get_if<Tor>(&a)) {
    return "tor(" + std::to_string(t->m) + ")";
  }
  const auto& d = std::get<Div>(a);
  return "div(" + std::to_string(d.p) + "," + std::to_string(d.r) + "," +
         std::to_string(d.s) + ")";
}

// A conjunction of canonical atoms. The empty conjunction is the whole group.
struct PPFormula {
  std::vector<Atom> atoms;

  PPFormula() = default;
  PPFormula(std::initializer_list<Atom> a) : atoms(a) {}
  explicit PPFormula(std::vector<Atom> a) : atoms(std::move(a)) {}

  bool is_top() const { return atoms.empty(); }

  // Primes the formula talks about: Div primes and prime divisors of Tor.
  std::set<std::uint64_t> primes() const {
    std::set<std::uint64_t> out;
    for (const auto& a : atoms) {
      if (const auto* t = std::get_if<Tor>(&a)) {
        for (auto [p, e] : factorize(t->m)) out.insert(p);
      } else {
        out.insert(std::get<Div>(a).p);
      }
    }
    return out;
  }

  friend bool operator==(const PPFormula&, const PPFormula&) = default;
};

inline PPFormula conjunction(const PPFormula& a, const PPFormula& b) {
  PPFormula out = a;
  out.atoms.insert(out.atoms.end(), b.atoms.begin(), b.atoms.end());
  return out;
}

// Sorted, duplicate-free atom list (Tor atoms before Div atoms).
inline PPFormula canonicalize(PPFormula f) {
  std::sort(f.atoms.begin(), f.atoms.end());
  f.atoms.erase(std::unique(f.atoms.begin(), f.atoms.end()), f.atoms.end());
  return f;
}

inline std::vector<std::string> validate(const PPFormula& f) {
  std::vector<std::string> out;
  for (const auto& a : f.atoms) {
    if (const auto* t = std::get_if<Tor>(&a)) {
      if (t->m == 0) out.push_back("tor requires m >= 1");
    } else {
      const auto& d = std::get<Div>(a);
      if (!is_prime(d.p)) out.push_back(std::to_string(d.p) + " is not prime");
      if (d.s >= d.r) out.push_back("div(p,r,s) requires s < r");
    }
  }
  return out;
}

}  // namespace szk
