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

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "szk/szk.hpp"

namespace szk::testing {

inline SzmielewDescription G(const std::string& text) { return parse_group(text); }
inline PPFormula F(const std::string& text) { return parse_formula(text); }

// The cyclic orders of a description with only finitely many finite cyclic
// summands.
inline std::vector<std::uint64_t> orders_of(const SzmielewDescription& d) {
  std::vector<std::uint64_t> out;
  for (const auto& [key, m] : d.cyclic) {
    for (std::uint64_t i = 0; i < m.value(); ++i) {
      out.push_back(checked_pow(key.first, key.second));
    }
  }
  return out;
}

// A random finite group with |A| <= max_order, as a description.
inline SzmielewDescription random_finite(std::mt19937_64& rng,
                                         std::uint64_t max_order) {
  const std::uint64_t primes[] = {2, 3, 5, 7};
  SzmielewDescription d;
  std::uint64_t order = 1;
  const int summands = std::uniform_int_distribution<int>(1, 4)(rng);
  for (int i = 0; i < summands; ++i) {
    const std::uint64_t p = primes[std::uniform_int_distribution<int>(0, 3)(rng)];
    const std::uint64_t n = std::uniform_int_distribution<std::uint64_t>(1, 4)(rng);
    const std::uint64_t q = checked_pow(p, n);
    if (order * q > max_order) continue;
    order *= q;
    d.cyclic[{p, n}] = d.cyclic[{p, n}] + Mult(1);
  }
  if (d.cyclic.empty()) d.cyclic[{2, 1}] = 1;
  return d;
}

// A random conjunction of one to three atoms over small primes.
inline PPFormula random_formula(std::mt19937_64& rng) {
  const std::uint64_t primes[] = {2, 3, 5, 7};
  PPFormula f;
  const int atoms = std::uniform_int_distribution<int>(0, 3)(rng);
  for (int i = 0; i < atoms; ++i) {
    if (std::uniform_int_distribution<int>(0, 1)(rng) == 0) {
      std::uint64_t m = 1;
      const int factors = std::uniform_int_distribution<int>(0, 3)(rng);
      for (int j = 0; j < factors; ++j) {
        m *= primes[std::uniform_int_distribution<int>(0, 3)(rng)];
      }
      f.atoms.push_back(Tor{m});
    } else {
      const std::uint64_t p = primes[std::uniform_int_distribution<int>(0, 3)(rng)];
      const std::uint64_t r = std::uniform_int_distribution<std::uint64_t>(1, 5)(rng);
      const std::uint64_t s = std::uniform_int_distribution<std::uint64_t>(0, r - 1)(rng);
      f.atoms.push_back(Div{p, r, s});
    }
  }
  return f;
}

}  // namespace szk::testing
