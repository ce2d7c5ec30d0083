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

// Seeded random descriptions for differential testing.

#include <cstdint>
#include <random>
#include <vector>

#include "szk/description.hpp"
#include "szk/mult.hpp"
#include "szk/rank.hpp"

namespace szk {

struct CorpusOptions {
  std::vector<std::uint64_t> primes{2, 3, 5, 7};
  std::uint64_t max_exponent = 5;
  int min_terms = 1;
  int max_terms = 4;
  bool allow_prime_tail = true;
};

class CorpusGenerator {
 public:
  explicit CorpusGenerator(std::uint64_t seed, CorpusOptions opts = {})
      : rng_(seed), opts_(std::move(opts)) {}

  // Any valid description, finite dp-rank or not.
  SzmielewDescription any() {
    SzmielewDescription d;
    const int terms = uniform(opts_.min_terms, opts_.max_terms);
    // Most draws reuse a small prime set so that summands interact.
    const int spread = uniform(1, static_cast<int>(opts_.primes.size()));
    for (int i = 0; i < terms; ++i) d = direct_sum(d, term(spread));
    return d;
  }

  // A description of finite dp-rank, redrawing until one is found.
  SzmielewDescription finite_dp() {
    while (true) {
      SzmielewDescription d = any();
      if (classify(d).finite_dp) return d;
    }
  }

  std::vector<SzmielewDescription> finite_dp_corpus(std::size_t count) {
    std::vector<SzmielewDescription> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(finite_dp());
    return out;
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  int uniform(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }

  Mult mult() {
    switch (uniform(0, 2)) {
      case 0:
        return 1;
      case 1:
        return 2;
      default:
        return kOmega;
    }
  }

  SzmielewDescription term(int spread) {
    SzmielewDescription d;
    const std::uint64_t p = opts_.primes[static_cast<std::size_t>(uniform(0, spread - 1))];
    const std::uint64_t n =
        static_cast<std::uint64_t>(uniform(1, static_cast<int>(opts_.max_exponent)));
    const int kind = uniform(0, 19);
    if (kind < 9) {
      d.cyclic[{p, n}] = mult();
    } else if (kind < 12) {
      d.tf[p] = mult();
    } else if (kind < 15) {
      d.div[p] = mult();
    } else if (kind < 16) {
      d.q_mult = mult();
    } else if (kind < 18) {
      TailSpec t;
      t.cutoff = static_cast<std::uint64_t>(uniform(0, 3));
      t.mult = uniform(0, 4) == 0 ? kOmega : Mult(static_cast<std::uint64_t>(uniform(1, 2)));
      d.cyclic_tail[p] = t;
    } else if (opts_.allow_prime_tail) {
      PrimeTailShape s;
      switch (uniform(0, 2)) {
        case 0:
          s.cyclic_pattern[n] = mult();
          break;
        case 1:
          s.tf_mult = mult();
          break;
        default:
          s.div_mult = mult();
          break;
      }
      d.prime_tail = s;
    } else {
      d.cyclic[{p, n}] = kOmega;
    }
    return d;
  }

  std::mt19937_64 rng_;
  CorpusOptions opts_;
};

}  // namespace szk
