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
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "szk/mult.hpp"
#include "szk/primes.hpp"

namespace szk {

// The cyclic summands Z(p^n) for every n > cutoff, each with multiplicity
// `mult`. Represents a prime of unbounded p-length.
struct TailSpec {
  std::uint64_t cutoff = 0;
  Mult mult = 1;

  friend bool operator==(const TailSpec&, const TailSpec&) = default;
};

// Local data applied to every prime that the description does not mention.
struct PrimeTailShape {
  std::map<std::uint64_t, Mult> cyclic_pattern;  // exponent -> multiplicity
  Mult tf_mult = 0;
  Mult div_mult = 0;

  bool is_zero() const {
    return tf_mult.is_zero() && div_mult.is_zero() &&
           std::all_of(cyclic_pattern.begin(), cyclic_pattern.end(),
                       [](const auto& kv) { return kv.second.is_zero(); });
  }

  friend bool operator==(const PrimeTailShape&,
                         const PrimeTailShape&) = default;
};

// Everything a description says about a single prime p.
struct PrimeComponent {
  std::map<std::uint64_t, Mult> cyclic;  // exponent -> multiplicity
  Mult tf = 0;
  Mult div = 0;
  std::optional<TailSpec> tail;

  // Multiplicity of Z(p^n).
  Mult alpha(std::uint64_t n) const {
    if (tail && n > tail->cutoff) return tail->mult;
    auto it = cyclic.find(n);
    return it == cyclic.end() ? Mult(0) : it->second;
  }

  std::uint64_t max_listed_exponent() const {
    return cyclic.empty() ? 0 : cyclic.rbegin()->first;
  }

  bool is_zero() const {
    return !tail && tf.is_zero() && div.is_zero() &&
           std::all_of(cyclic.begin(), cyclic.end(),
                       [](const auto& kv) { return kv.second.is_zero(); });
  }

  friend bool operator==(const PrimeComponent&,
                         const PrimeComponent&) = default;
};

inline PrimeComponent component_of(const PrimeTailShape& shape) {
  PrimeComponent c;
  c.cyclic = shape.cyclic_pattern;
  c.tf = shape.tf_mult;
  c.div = shape.div_mult;
  return c;
}

// A Szmielew group
//   (+)_p ( (+)_n Z(p^n)^(alpha_{p,n}) + Z_(p)^(beta_p) + Z(p^inf)^(gamma_p) )
//     + Q^(delta)
// with two finite encodings of infinite support: per-prime cyclic tails and a
// shape shared by all unmentioned primes.
struct SzmielewDescription {
  std::map<std::pair<std::uint64_t, std::uint64_t>, Mult> cyclic;
  std::map<std::uint64_t, Mult> tf;
  std::map<std::uint64_t, Mult> div;
  Mult q_mult = 0;
  std::map<std::uint64_t, TailSpec> cyclic_tail;
  std::optional<PrimeTailShape> prime_tail;

  // Primes with an explicit entry of any kind (zero multiplicities included;
  // they exclude the prime from prime_tail).
  std::set<std::uint64_t> mentioned_primes() const {
    std::set<std::uint64_t> out;
    for (const auto& [key, m] : cyclic) out.insert(key.first);
    for (const auto& [p, m] : tf) out.insert(p);
    for (const auto& [p, m] : div) out.insert(p);
    for (const auto& [p, t] : cyclic_tail) out.insert(p);
    return out;
  }

  bool mentions(std::uint64_t p) const {
    if (tf.contains(p) || div.contains(p) || cyclic_tail.contains(p)) {
      return true;
    }
    auto it = cyclic.lower_bound({p, 0});
    return it != cyclic.end() && it->first.first == p;
  }

  // Explicit data for a mentioned prime; the prime_tail shape otherwise.
  PrimeComponent component(std::uint64_t p) const {
    if (!mentions(p)) {
      return prime_tail ? component_of(*prime_tail) : PrimeComponent{};
    }
    PrimeComponent c;
    for (auto it = cyclic.lower_bound({p, 0});
         it != cyclic.end() && it->first.first == p; ++it) {
      c.cyclic[it->first.second] = it->second;
    }
    if (auto it = tf.find(p); it != tf.end()) c.tf = it->second;
    if (auto it = div.find(p); it != div.end()) c.div = it->second;
    if (auto it = cyclic_tail.find(p); it != cyclic_tail.end()) {
      c.tail = it->second;
    }
    return c;
  }

  void erase_prime(std::uint64_t p) {
    std::erase_if(cyclic, [p](const auto& kv) { return kv.first.first == p; });
    tf.erase(p);
    div.erase(p);
    cyclic_tail.erase(p);
  }

  // Replaces the explicit data for p. The prime stays mentioned: an all-zero
  // component is recorded as tf[p] = 0.
  void set_component(std::uint64_t p, const PrimeComponent& c) {
    erase_prime(p);
    for (const auto& [n, m] : c.cyclic) cyclic[{p, n}] = m;
    if (!c.tf.is_zero() || (c.cyclic.empty() && c.div.is_zero() && !c.tail)) {
      tf[p] = c.tf;
    }
    if (!c.div.is_zero()) div[p] = c.div;
    if (c.tail) cyclic_tail[p] = *c.tail;
  }

  friend bool operator==(const SzmielewDescription&,
                         const SzmielewDescription&) = default;
};

struct Violation {
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

// Every violated structural invariant; empty means valid.
inline std::vector<Violation> validate(const SzmielewDescription& d) {
  std::vector<Violation> out;
  auto bad_prime = [&](std::uint64_t p) {
    out.push_back({std::to_string(p) + " is not prime"});
  };
  for (const auto& [key, m] : d.cyclic) {
    if (!is_prime(key.first)) bad_prime(key.first);
    if (key.second == 0) out.push_back({"exponent must be >= 1"});
  }
  for (const auto& [p, m] : d.tf) {
    if (!is_prime(p)) bad_prime(p);
  }
  for (const auto& [p, m] : d.div) {
    if (!is_prime(p)) bad_prime(p);
  }
  for (const auto& [p, t] : d.cyclic_tail) {
    if (!is_prime(p)) bad_prime(p);
    if (t.mult.is_zero()) {
      out.push_back({"tail multiplicity must be >= 1"});
    }
    auto it = d.cyclic.lower_bound({p, t.cutoff + 1});
    if (it != d.cyclic.end() && it->first.first == p) {
      out.push_back({"cutoff below listed exponent"});
    }
  }
  if (d.prime_tail) {
    for (const auto& [n, m] : d.prime_tail->cyclic_pattern) {
      if (n == 0) out.push_back({"exponent must be >= 1"});
    }
  }
  return out;
}

inline PrimeComponent operator+(const PrimeComponent& a,
                                const PrimeComponent& b) {
  PrimeComponent out;
  out.tf = a.tf + b.tf;
  out.div = a.div + b.div;
  std::uint64_t limit = std::max(a.max_listed_exponent(),
                                 b.max_listed_exponent());
  if (a.tail) limit = std::max(limit, a.tail->cutoff);
  if (b.tail) limit = std::max(limit, b.tail->cutoff);
  for (std::uint64_t n = 1; n <= limit; ++n) {
    Mult m = a.alpha(n) + b.alpha(n);
    if (!m.is_zero() || a.cyclic.contains(n) || b.cyclic.contains(n)) {
      out.cyclic[n] = m;
    }
  }
  if (a.tail || b.tail) {
    Mult m = (a.tail ? a.tail->mult : Mult(0)) + (b.tail ? b.tail->mult : 0);
    out.tail = TailSpec{limit, m};
  }
  return out;
}

inline PrimeTailShape operator+(const PrimeTailShape& a,
                                const PrimeTailShape& b) {
  PrimeTailShape out = a;
  for (const auto& [n, m] : b.cyclic_pattern) {
    out.cyclic_pattern[n] = out.cyclic_pattern[n] + m;
  }
  out.tf_mult = a.tf_mult + b.tf_mult;
  out.div_mult = a.div_mult + b.div_mult;
  return out;
}

// The description of A (+) B.
inline SzmielewDescription direct_sum(const SzmielewDescription& a,
                                      const SzmielewDescription& b) {
  SzmielewDescription out;
  out.q_mult = a.q_mult + b.q_mult;
  if (a.prime_tail || b.prime_tail) {
    out.prime_tail = a.prime_tail.value_or(PrimeTailShape{}) +
                     b.prime_tail.value_or(PrimeTailShape{});
  }
  std::set<std::uint64_t> primes = a.mentioned_primes();
  primes.merge(b.mentioned_primes());
  for (std::uint64_t p : primes) {
    PrimeComponent c = a.component(p) + b.component(p);
    if (c.is_zero() && c.cyclic.empty() && !out.prime_tail) continue;
    out.set_component(p, c);
  }
  return out;
}

// Largest exponent or tail cutoff appearing anywhere in the description.
inline std::uint64_t max_exponent(const SzmielewDescription& d) {
  std::uint64_t e = 0;
  for (const auto& [key, m] : d.cyclic) e = std::max(e, key.second);
  for (const auto& [p, t] : d.cyclic_tail) e = std::max(e, t.cutoff);
  if (d.prime_tail && !d.prime_tail->cyclic_pattern.empty()) {
    e = std::max(e, d.prime_tail->cyclic_pattern.rbegin()->first);
  }
  return e;
}

}  // namespace szk
