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
#include <map>
#include <optional>
#include <set>
#include <utility>

#include "szk/description.hpp"
#include "szk/index_class.hpp"
#include "szk/mult.hpp"

namespace szk {

namespace normalize_detail {

inline IndexClass power_of(std::uint64_t p, const Mult& m) {
  return m.is_omega() ? IndexClass::infinite()
                      : IndexClass::prime_power(p, m.value());
}

// Lowers the tail cutoff past listed exponents that repeat the tail
// multiplicity, then drops zero entries.
inline PrimeComponent tidy(PrimeComponent c) {
  if (c.tail) {
    while (c.tail->cutoff > 0) {
      auto it = c.cyclic.find(c.tail->cutoff);
      if (it == c.cyclic.end() || it->second != c.tail->mult) break;
      c.cyclic.erase(it);
      --c.tail->cutoff;
    }
  }
  std::erase_if(c.cyclic, [](const auto& kv) { return kv.second.is_zero(); });
  return c;
}

inline bool has_nonzero_prime_tail(const SzmielewDescription& d) {
  return d.prime_tail && !d.prime_tail->is_zero();
}

// True when the group minus its Q part has unbounded exponent or any
// nonzero Z_(p) or Z(p^inf) summand.
inline bool absorbs_rationals(const SzmielewDescription& d) {
  if (has_nonzero_prime_tail(d) || !d.cyclic_tail.empty()) return true;
  for (const auto& [p, m] : d.tf) {
    if (!m.is_zero()) return true;
  }
  for (const auto& [p, m] : d.div) {
    if (!m.is_zero()) return true;
  }
  return false;
}

}  // namespace normalize_detail

// The unique strict description elementarily equivalent to d.
inline SzmielewDescription normalize(const SzmielewDescription& d) {
  using namespace normalize_detail;
  SzmielewDescription out;
  if (has_nonzero_prime_tail(d)) {
    PrimeTailShape s = *d.prime_tail;
    std::erase_if(s.cyclic_pattern,
                  [](const auto& kv) { return kv.second.is_zero(); });
    out.prime_tail = s;
  }
  const std::optional<PrimeComponent> shape =
      out.prime_tail ? std::optional(component_of(*out.prime_tail))
                     : std::nullopt;
  for (std::uint64_t p : d.mentioned_primes()) {
    PrimeComponent c = tidy(d.component(p));
    if (c.tail) {
      c.tf = 0;
      c.div = 0;
    }
    if (shape && c == *shape) continue;
    if (c.is_zero() && !shape) continue;
    out.set_component(p, c);
  }
  if (!absorbs_rationals(out) && !d.q_mult.is_zero()) out.q_mult = kOmega;
  return out;
}

inline bool is_equivalent(const SzmielewDescription& a,
                          const SzmielewDescription& b) {
  return normalize(a) == normalize(b);
}

// Invariants of a single prime p, kept as exponents of p (omega standing for
// an infinite value) so one record serves every unlisted prime. The Ulm
// invariant U(p,n) = p^(alpha_{p,n+1}) is stored as the nonzero exponents
// below `u_from` and the constant exponent from there on.
struct PrimeInvariants {
  std::map<std::uint64_t, Mult> U;
  std::optional<std::pair<std::uint64_t, Mult>> u_from;
  Mult D_lim;
  Mult Tf_lim;
  bool quotient_pA_infinite = false;
  bool torsion_p_infinite = false;

  Mult ulm_exponent(std::uint64_t n) const {
    if (u_from && n >= u_from->first) return u_from->second;
    auto it = U.find(n);
    return it == U.end() ? Mult(0) : it->second;
  }

  friend bool operator==(const PrimeInvariants&,
                         const PrimeInvariants&) = default;
};

// Primes absent from `primes` take the `other_primes` values.
struct InvariantReport {
  std::map<std::uint64_t, PrimeInvariants> primes;
  PrimeInvariants other_primes;
  bool bounded_exponent = true;
  bool finite_group = true;

  const PrimeInvariants& at(std::uint64_t p) const {
    auto it = primes.find(p);
    return it == primes.end() ? other_primes : it->second;
  }
  IndexClass U(std::uint64_t p, std::uint64_t n) const {
    return normalize_detail::power_of(p, at(p).ulm_exponent(n));
  }
  IndexClass D_lim(std::uint64_t p) const {
    return normalize_detail::power_of(p, at(p).D_lim);
  }
  IndexClass Tf_lim(std::uint64_t p) const {
    return normalize_detail::power_of(p, at(p).Tf_lim);
  }

  friend bool operator==(const InvariantReport&,
                         const InvariantReport&) = default;
};

inline PrimeInvariants prime_invariants(const PrimeComponent& raw) {
  const PrimeComponent c = normalize_detail::tidy(raw);
  PrimeInvariants out;
  bool some_alpha_omega = false;
  for (const auto& [n, m] : c.cyclic) {
    out.U[n - 1] = m;
    some_alpha_omega = some_alpha_omega || m.is_omega();
  }
  if (c.tail) {
    out.u_from = {c.tail->cutoff, c.tail->mult};
    out.D_lim = kOmega;
    out.Tf_lim = kOmega;
    out.quotient_pA_infinite = true;
    out.torsion_p_infinite = true;
    return out;
  }
  out.D_lim = c.div;
  out.Tf_lim = c.tf;
  out.quotient_pA_infinite = c.tf.is_omega() || some_alpha_omega;
  out.torsion_p_infinite = c.div.is_omega() || some_alpha_omega;
  return out;
}

// Computed from d itself rather than its normal form, so agreement between
// equivalent descriptions is a checkable property.
inline InvariantReport invariants(const SzmielewDescription& d) {
  InvariantReport out;
  out.other_primes = prime_invariants(
      d.prime_tail ? component_of(*d.prime_tail) : PrimeComponent{});
  bool any_omega = false;
  for (std::uint64_t p : d.mentioned_primes()) {
    const PrimeComponent c = d.component(p);
    PrimeInvariants inv = prime_invariants(c);
    if (c.tail || !c.tf.is_zero() || !c.div.is_zero()) {
      out.bounded_exponent = false;
    }
    for (const auto& [n, m] : c.cyclic) any_omega = any_omega || m.is_omega();
    if (!(inv == out.other_primes)) out.primes[p] = std::move(inv);
  }
  if (normalize_detail::has_nonzero_prime_tail(d) || !d.q_mult.is_zero()) {
    out.bounded_exponent = false;
  }
  out.finite_group = out.bounded_exponent && !any_omega;
  return out;
}

// Sets of primes read off the strict normal form. `infinite` marks sets that
// the prime_tail extends to infinitely many primes.
struct PrimeSet {
  std::set<std::uint64_t> primes;
  bool infinite = false;

  std::size_t size() const { return primes.size(); }
  bool empty() const { return primes.empty() && !infinite; }

  friend bool operator==(const PrimeSet&, const PrimeSet&) = default;
};

struct DerivedSets {
  PrimeSet Tf_inf;  // beta_p = omega
  PrimeSet D_inf;   // gamma_p = omega
  PrimeSet U_inf;   // unbounded p-length
  // n with alpha_{p,n+1} = omega, for primes where this set is finite.
  std::map<std::uint64_t, std::set<std::uint64_t>> U_inf_at;
  // Primes whose U_inf_at set is infinite (a tail of multiplicity omega).
  std::set<std::uint64_t> U_inf_at_infinite;
  // The common U_inf_at set of every unlisted prime.
  std::set<std::uint64_t> U_inf_at_other;

  friend bool operator==(const DerivedSets&, const DerivedSets&) = default;
};

inline DerivedSets derived_sets(const SzmielewDescription& desc) {
  const SzmielewDescription d = normalize(desc);
  DerivedSets out;
  for (std::uint64_t p : d.mentioned_primes()) {
    const PrimeComponent c = d.component(p);
    if (c.tf.is_omega()) out.Tf_inf.primes.insert(p);
    if (c.div.is_omega()) out.D_inf.primes.insert(p);
    if (c.tail) {
      out.U_inf.primes.insert(p);
      if (c.tail->mult.is_omega()) {
        out.U_inf_at_infinite.insert(p);
        continue;
      }
    }
    std::set<std::uint64_t> gaps;
    for (const auto& [n, m] : c.cyclic) {
      if (m.is_omega()) gaps.insert(n - 1);
    }
    if (!gaps.empty()) out.U_inf_at[p] = std::move(gaps);
  }
  if (d.prime_tail) {
    out.Tf_inf.infinite = d.prime_tail->tf_mult.is_omega();
    out.D_inf.infinite = d.prime_tail->div_mult.is_omega();
    for (const auto& [n, m] : d.prime_tail->cyclic_pattern) {
      if (m.is_omega()) out.U_inf_at_other.insert(n - 1);
    }
  }
  return out;
}

}  // namespace szk
