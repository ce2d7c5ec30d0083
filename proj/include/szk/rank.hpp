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
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "szk/description.hpp"
#include "szk/error.hpp"
#include "szk/formula.hpp"
#include "szk/normalize.hpp"
#include "szk/oracle.hpp"

namespace szk {

// Size of a largest subset of `s` whose elements pairwise differ by >= 2.
// Taking each element that clears the last one taken is optimal.
inline std::uint64_t gap_count(const std::set<std::uint64_t>& s) {
  std::uint64_t count = 0;
  std::optional<std::uint64_t> last;
  for (std::uint64_t x : s) {
    if (!last || x >= *last + 2) {
      ++count;
      last = x;
    }
  }
  return count;
}

// The subset chosen by gap_count.
inline std::vector<std::uint64_t> gap_subset(const std::set<std::uint64_t>& s) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t x : s) {
    if (out.empty() || x >= out.back() + 2) out.push_back(x);
  }
  return out;
}

struct DpValue {
  std::optional<std::uint64_t> finite;  // nullopt: infinite
  bool strong = true;                   // meaningful when infinite

  static DpValue of(std::uint64_t k) { return {k, true}; }
  static DpValue infinite(bool strong) { return {std::nullopt, strong}; }
  bool is_finite() const { return finite.has_value(); }

  std::string to_string() const {
    if (finite) return std::to_string(*finite);
    return strong ? "inf (strong)" : "inf (not strong)";
  }

  friend bool operator==(const DpValue&, const DpValue&) = default;
};

struct Epsilons {
  bool U = false;    // some prime of unbounded length
  bool Exp = false;  // unbounded exponent
  bool Tf = false;   // some beta_p != 0
  bool D = false;    // some gamma_p != 0

  friend bool operator==(const Epsilons&, const Epsilons&) = default;
};

// P1: unbounded length; P2: bounded length with some alpha = omega;
// P3: all alpha finite, finitely many nonzero, at least one nonzero.
struct Partition {
  PrimeSet P1, P2, P3;

  friend bool operator==(const Partition&, const Partition&) = default;
};

struct WitnessFamily {
  std::string source;
  std::vector<PPFormula> formulas;
  // Lower bound on the dp-rank this family certifies when valid.
  std::uint64_t certifies = 0;
};

struct RankReport {
  DpValue dp;
  std::string case_tag;  // "1".."4", "finite-group" or "infinite"
  DerivedSets derived;
  Epsilons epsilons;
  Partition partition;
  std::optional<std::vector<PPFormula>> witness;
};

struct Classification {
  bool strong = false;
  bool finite_dp = false;
  bool dp_minimal = false;

  friend bool operator==(const Classification&,
                         const Classification&) = default;
};

namespace rank_detail {

inline bool shape_has_omega_pattern(const SzmielewDescription& n) {
  if (!n.prime_tail) return false;
  return std::any_of(n.prime_tail->cyclic_pattern.begin(),
                     n.prime_tail->cyclic_pattern.end(),
                     [](const auto& kv) { return kv.second.is_omega(); });
}

// Infinitely many primes p with A/pA infinite.
inline bool quotient_infinite_often(const SzmielewDescription& n) {
  return n.prime_tail &&
         (n.prime_tail->tf_mult.is_omega() || shape_has_omega_pattern(n));
}

// Infinitely many primes p with A[p] infinite.
inline bool socle_infinite_often(const SzmielewDescription& n) {
  return n.prime_tail &&
         (n.prime_tail->div_mult.is_omega() || shape_has_omega_pattern(n));
}

inline bool has_omega_tail(const SzmielewDescription& n) {
  return std::any_of(n.cyclic_tail.begin(), n.cyclic_tail.end(),
                     [](const auto& kv) { return kv.second.mult.is_omega(); });
}

inline bool finite_group(const SzmielewDescription& n) {
  return invariants(n).finite_group;
}

inline Epsilons epsilons(const SzmielewDescription& n) {
  Epsilons e;
  e.U = !n.cyclic_tail.empty();
  e.Exp = !invariants(n).bounded_exponent;
  for (const auto& [p, m] : n.tf) e.Tf = e.Tf || !m.is_zero();
  for (const auto& [p, m] : n.div) e.D = e.D || !m.is_zero();
  if (n.prime_tail) {
    e.Tf = e.Tf || !n.prime_tail->tf_mult.is_zero();
    e.D = e.D || !n.prime_tail->div_mult.is_zero();
  }
  return e;
}

inline bool torsion_free(const SzmielewDescription& n) {
  for (const auto& [key, m] : n.cyclic) {
    if (!m.is_zero()) return false;
  }
  for (const auto& [p, m] : n.div) {
    if (!m.is_zero()) return false;
  }
  if (!n.cyclic_tail.empty()) return false;
  return !n.prime_tail || (n.prime_tail->cyclic_pattern.empty() &&
                           n.prime_tail->div_mult.is_zero());
}

inline std::uint64_t total_gaps(const DerivedSets& ds) {
  std::uint64_t sum = 0;
  for (const auto& [p, s] : ds.U_inf_at) sum += gap_count(s);
  return sum;
}

inline Partition partition(const SzmielewDescription& n) {
  Partition out;
  for (std::uint64_t p : n.mentioned_primes()) {
    const PrimeComponent c = n.component(p);
    if (c.tail) {
      out.P1.primes.insert(p);
      continue;
    }
    bool any = false;
    bool omega = false;
    for (const auto& [e, m] : c.cyclic) {
      any = any || !m.is_zero();
      omega = omega || m.is_omega();
    }
    if (omega) {
      out.P2.primes.insert(p);
    } else if (any) {
      out.P3.primes.insert(p);
    }
  }
  if (n.prime_tail && !n.prime_tail->cyclic_pattern.empty()) {
    (shape_has_omega_pattern(n) ? out.P2 : out.P3).infinite = true;
  }
  return out;
}

}  // namespace rank_detail

// Closed-form dp-rank by the four cases, with 0 for finite groups.
inline DpValue dp_case_value(const SzmielewDescription& desc,
                             std::string* case_tag = nullptr) {
  using namespace rank_detail;
  const SzmielewDescription n = normalize(desc);
  auto tag = [&](const char* t) {
    if (case_tag) *case_tag = t;
  };
  if (finite_group(n)) {
    tag("finite-group");
    return DpValue::of(0);
  }
  const bool strong = !quotient_infinite_often(n) && !has_omega_tail(n);
  if (quotient_infinite_often(n) || socle_infinite_often(n) ||
      has_omega_tail(n)) {
    tag("infinite");
    return DpValue::infinite(strong);
  }
  const DerivedSets ds = derived_sets(n);
  const std::uint64_t tf = ds.Tf_inf.size();
  const std::uint64_t d = ds.D_inf.size();
  const std::uint64_t gaps = total_gaps(ds);
  if (torsion_free(n)) {
    tag("1");
    return DpValue::of(std::max<std::uint64_t>(1, tf));
  }
  if (invariants(n).bounded_exponent) {
    tag("2");
    return DpValue::of(gaps);
  }
  if (!ds.U_inf.empty()) {
    tag("4");
    return DpValue::of(gaps + ds.U_inf.size() + std::max(tf, d));
  }
  tag("3");
  return DpValue::of(gaps + std::max<std::uint64_t>({1, tf, d}));
}

// The single equation with indicator flags; agrees with dp_case_value on
// infinite groups of finite dp-rank.
inline std::uint64_t dp_epsilon_value(const SzmielewDescription& desc) {
  const SzmielewDescription n = normalize(desc);
  const DerivedSets ds = derived_sets(n);
  const Epsilons e = rank_detail::epsilons(n);
  const std::uint64_t tf = ds.Tf_inf.size();
  const std::uint64_t d = ds.D_inf.size();
  const std::uint64_t eu = e.U ? 1 : 0;
  const std::uint64_t etd = (e.Tf || e.D) ? 1 : 0;
  const std::uint64_t top = std::max({eu, etd});
  return rank_detail::total_gaps(ds) + ds.U_inf.size() +
         (1 - top) * (e.Exp ? 1 : 0) +
         etd * std::max<std::uint64_t>({1 - eu, tf, d});
}

inline Classification classify(const SzmielewDescription& desc) {
  using namespace rank_detail;
  const SzmielewDescription n = normalize(desc);
  Classification c;
  c.strong = !quotient_infinite_often(n) && !has_omega_tail(n);
  c.finite_dp = c.strong && !socle_infinite_often(n);
  c.dp_minimal = dp_case_value(n) == DpValue::of(1);
  if (c.finite_dp && !c.strong) throw InternalError("finite dp but not strong");
  return c;
}

// Constructive families for the named shapes of n's normal form.
inline std::vector<WitnessFamily> seed_witnesses(const SzmielewDescription& desc) {
  const SzmielewDescription n = normalize(desc);
  const DerivedSets ds = derived_sets(n);
  std::vector<WitnessFamily> out;
  // Members below keep every chosen Ulm gap block whole, so they combine
  // with the ulm-gaps family at the same prime.
  auto deepest_gap = [&](std::uint64_t p) -> std::uint64_t {
    auto it = ds.U_inf_at.find(p);
    return it == ds.U_inf_at.end() ? 0 : *it->second.rbegin() + 1;
  };
  // tor(m_p) for p in s: exponent past the deepest gap at every gap prime,
  // and one more at the primes of s other than p.
  auto coprime_torsion = [&](const std::set<std::uint64_t>& s) {
    std::set<std::uint64_t> primes = s;
    for (const auto& [q, gaps] : ds.U_inf_at) primes.insert(q);
    std::vector<PPFormula> fs;
    for (std::uint64_t p : s) {
      std::uint64_t m = 1;
      for (std::uint64_t q : primes) {
        const std::uint64_t e = deepest_gap(q) + (q != p && s.contains(q) ? 1 : 0);
        m = checked_mul(m, checked_pow(q, e));
      }
      fs.push_back({Tor{m}});
    }
    return fs;
  };
  if (!ds.Tf_inf.primes.empty()) {
    WitnessFamily f{"local-divisibility", {}, ds.Tf_inf.size()};
    for (std::uint64_t p : ds.Tf_inf.primes) {
      // p^r Z_(p) with r past the gap depths, cut below the gap blocks.
      const std::uint64_t r = ds.U_inf_at.contains(p) ? gap_count(ds.U_inf_at.at(p)) + 1 : 1;
      const std::uint64_t R = r + deepest_gap(p);
      f.formulas.push_back({Div{p, R, R - r}});
    }
    out.push_back(f);
  }
  if (!ds.D_inf.primes.empty()) {
    out.push_back({"coprime-torsion", coprime_torsion(ds.D_inf.primes), ds.D_inf.size()});
  }
  if (!ds.U_inf.primes.empty()) {
    WitnessFamily f{"unbounded-length", {}, ds.U_inf.size()};
    for (std::uint64_t p : ds.U_inf.primes) f.formulas.push_back({Div{p, 1, 0}});
    out.push_back(f);
    std::set<std::uint64_t> both = ds.U_inf.primes;
    both.insert(ds.D_inf.primes.begin(), ds.D_inf.primes.end());
    out.push_back({"unbounded-length-torsion", coprime_torsion(both), both.size()});
  }
  for (const auto& [p, s] : ds.U_inf_at) {
    WitnessFamily f{"ulm-gaps", {}, gap_count(s)};
    std::uint64_t j = 0;
    for (std::uint64_t u : gap_subset(s)) {
      // alpha_{p,u+1} = omega; the j-th member cuts Z(p^(u+1)) at depth j.
      ++j;
      f.formulas.push_back({Div{p, u + 1, u + 1 - j}});
    }
    out.push_back(f);
  }
  for (std::uint64_t p : ds.U_inf_at_infinite) {
    WitnessFamily f{"non-strong-tail", {}, 3};
    std::uint64_t k = n.cyclic_tail.at(p).cutoff + 1;
    for (int i = 0; i < 3; ++i, k = 2 * k + 1) {
      f.formulas.push_back({Div{p, 2 * k, k}});
    }
    out.push_back(f);
  }
  std::uint64_t exponent = 1;
  for (const auto& [key, m] : n.cyclic) {
    if (!m.is_zero() && !n.cyclic_tail.contains(key.first)) {
      exponent = std::lcm(exponent, checked_pow(key.first, key.second));
    }
  }
  if (exponent > 1 && !invariants(n).bounded_exponent) {
    out.push_back({"bounded-torsion", {PPFormula{Tor{exponent}}}, 1});
  }
  if (!rank_detail::finite_group(n)) {
    out.push_back({"infinite-group", {PPFormula{Tor{1}}}, 1});
  }
  return out;
}

namespace rank_detail {

// A family of size k assembled from the seeds, verified; nullopt if none of
// the combinations tried is valid.
inline std::optional<std::vector<PPFormula>> assemble_witness(
    const SzmielewDescription& n, const std::vector<WitnessFamily>& seeds,
    std::uint64_t k) {
  if (k == 0) return std::nullopt;
  std::vector<PPFormula> gaps;
  std::vector<const WitnessFamily*> others;
  for (const auto& f : seeds) {
    if (f.source == "ulm-gaps") {
      gaps.insert(gaps.end(), f.formulas.begin(), f.formulas.end());
    } else if (f.source != "non-strong-tail") {
      others.push_back(&f);
    }
  }
  auto try_family = [&](std::vector<PPFormula> fam)
      -> std::optional<std::vector<PPFormula>> {
    if (fam.size() != k) return std::nullopt;
    if (!verify_inp(n, fam).valid) return std::nullopt;
    return fam;
  };
  if (auto w = try_family(gaps)) return w;
  const std::size_t m = others.size();
  // Every subset of the other seed families, smallest first.
  for (std::size_t size = 1; size <= m; ++size) {
    for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcountll(mask)) != size) continue;
      std::vector<PPFormula> fam = gaps;
      for (std::size_t i = 0; i < m; ++i) {
        if (mask & (std::size_t{1} << i)) {
          fam.insert(fam.end(), others[i]->formulas.begin(),
                     others[i]->formulas.end());
        }
      }
      if (auto w = try_family(fam)) return w;
    }
  }
  return std::nullopt;
}

}  // namespace rank_detail

inline RankReport dp_rank(const SzmielewDescription& desc) {
  const SzmielewDescription n = normalize(desc);
  RankReport r;
  r.dp = dp_case_value(n, &r.case_tag);
  r.derived = derived_sets(n);
  r.epsilons = rank_detail::epsilons(n);
  r.partition = rank_detail::partition(n);
  if (r.dp.is_finite() && r.case_tag != "finite-group") {
    const std::uint64_t eps = dp_epsilon_value(n);
    if (eps != *r.dp.finite) {
      throw InternalError("epsilon equation gives " + std::to_string(eps) +
                          ", case equation gives " + r.dp.to_string());
    }
    r.witness = rank_detail::assemble_witness(n, seed_witnesses(n), *r.dp.finite);
  }
  return r;
}

struct VcReport {
  std::vector<std::pair<std::uint64_t, DpValue>> values;  // (m, vc(m))
};

inline DpValue vc_density(const SzmielewDescription& desc, std::uint64_t m) {
  if (m == 0) throw InputError("vc density needs m >= 1");
  const DpValue dp = dp_case_value(desc);
  if (!dp.is_finite()) return dp;
  if (*dp.finite > UINT64_MAX / m) throw InputError("vc density overflow");
  return DpValue::of(m * *dp.finite);
}

inline VcReport vc_report(const SzmielewDescription& desc,
                          const std::vector<std::uint64_t>& ms) {
  VcReport out;
  for (std::uint64_t m : ms) out.values.emplace_back(m, vc_density(desc, m));
  return out;
}

}  // namespace szk
