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
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "szk/description.hpp"
#include "szk/error.hpp"
#include "szk/formula.hpp"
#include "szk/index_class.hpp"
#include "szk/normalize.hpp"
#include "szk/ppeval.hpp"
#include "szk/primes.hpp"

namespace szk {

inline constexpr std::size_t kDefaultMaxPool = 200000;

// Pool cap from SZK_MAX_POOL, else the default.
inline std::size_t max_pool_from_env() {
  if (const char* v = std::getenv("SZK_MAX_POOL")) {
    char* end = nullptr;
    const unsigned long long n = std::strtoull(v, &end, 10);
    if (end != v && *end == '\0' && n > 0) return static_cast<std::size_t>(n);
    throw InputError("SZK_MAX_POOL must be a positive integer");
  }
  return kDefaultMaxPool;
}

// Primes the pool ranges over: those of the normal form, plus one unlisted
// prime standing for the prime_tail.
inline std::vector<std::uint64_t> pool_primes(const SzmielewDescription& n) {
  std::set<std::uint64_t> ps = n.mentioned_primes();
  if (n.prime_tail) ps.insert(first_prime_not_in(ps));
  if (ps.empty()) ps.insert(2);
  return {ps.begin(), ps.end()};
}

// Every tor(m) with m a product of p^e (e <= B) over the pool primes, in
// increasing m, then every div(p,r,s) with s < r <= B.
inline std::vector<PPFormula> raw_pool(const SzmielewDescription& n,
                                       std::uint64_t B,
                                       std::size_t cap = max_pool_from_env()) {
  if (B == 0) throw InputError("pool bound must be >= 1");
  const std::vector<std::uint64_t> primes = pool_primes(n);
  std::vector<std::uint64_t> ms{1};
  for (std::uint64_t p : primes) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t m : ms) {
      std::uint64_t q = m;
      for (std::uint64_t e = 0; e <= B; ++e) {
        next.push_back(q);
        if (next.size() > cap) {
          throw CapExceeded("candidate pool exceeds cap of " +
                            std::to_string(cap));
        }
        if (e < B) {
          if (q > UINT64_MAX / p) {
            throw CapExceeded("tor product exceeds 64 bits; lower the pool bound");
          }
          q *= p;
        }
      }
    }
    ms = std::move(next);
  }
  std::sort(ms.begin(), ms.end());
  std::vector<PPFormula> out;
  for (std::uint64_t m : ms) out.push_back(PPFormula{Tor{m}});
  for (std::uint64_t p : primes) {
    for (std::uint64_t r = 1; r <= B; ++r) {
      for (std::uint64_t s = 0; s < r; ++s) out.push_back(PPFormula{Div{p, r, s}});
    }
  }
  if (out.size() > cap) {
    throw CapExceeded("candidate pool exceeds cap of " + std::to_string(cap));
  }
  return out;
}

// Integer encoding of the local subgroups of a profile; equal keys mean equal
// profiles over the same materialization.
inline std::vector<std::int64_t> profile_key(const SubgroupProfile& h) {
  std::vector<std::int64_t> key;
  auto opt = [](const std::optional<std::uint64_t>& v) {
    return v ? static_cast<std::int64_t>(*v) : std::int64_t{-1};
  };
  for (const LocalSubgroup& l : h.locals) {
    std::visit(
        [&](const auto& u) {
          using T = std::decay_t<decltype(u)>;
          if constexpr (std::is_same_v<T, CyclicLocal>) {
            key.push_back(static_cast<std::int64_t>(u.depth));
          } else if constexpr (std::is_same_v<T, TailLocal>) {
            key.push_back(static_cast<std::int64_t>(u.a));
            key.push_back(opt(u.b));
          } else if constexpr (std::is_same_v<T, LocalRingLocal>) {
            key.push_back(opt(u.depth));
          } else if constexpr (std::is_same_v<T, PruferLocal>) {
            key.push_back(opt(u.bound));
          } else {
            key.push_back(u.whole ? 1 : 0);
          }
        },
        l);
  }
  return key;
}

// raw_pool, keeping the first formula of each evaluated profile.
inline std::vector<PPFormula> candidate_pool(const SzmielewDescription& desc,
                                             std::uint64_t B) {
  const SzmielewDescription n = normalize(desc);
  const std::vector<PPFormula> raw = raw_pool(n, B);
  const auto mat = materialize(n, raw);
  std::vector<PPFormula> out;
  std::set<std::vector<std::int64_t>> seen;
  for (const auto& f : raw) {
    if (seen.insert(profile_key(eval_formula(mat, f))).second) out.push_back(f);
  }
  return out;
}

struct InpVerdict {
  bool valid = false;
  std::vector<IndexClass> transcript;  // [meet of others : meet of all]
};

inline SubgroupProfile meet_all(const std::vector<SubgroupProfile>& hs,
                                std::shared_ptr<const Materialization> mat,
                                std::optional<std::size_t> skip = {}) {
  SubgroupProfile out = whole_profile(mat);
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (skip && *skip == i) continue;
    out = meet(out, hs[i]);
  }
  return out;
}

inline InpVerdict verify_inp(const SzmielewDescription& desc,
                             const std::vector<PPFormula>& family) {
  if (family.empty()) throw InputError("family must be non-empty");
  const auto mat = materialize(desc, family);
  std::vector<SubgroupProfile> hs;
  for (const auto& f : family) hs.push_back(eval_formula(mat, f));
  const SubgroupProfile all = meet_all(hs, mat);
  InpVerdict out;
  out.valid = true;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    out.transcript.push_back(index_class(meet_all(hs, mat, i), all));
    out.valid = out.valid && out.transcript.back().is_infinite();
  }
  return out;
}

// B0 = largest exponent of the normal form + 2.
inline std::uint64_t default_pool_bound(const SzmielewDescription& desc) {
  return max_exponent(normalize(desc)) + 2;
}

struct BreadthOptions {
  unsigned jobs = 1;
  std::uint64_t max_nodes = 50'000'000;  // search nodes before giving up
};

struct BreadthResult {
  std::uint64_t depth = 0;
  std::vector<PPFormula> witness;
  std::uint64_t pool_bound = 0;
  bool exhausted = true;
  std::size_t pool_size = 0;     // after profile dedupe
  std::size_t search_size = 0;   // classes actually searched
};

namespace oracle_detail {

// A key that two profiles share exactly when each has finite index in their
// meet (commensurability). Finite families only remember the coarse shape of
// the local subgroup; omega families remember it exactly.
inline std::vector<std::int64_t> commensurability_key(const SubgroupProfile& h) {
  std::vector<std::int64_t> key;
  constexpr std::int64_t kInf = -1;
  auto opt = [&](const std::optional<std::uint64_t>& v) {
    return v ? static_cast<std::int64_t>(*v) : kInf;
  };
  for (std::size_t i = 0; i < h.mat->blocks.size(); ++i) {
    const Block& b = h.mat->blocks[i];
    const LocalSubgroup& l = h.locals[i];
    const bool exact = b.mult.is_omega();
    switch (b.kind) {
      case BlockKind::kCyclic:
        key.push_back(exact ? static_cast<std::int64_t>(
                                  std::get<CyclicLocal>(l).depth)
                            : 0);
        break;
      case BlockKind::kTail: {
        const auto& t = std::get<TailLocal>(l);
        key.push_back(opt(t.b));
        key.push_back(exact || !t.b ? static_cast<std::int64_t>(t.a) : 0);
        break;
      }
      case BlockKind::kLocal: {
        const auto& d = std::get<LocalRingLocal>(l).depth;
        key.push_back(d ? (exact ? static_cast<std::int64_t>(*d) : 0) : kInf);
        break;
      }
      case BlockKind::kPrufer: {
        const auto& bound = std::get<PruferLocal>(l).bound;
        key.push_back(bound ? (exact ? static_cast<std::int64_t>(*bound) : 0)
                            : kInf);
        break;
      }
      default:
        key.push_back(std::get<WholeOrZero>(l).whole ? 1 : 0);
        break;
    }
  }
  return key;
}

struct SearchSpace {
  std::shared_ptr<const Materialization> mat;
  std::vector<SubgroupProfile> profiles;  // one per searched class
  std::vector<std::size_t> pool_index;    // representative formula
};

// Depth-first search over valid families. Validity is inherited by
// subfamilies, so only valid families are extended; the first family of the
// best size found is the lexicographically least one.
class Search {
 public:
  Search(const SearchSpace& space, std::uint64_t max_k,
         std::atomic<std::uint64_t>& nodes, std::uint64_t max_nodes)
      : s_(space), max_k_(max_k), nodes_(nodes), max_nodes_(max_nodes) {}

  void run_from(std::size_t first) {
    std::vector<std::size_t> fam{first};
    std::vector<SubgroupProfile> partial{s_.profiles[first]};
    if (!valid_extension({}, whole_profile(s_.mat), first)) return;
    record(fam);
    dfs(fam, partial);
  }

  std::vector<std::size_t> best;
  bool aborted = false;

 private:
  void record(const std::vector<std::size_t>& fam) {
    if (fam.size() > best.size()) best = fam;
  }

  // Whether fam + {next} is valid, given that fam is valid. The meets of fam
  // are recomputed; families stay small.
  bool valid_extension(const std::vector<std::size_t>& fam,
                       const SubgroupProfile& fam_meet, std::size_t next) {
    if (++nodes_ > max_nodes_) {
      aborted = true;
      return false;
    }
    const SubgroupProfile& h = s_.profiles[next];
    const SubgroupProfile all = meet(fam_meet, h);
    if (index_class(fam_meet, all).is_finite()) return false;
    for (std::size_t i = 0; i < fam.size(); ++i) {
      SubgroupProfile others = h;
      for (std::size_t j = 0; j < fam.size(); ++j) {
        if (j != i) others = meet(others, s_.profiles[fam[j]]);
      }
      if (index_class(others, all).is_finite()) return false;
    }
    return true;
  }

  void dfs(std::vector<std::size_t>& fam, std::vector<SubgroupProfile>& meets) {
    if (fam.size() >= max_k_ || aborted) return;
    const std::size_t n = s_.profiles.size();
    for (std::size_t next = fam.back() + 1; next < n; ++next) {
      if (best.size() >= max_k_) return;
      // Even taking every remaining class cannot beat the best so far.
      if (fam.size() + (n - next) <= best.size()) return;
      if (!valid_extension(fam, meets.back(), next)) {
        if (aborted) return;
        continue;
      }
      fam.push_back(next);
      meets.push_back(meet(meets.back(), s_.profiles[next]));
      record(fam);
      dfs(fam, meets);
      fam.pop_back();
      meets.pop_back();
    }
  }

  const SearchSpace& s_;
  std::uint64_t max_k_;
  std::atomic<std::uint64_t>& nodes_;
  std::uint64_t max_nodes_;
};

inline SearchSpace reduce_pool(const SzmielewDescription& n,
                               const std::vector<PPFormula>& pool) {
  SearchSpace out;
  out.mat = materialize(n, pool);
  const SubgroupProfile whole = whole_profile(out.mat);
  const auto whole_key = commensurability_key(whole);
  std::map<std::vector<std::int64_t>, std::size_t> class_of;
  std::vector<SubgroupProfile> reps;
  std::vector<std::size_t> rep_index;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    SubgroupProfile h = eval_formula(out.mat, pool[i]);
    auto key = commensurability_key(h);
    if (key == whole_key || class_of.contains(key)) continue;
    class_of.emplace(std::move(key), reps.size());
    reps.push_back(std::move(h));
    rep_index.push_back(i);
  }
  // Drop classes that are the meet of two other classes: any valid family
  // using one can swap it for one of the two coarser classes.
  std::vector<bool> reducible(reps.size(), false);
  for (std::size_t a = 0; a < reps.size(); ++a) {
    for (std::size_t b = a + 1; b < reps.size(); ++b) {
      auto it = class_of.find(commensurability_key(meet(reps[a], reps[b])));
      if (it != class_of.end() && it->second != a && it->second != b) {
        reducible[it->second] = true;
      }
    }
  }
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (reducible[i]) continue;
    out.profiles.push_back(reps[i]);
    out.pool_index.push_back(rep_index[i]);
  }
  return out;
}

}  // namespace oracle_detail

// Largest k <= max_k such that k pool formulas form a valid inp family.
inline BreadthResult breadth_search(const SzmielewDescription& desc,
                                    std::uint64_t B, std::uint64_t max_k,
                                    const BreadthOptions& opts = {}) {
  if (B == 0) throw InputError("pool bound must be >= 1");
  if (max_k == 0) throw InputError("max depth must be >= 1");
  const SzmielewDescription n = normalize(desc);
  const std::vector<PPFormula> pool = candidate_pool(n, B);
  const oracle_detail::SearchSpace space = oracle_detail::reduce_pool(n, pool);
  BreadthResult out;
  out.pool_bound = B;
  out.pool_size = pool.size();
  out.search_size = space.profiles.size();

  const std::size_t count = space.profiles.size();
  std::vector<std::vector<std::size_t>> best(count);
  std::vector<bool> aborted(count, false);
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> global_best{0};
  std::atomic<std::size_t> first_full{count};  // least branch reaching max_k
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      // Skipped branches can neither beat nor tie an earlier winner, so the
      // result does not depend on scheduling.
      if (count - i < global_best.load() || i > first_full.load()) continue;
      oracle_detail::Search s(space, max_k, nodes, opts.max_nodes);
      s.run_from(i);
      best[i] = s.best;
      aborted[i] = s.aborted;
      std::size_t seen = global_best.load();
      while (s.best.size() > seen &&
             !global_best.compare_exchange_weak(seen, s.best.size())) {
      }
      if (s.best.size() >= max_k) {
        std::size_t f = first_full.load();
        while (i < f && !first_full.compare_exchange_weak(f, i)) {
        }
      }
    }
  };
  const unsigned jobs = std::max(1u, opts.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  const std::vector<std::size_t>* winner = nullptr;
  for (std::size_t i = 0; i < count; ++i) {
    if (aborted[i]) out.exhausted = false;
    if (!winner || best[i].size() > winner->size()) winner = &best[i];
  }
  if (winner) {
    out.depth = winner->size();
    for (std::size_t c : *winner) {
      out.witness.push_back(pool[space.pool_index[c]]);
    }
  }
  return out;
}

}  // namespace szk
