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
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "szk/description.hpp"
#include "szk/error.hpp"
#include "szk/formula.hpp"
#include "szk/index_class.hpp"
#include "szk/mult.hpp"
#include "szk/primes.hpp"

namespace szk {

enum class BlockKind { kCyclic, kTail, kLocal, kPrufer, kRational, kResidual };

// One family of isomorphic summands. kCyclic is Z(p^n); kTail stands for
// Z(p^k) for every k > n; kLocal is Z_(p); kPrufer is Z(p^inf); kResidual is
// the prime_tail shape at every prime not materialized.
struct Block {
  BlockKind kind;
  std::uint64_t p = 0;
  std::uint64_t n = 0;
  Mult mult = 1;

  friend bool operator==(const Block&, const Block&) = default;
};

// A description cut into finitely many blocks, fine enough that every atom
// of the formulas it was built for is uniform on each block.
struct Materialization {
  SzmielewDescription desc;
  std::map<std::uint64_t, std::uint64_t> split;  // tail prime -> threshold
  std::set<std::uint64_t> extra_primes;          // taken out of prime_tail
  std::vector<Block> blocks;

  friend bool operator==(const Materialization& a, const Materialization& b) {
    return a.split == b.split && a.extra_primes == b.extra_primes &&
           a.blocks == b.blocks && a.desc == b.desc;
  }
};

// Local subgroups, one chain per block kind.
struct CyclicLocal {
  std::uint64_t depth = 0;  // p^depth Z(p^n)
  friend bool operator==(const CyclicLocal&, const CyclicLocal&) = default;
};
struct TailLocal {
  std::uint64_t a = 0;             // at block n: depth max(a, n - b)
  std::optional<std::uint64_t> b;  // nullopt is infinity
  friend bool operator==(const TailLocal&, const TailLocal&) = default;
};
struct LocalRingLocal {
  std::optional<std::uint64_t> depth;  // nullopt is the zero subgroup
  friend bool operator==(const LocalRingLocal&,
                         const LocalRingLocal&) = default;
};
struct PruferLocal {
  std::optional<std::uint64_t> bound;  // p^bound-torsion; nullopt is whole
  friend bool operator==(const PruferLocal&, const PruferLocal&) = default;
};
struct WholeOrZero {
  bool whole = true;
  friend bool operator==(const WholeOrZero&, const WholeOrZero&) = default;
};

using LocalSubgroup =
    std::variant<CyclicLocal, TailLocal, LocalRingLocal, PruferLocal,
                 WholeOrZero>;

struct SubgroupProfile {
  std::shared_ptr<const Materialization> mat;
  std::vector<LocalSubgroup> locals;  // parallel to mat->blocks

  friend bool operator==(const SubgroupProfile& a, const SubgroupProfile& b) {
    return a.locals == b.locals && (a.mat == b.mat || *a.mat == *b.mat);
  }
};

namespace ppeval_detail {

inline std::uint64_t required_split(const SzmielewDescription& d,
                                    std::uint64_t p,
                                    std::span<const PPFormula> formulas) {
  std::uint64_t t = d.cyclic_tail.at(p).cutoff;
  for (const auto& f : formulas) {
    for (const auto& a : f.atoms) {
      if (const auto* x = std::get_if<Div>(&a)) {
        if (x->p == p) t = std::max(t, x->r);
      } else {
        t = std::max(t, valuation(std::get<Tor>(a).m, p));
      }
    }
  }
  return t;
}

inline std::vector<Block> build_blocks(const Materialization& m) {
  const SzmielewDescription& d = m.desc;
  std::set<std::uint64_t> primes = d.mentioned_primes();
  primes.insert(m.extra_primes.begin(), m.extra_primes.end());
  std::vector<Block> out;
  for (std::uint64_t p : primes) {
    const PrimeComponent c = d.component(p);
    std::uint64_t top = c.max_listed_exponent();
    if (c.tail) top = std::max(top, m.split.at(p));
    for (std::uint64_t n = 1; n <= top; ++n) {
      const Mult a = c.alpha(n);
      if (!a.is_zero()) out.push_back({BlockKind::kCyclic, p, n, a});
    }
    if (c.tail) out.push_back({BlockKind::kTail, p, m.split.at(p), c.tail->mult});
    if (!c.tf.is_zero()) out.push_back({BlockKind::kLocal, p, 0, c.tf});
    if (!c.div.is_zero()) out.push_back({BlockKind::kPrufer, p, 0, c.div});
  }
  if (!d.q_mult.is_zero()) out.push_back({BlockKind::kRational, 0, 0, d.q_mult});
  if (d.prime_tail && !d.prime_tail->is_zero()) {
    out.push_back({BlockKind::kResidual, 0, 0, kOmega});
  }
  return out;
}

inline TailLocal canonical_tail(TailLocal t, std::uint64_t threshold) {
  if (t.b && t.a + *t.b <= threshold + 1) t.a = 0;
  return t;
}

inline std::uint64_t tail_depth(const TailLocal& t, std::uint64_t n) {
  std::uint64_t d = t.a;
  if (t.b && n > *t.b) d = std::max(d, n - *t.b);
  return std::min(d, n);
}

inline LocalSubgroup whole_local(const Block& b) {
  switch (b.kind) {
    case BlockKind::kCyclic:
      return CyclicLocal{0};
    case BlockKind::kTail:
      return TailLocal{0, std::nullopt};
    case BlockKind::kLocal:
      return LocalRingLocal{0};
    case BlockKind::kPrufer:
      return PruferLocal{std::nullopt};
    default:
      return WholeOrZero{true};
  }
}

inline LocalSubgroup eval_atom(const Block& b, const Atom& atom) {
  const Div* div = std::get_if<Div>(&atom);
  const Tor* tor = std::get_if<Tor>(&atom);
  const bool same = div && div->p == b.p;
  switch (b.kind) {
    case BlockKind::kCyclic:
      if (same) {
        const std::uint64_t above = b.n > div->s ? b.n - div->s : 0;
        return CyclicLocal{std::min(div->r - div->s, above)};
      }
      if (div) return CyclicLocal{0};
      {
        const std::uint64_t v = valuation(tor->m, b.p);
        return CyclicLocal{b.n > v ? b.n - v : 0};
      }
    case BlockKind::kTail:
      if (same) return canonical_tail({div->r - div->s, std::nullopt}, b.n);
      if (div) return TailLocal{0, std::nullopt};
      return canonical_tail({0, valuation(tor->m, b.p)}, b.n);
    case BlockKind::kLocal:
      if (same) return LocalRingLocal{div->r - div->s};
      if (div) return LocalRingLocal{0};
      return LocalRingLocal{std::nullopt};
    case BlockKind::kPrufer:
      if (div) return PruferLocal{std::nullopt};
      return PruferLocal{valuation(tor->m, b.p)};
    default:
      return WholeOrZero{div != nullptr};
  }
}

inline LocalSubgroup meet_local(const LocalSubgroup& x, const LocalSubgroup& y,
                                const Block& b) {
  return std::visit(
      [&](const auto& u) -> LocalSubgroup {
        using T = std::decay_t<decltype(u)>;
        const T& v = std::get<T>(y);
        if constexpr (std::is_same_v<T, CyclicLocal>) {
          return CyclicLocal{std::max(u.depth, v.depth)};
        } else if constexpr (std::is_same_v<T, TailLocal>) {
          std::optional<std::uint64_t> bb = u.b;
          if (!bb || (v.b && *v.b < *bb)) bb = v.b;
          return canonical_tail({std::max(u.a, v.a), bb}, b.n);
        } else if constexpr (std::is_same_v<T, LocalRingLocal>) {
          if (!u.depth || !v.depth) return LocalRingLocal{std::nullopt};
          return LocalRingLocal{std::max(*u.depth, *v.depth)};
        } else if constexpr (std::is_same_v<T, PruferLocal>) {
          if (!u.bound) return v;
          if (!v.bound) return u;
          return PruferLocal{std::min(*u.bound, *v.bound)};
        } else {
          return WholeOrZero{u.whole && v.whole};
        }
      },
      x);
}

// Product of p^e over mult copies, or infinite.
inline IndexClass copies(std::uint64_t p, std::uint64_t e, const Mult& mult) {
  if (e == 0) return IndexClass();
  if (mult.is_omega()) return IndexClass::infinite();
  const Mult total = Mult(e) * mult;
  return IndexClass::prime_power(p, total.value());
}

// [h : m] for m contained in h, per block family.
inline IndexClass local_index(const LocalSubgroup& h, const LocalSubgroup& m,
                              const Block& b) {
  return std::visit(
      [&](const auto& u) -> IndexClass {
        using T = std::decay_t<decltype(u)>;
        const T& v = std::get<T>(m);
        if constexpr (std::is_same_v<T, CyclicLocal>) {
          return copies(b.p, v.depth - u.depth, b.mult);
        } else if constexpr (std::is_same_v<T, TailLocal>) {
          if (v.b && !u.b) return IndexClass::infinite();
          if (!v.b && !u.b && v.a > u.a) return IndexClass::infinite();
          if (v.b && u.b && *v.b < *u.b) return IndexClass::infinite();
          // Past `last` both depths are n - b (or constant), so they agree.
          std::uint64_t last = b.n;
          last = std::max(last, u.a + u.b.value_or(0));
          last = std::max(last, v.a + v.b.value_or(0));
          IndexClass out;
          for (std::uint64_t n = b.n + 1; n <= last; ++n) {
            out *= copies(b.p, tail_depth(v, n) - tail_depth(u, n), b.mult);
          }
          return out;
        } else if constexpr (std::is_same_v<T, LocalRingLocal>) {
          if (!u.depth) return IndexClass();
          if (!v.depth) return IndexClass::infinite();
          return copies(b.p, *v.depth - *u.depth, b.mult);
        } else if constexpr (std::is_same_v<T, PruferLocal>) {
          if (!u.bound) {
            return v.bound ? IndexClass::infinite() : IndexClass();
          }
          return copies(b.p, *u.bound - *v.bound, b.mult);
        } else {
          return u.whole && !v.whole ? IndexClass::infinite() : IndexClass();
        }
      },
      h);
}

}  // namespace ppeval_detail

// A materialization of d fine enough for all of `formulas`.
inline std::shared_ptr<const Materialization> materialize(
    const SzmielewDescription& d, std::span<const PPFormula> formulas) {
  auto m = std::make_shared<Materialization>();
  m->desc = d;
  for (const auto& [p, t] : d.cyclic_tail) {
    m->split[p] = ppeval_detail::required_split(d, p, formulas);
  }
  if (d.prime_tail && !d.prime_tail->is_zero()) {
    for (const auto& f : formulas) {
      for (std::uint64_t p : f.primes()) {
        if (!d.mentions(p)) m->extra_primes.insert(p);
      }
    }
  }
  m->blocks = ppeval_detail::build_blocks(*m);
  return m;
}

// The coarsest materialization refining both a and b.
inline std::shared_ptr<const Materialization> common_refinement(
    const std::shared_ptr<const Materialization>& a,
    const std::shared_ptr<const Materialization>& b) {
  if (a == b || *a == *b) return a;
  if (!(a->desc == b->desc)) {
    throw InternalError("profiles over different descriptions");
  }
  auto m = std::make_shared<Materialization>(*a);
  for (const auto& [p, t] : b->split) m->split[p] = std::max(m->split[p], t);
  m->extra_primes.insert(b->extra_primes.begin(), b->extra_primes.end());
  m->blocks = ppeval_detail::build_blocks(*m);
  return m;
}

// Re-expresses h over a finer materialization.
inline SubgroupProfile refine(const SubgroupProfile& h,
                              std::shared_ptr<const Materialization> target) {
  using namespace ppeval_detail;
  if (h.mat == target || *h.mat == *target) return {target, h.locals};
  const auto& src = h.mat->blocks;
  auto find = [&](BlockKind kind, std::uint64_t p,
                  std::uint64_t n) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < src.size(); ++i) {
      if (src[i].kind == kind && src[i].p == p &&
          (kind != BlockKind::kCyclic || src[i].n == n)) {
        return i;
      }
    }
    return std::nullopt;
  };
  std::optional<std::size_t> residual = find(BlockKind::kResidual, 0, 0);
  SubgroupProfile out{target, {}};
  for (const Block& b : target->blocks) {
    if (auto i = find(b.kind, b.p, b.n)) {
      LocalSubgroup l = h.locals[*i];
      if (b.kind == BlockKind::kTail) {
        l = canonical_tail(std::get<TailLocal>(l), b.n);
      }
      out.locals.push_back(l);
      continue;
    }
    if (b.kind == BlockKind::kCyclic) {
      if (auto t = find(BlockKind::kTail, b.p, 0)) {
        out.locals.push_back(
            CyclicLocal{tail_depth(std::get<TailLocal>(h.locals[*t]), b.n)});
        continue;
      }
    }
    if (!residual || !h.mat->desc.prime_tail || h.mat->desc.mentions(b.p)) {
      throw InternalError("target materialization does not refine source");
    }
    const bool whole = std::get<WholeOrZero>(h.locals[*residual]).whole;
    switch (b.kind) {
      case BlockKind::kCyclic:
        out.locals.push_back(CyclicLocal{whole ? 0 : b.n});
        break;
      case BlockKind::kLocal:
        out.locals.push_back(
            LocalRingLocal{whole ? std::optional<std::uint64_t>(0)
                                 : std::nullopt});
        break;
      case BlockKind::kPrufer:
        out.locals.push_back(
            PruferLocal{whole ? std::nullopt : std::optional<std::uint64_t>(0)});
        break;
      default:
        throw InternalError("unexpected block in refinement");
    }
  }
  return out;
}

inline SubgroupProfile whole_profile(std::shared_ptr<const Materialization> m) {
  SubgroupProfile out{m, {}};
  for (const Block& b : m->blocks) {
    out.locals.push_back(ppeval_detail::whole_local(b));
  }
  return out;
}

// Throws InternalError when m is too coarse for phi.
inline SubgroupProfile eval_formula(std::shared_ptr<const Materialization> m,
                                    const PPFormula& phi) {
  for (const auto& [p, t] : m->split) {
    const PPFormula one[] = {phi};
    if (ppeval_detail::required_split(m->desc, p, one) > t) {
      throw InternalError("materialization too coarse for formula");
    }
  }
  if (m->desc.prime_tail && !m->desc.prime_tail->is_zero()) {
    for (std::uint64_t p : phi.primes()) {
      if (!m->desc.mentions(p) && !m->extra_primes.contains(p)) {
        throw InternalError("materialization too coarse for formula");
      }
    }
  }
  SubgroupProfile out = whole_profile(m);
  for (const Atom& a : phi.atoms) {
    for (std::size_t i = 0; i < m->blocks.size(); ++i) {
      out.locals[i] = ppeval_detail::meet_local(
          out.locals[i], ppeval_detail::eval_atom(m->blocks[i], a),
          m->blocks[i]);
    }
  }
  return out;
}

inline SubgroupProfile eval_formula(const SzmielewDescription& d,
                                    const PPFormula& phi) {
  const PPFormula one[] = {phi};
  return eval_formula(materialize(d, one), phi);
}

inline SubgroupProfile meet(const SubgroupProfile& h, const SubgroupProfile& k) {
  auto m = common_refinement(h.mat, k.mat);
  const SubgroupProfile a = refine(h, m);
  const SubgroupProfile b = refine(k, m);
  SubgroupProfile out{m, {}};
  for (std::size_t i = 0; i < m->blocks.size(); ++i) {
    out.locals.push_back(
        ppeval_detail::meet_local(a.locals[i], b.locals[i], m->blocks[i]));
  }
  return out;
}

// [h : h meet k].
inline IndexClass index_class(const SubgroupProfile& h,
                              const SubgroupProfile& k) {
  const SubgroupProfile m = meet(h, k);
  const SubgroupProfile a = refine(h, m.mat);
  IndexClass out;
  for (std::size_t i = 0; i < m.mat->blocks.size(); ++i) {
    out *= ppeval_detail::local_index(a.locals[i], m.locals[i],
                                      m.mat->blocks[i]);
    if (out.is_infinite()) break;
  }
  return out;
}

inline bool contains(const SubgroupProfile& h, const SubgroupProfile& k) {
  return meet(h, k) == refine(k, common_refinement(h.mat, k.mat));
}

struct ProfileStats {
  IndexClass cardinality;           // Finite(|H|) or Infinite
  std::optional<Factored> exponent;  // least m with mH = 0; nullopt unbounded

  friend bool operator==(const ProfileStats&, const ProfileStats&) = default;
};

inline ProfileStats profile_stats(const SubgroupProfile& h) {
  using ppeval_detail::copies;
  ProfileStats out;
  out.exponent = Factored{};
  auto unbounded = [&] {
    out.cardinality = IndexClass::infinite();
    out.exponent.reset();
  };
  auto torsion = [&](std::uint64_t p, std::uint64_t e, const Mult& mult) {
    out.cardinality *= copies(p, e, mult);
    if (out.exponent) {
      out.exponent = Factored::lcm(*out.exponent, Factored::prime_power(p, e));
    }
  };
  for (std::size_t i = 0; i < h.mat->blocks.size(); ++i) {
    const Block& b = h.mat->blocks[i];
    const LocalSubgroup& l = h.locals[i];
    switch (b.kind) {
      case BlockKind::kCyclic:
        torsion(b.p, b.n - std::get<CyclicLocal>(l).depth, b.mult);
        break;
      case BlockKind::kTail: {
        const auto& t = std::get<TailLocal>(l);
        if (!t.b) {
          unbounded();
        } else if (*t.b > 0) {
          torsion(b.p, *t.b, kOmega);
        }
        break;
      }
      case BlockKind::kLocal:
        if (std::get<LocalRingLocal>(l).depth) unbounded();
        break;
      case BlockKind::kPrufer: {
        const auto& bound = std::get<PruferLocal>(l).bound;
        if (!bound) {
          unbounded();
        } else {
          torsion(b.p, *bound, b.mult);
        }
        break;
      }
      default:
        if (std::get<WholeOrZero>(l).whole) unbounded();
        break;
    }
  }
  return out;
}

}  // namespace szk
