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

// JSON encodings. Omega is "w", an infinite index or dp-rank is "inf", and
// finite indices too large for 64 bits are strings like "2^70*3".

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "szk/dsl.hpp"
#include "szk/index_class.hpp"
#include "szk/mult.hpp"
#include "szk/normalize.hpp"
#include "szk/oracle.hpp"
#include "szk/ppeval.hpp"
#include "szk/rank.hpp"

namespace szk {

using Json = nlohmann::json;

inline Json to_json(const Mult& m) {
  return m.is_omega() ? Json("w") : Json(m.value());
}

inline Json to_json(const IndexClass& c) {
  if (c.is_infinite()) return "inf";
  if (auto v = c.value().to_u64()) return *v;
  return c.value().to_string();
}

inline Json to_json(const std::optional<Factored>& f) {
  if (!f) return "unbounded";
  if (auto v = f->to_u64()) return *v;
  return f->to_string();
}

inline Json to_json(const PrimeSet& s) {
  return {{"primes", s.primes}, {"infinite", s.infinite}};
}

inline Json to_json(const DpValue& d) {
  if (d.finite) return *d.finite;
  return "inf";
}

inline Json to_json(const std::vector<PPFormula>& family) {
  Json out = Json::array();
  for (const auto& f : family) out.push_back(render(f));
  return out;
}

// `p` is the prime for explicit entries and 0 for the unlisted primes, whose
// values are given as exponents of the formal prime P.
inline Json to_json(const PrimeInvariants& inv, std::uint64_t p) {
  auto value = [&](const Mult& e) -> Json {
    if (p == 0) return e.is_omega() ? Json("inf") : Json("P^" + e.to_string());
    return to_json(normalize_detail::power_of(p, e));
  };
  Json u = Json::object();
  for (const auto& [n, e] : inv.U) u[std::to_string(n)] = value(e);
  Json out{{"U", u},
           {"D_lim", value(inv.D_lim)},
           {"Tf_lim", value(inv.Tf_lim)},
           {"quotient_pA_infinite", inv.quotient_pA_infinite},
           {"torsion_p_infinite", inv.torsion_p_infinite}};
  out["U_from"] = inv.u_from
                      ? Json{{"n", inv.u_from->first},
                             {"value", value(inv.u_from->second)}}
                      : Json(nullptr);
  return out;
}

inline Json to_json(const InvariantReport& r) {
  Json primes = Json::object();
  for (const auto& [p, inv] : r.primes) primes[std::to_string(p)] = to_json(inv, p);
  return {{"primes", primes},
          {"other_primes", to_json(r.other_primes, 0)},
          {"bounded_exponent", r.bounded_exponent},
          {"finite_group", r.finite_group}};
}

inline Json to_json(const DerivedSets& d) {
  Json at = Json::object();
  for (const auto& [p, s] : d.U_inf_at) at[std::to_string(p)] = s;
  return {{"Tf_inf", to_json(d.Tf_inf)},
          {"D_inf", to_json(d.D_inf)},
          {"U_inf", to_json(d.U_inf)},
          {"U_inf_at", at},
          {"U_inf_at_infinite", d.U_inf_at_infinite},
          {"U_inf_at_other", d.U_inf_at_other}};
}

inline Json to_json(const RankReport& r) {
  Json out{{"dp", to_json(r.dp)},
           {"strong", r.dp.is_finite() || r.dp.strong},
           {"case", r.case_tag},
           {"derived", to_json(r.derived)},
           {"epsilons",
            {{"U", r.epsilons.U ? 1 : 0},
             {"Exp", r.epsilons.Exp ? 1 : 0},
             {"Tf", r.epsilons.Tf ? 1 : 0},
             {"D", r.epsilons.D ? 1 : 0}}},
           {"partition",
            {{"P1", to_json(r.partition.P1)},
             {"P2", to_json(r.partition.P2)},
             {"P3", to_json(r.partition.P3)}}}};
  out["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  return out;
}

inline Json to_json(const Classification& c) {
  return {{"strong", c.strong},
          {"finite_dp", c.finite_dp},
          {"dp_minimal", c.dp_minimal}};
}

inline Json to_json(const VcReport& v) {
  Json values = Json::array();
  for (const auto& [m, d] : v.values) values.push_back({{"m", m}, {"vc", to_json(d)}});
  return {{"values", values}};
}

inline Json to_json(const WitnessFamily& w) {
  return {{"source", w.source},
          {"formulas", to_json(w.formulas)},
          {"certifies", w.certifies}};
}

inline Json to_json(const InpVerdict& v) {
  Json t = Json::array();
  for (const auto& c : v.transcript) t.push_back(to_json(c));
  return {{"valid", v.valid}, {"transcript", t}};
}

inline Json to_json(const BreadthResult& b) {
  return {{"depth", b.depth},
          {"witness", to_json(b.witness)},
          {"pool_bound", b.pool_bound},
          {"exhausted", b.exhausted},
          {"pool_size", b.pool_size},
          {"search_size", b.search_size}};
}

inline std::string block_name(const Block& b) {
  const std::string p = std::to_string(b.p);
  switch (b.kind) {
    case BlockKind::kCyclic:
      return "Z(" + p + "^" + std::to_string(b.n) + ")";
    case BlockKind::kTail:
      return "tail(" + p + ", n>" + std::to_string(b.n) + ")";
    case BlockKind::kLocal:
      return "Z_(" + p + ")";
    case BlockKind::kPrufer:
      return "Z(" + p + "^inf)";
    case BlockKind::kRational:
      return "Q";
    case BlockKind::kResidual:
      return "forall_p";
  }
  return "?";
}

inline Json to_json(const LocalSubgroup& l) {
  auto opt = [](const std::optional<std::uint64_t>& v) -> Json {
    return v ? Json(*v) : Json("inf");
  };
  return std::visit(
      [&](const auto& u) -> Json {
        using T = std::decay_t<decltype(u)>;
        if constexpr (std::is_same_v<T, CyclicLocal>) {
          return {{"depth", u.depth}};
        } else if constexpr (std::is_same_v<T, TailLocal>) {
          return {{"a", u.a}, {"b", opt(u.b)}};
        } else if constexpr (std::is_same_v<T, LocalRingLocal>) {
          return u.depth ? Json{{"depth", *u.depth}} : Json("zero");
        } else if constexpr (std::is_same_v<T, PruferLocal>) {
          return {{"bound", opt(u.bound)}};
        } else {
          return u.whole ? "whole" : "zero";
        }
      },
      l);
}

inline Json to_json(const SubgroupProfile& h) {
  Json blocks = Json::array();
  for (std::size_t i = 0; i < h.mat->blocks.size(); ++i) {
    const Block& b = h.mat->blocks[i];
    blocks.push_back({{"block", block_name(b)},
                      {"mult", to_json(b.mult)},
                      {"local", to_json(h.locals[i])}});
  }
  return {{"blocks", blocks}};
}

inline Json to_json(const ProfileStats& s) {
  return {{"cardinality", to_json(s.cardinality)},
          {"exponent", to_json(s.exponent)}};
}

}  // namespace szk
