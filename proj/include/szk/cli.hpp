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

// The szk command-line front end. Exit codes: 0 success, 1 input error,
// 2 internal consistency failure.

#include <cstdint>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "szk/corpus.hpp"
#include "szk/dsl.hpp"
#include "szk/error.hpp"
#include "szk/json.hpp"
#include "szk/normalize.hpp"
#include "szk/oracle.hpp"
#include "szk/ppeval.hpp"
#include "szk/rank.hpp"
#include "szk/shatter.hpp"

namespace szk {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitInternal = 2;

namespace cli_detail {

// Aligned two-column table.
class Table {
 public:
  void row(std::string key, std::string value) {
    width_ = std::max(width_, key.size());
    rows_.emplace_back(std::move(key), std::move(value));
  }
  void print(std::ostream& out) const {
    for (const auto& [k, v] : rows_) {
      out << std::left << std::setw(static_cast<int>(width_ + 2)) << k << v
          << "\n";
    }
  }

 private:
  std::size_t width_ = 0;
  std::vector<std::pair<std::string, std::string>> rows_;
};

inline std::string join(const std::set<std::uint64_t>& s) {
  std::string out = "{";
  for (std::uint64_t x : s) {
    if (out.size() > 1) out += ",";
    out += std::to_string(x);
  }
  return out + "}";
}

inline std::string show(const PrimeSet& s) {
  std::string out = join(s.primes);
  return s.infinite ? out + " + infinitely many" : out;
}

inline std::string show(const std::vector<PPFormula>& family) {
  std::string out;
  for (const auto& f : family) {
    if (!out.empty()) out += "; ";
    out += render(f);
  }
  return "[" + out + "]";
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

// Parses `text`, reporting errors with a caret line under the span.
template <typename T, typename F>
T parse_or_report(const std::string& text, F parse, std::ostream& err) {
  try {
    return parse(text);
  } catch (const ParseError& e) {
    err << "error: " << e.message() << "\n  " << text << "\n  "
        << std::string(e.span().start, ' ')
        << std::string(std::max<std::size_t>(1, e.span().end - e.span().start), '^')
        << "\n";
    throw;
  }
}

struct Options {
  bool json = false;
  unsigned jobs = 1;
  std::vector<std::string> groups;
  std::vector<std::string> formulas;
  std::vector<std::string> positional;  // group then formulas
  std::uint64_t pool_bound = 0;  // 0: use the default B0
  std::uint64_t max_depth = 8;
  std::vector<std::uint64_t> vc;
  std::vector<std::uint64_t> orders;
  std::uint64_t n = 4;
  std::uint64_t count = 200;
  std::uint64_t seed = 1;
  bool profile = false;
};

}  // namespace cli_detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  using namespace cli_detail;
  Options o;
  CLI::App app{"Symbolic toolkit for abelian groups given by Szmielew data",
               "szk"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "Print JSON instead of a table");
  app.add_option("--jobs", o.jobs, "Worker threads for the oracle search")
      ->check(CLI::Range(1u, 256u));

  auto group_arg = [&](CLI::App* sub, std::size_t count) {
    sub->add_option("group", o.groups, "Group description")
        ->required()
        ->expected(static_cast<int>(count));
  };
  CLI::App* normalize_cmd = app.add_subcommand("normalize", "Strict normal form");
  group_arg(normalize_cmd, 1);
  CLI::App* equiv_cmd = app.add_subcommand("equiv", "Elementary equivalence");
  group_arg(equiv_cmd, 2);
  CLI::App* inv_cmd = app.add_subcommand("invariants", "Szmielew invariants");
  group_arg(inv_cmd, 1);
  CLI::App* rank_cmd = app.add_subcommand("rank", "Closed-form dp-rank");
  group_arg(rank_cmd, 1);
  rank_cmd->add_option("--vc", o.vc, "Also report vc-density at these m")
      ->check(CLI::PositiveNumber);
  CLI::App* classify_cmd = app.add_subcommand("classify", "Strongness and dp class");
  group_arg(classify_cmd, 1);
  CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate a p.p. formula");
  eval_cmd->add_option("args", o.positional, "Group, then formula")
      ->required()
      ->expected(2);
  eval_cmd->add_flag("--profile", o.profile, "Include the block profile");
  CLI::App* index_cmd = app.add_subcommand("index", "[phi : phi & psi]");
  index_cmd->add_option("args", o.positional, "Group, then two formulas")
      ->required()
      ->expected(3);
  CLI::App* witness_cmd = app.add_subcommand("witness", "Seed witness families");
  group_arg(witness_cmd, 1);
  CLI::App* breadth_cmd = app.add_subcommand("breadth", "Brute-force breadth search");
  group_arg(breadth_cmd, 1);
  breadth_cmd->add_option("--pool-bound", o.pool_bound, "Pool bound B (default: B0)")
      ->check(CLI::PositiveNumber);
  breadth_cmd->add_option("--max-depth", o.max_depth, "Largest depth searched")
      ->check(CLI::PositiveNumber);
  CLI::App* shatter_cmd = app.add_subcommand("shatter", "Shatter function of coset families");
  shatter_cmd->add_option("--orders", o.orders, "Cyclic orders of the group")
      ->required()
      ->delimiter(',');
  shatter_cmd->add_option("--formulas", o.formulas, "Subgroup formulas")->required();
  shatter_cmd->add_option("--n", o.n, "Largest subset size");
  CLI::App* fuzz_cmd = app.add_subcommand("fuzz", "Closed form vs oracle on random groups");
  fuzz_cmd->add_option("--count", o.count, "Number of descriptions")
      ->check(CLI::PositiveNumber);
  fuzz_cmd->add_option("--seed", o.seed, "Generator seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  if (!o.positional.empty()) {
    o.groups.assign(o.positional.begin(), o.positional.begin() + 1);
    o.formulas.assign(o.positional.begin() + 1, o.positional.end());
  }

  auto group = [&](std::size_t i) {
    return parse_or_report<SzmielewDescription>(
        o.groups.at(i), [](const std::string& s) { return parse_group(s); }, err);
  };
  auto formula = [&](std::size_t i) {
    return parse_or_report<PPFormula>(
        o.formulas.at(i), [](const std::string& s) { return parse_formula(s); },
        err);
  };
  auto emit = [&](const Json& j, const Table& t) {
    if (o.json) {
      out << j.dump(2) << "\n";
    } else {
      t.print(out);
    }
  };

  try {
    if (normalize_cmd->parsed()) {
      const SzmielewDescription n = normalize(group(0));
      Table t;
      t.row("normal form", render(n));
      emit({{"normal_form", render(n)}}, t);
    } else if (equiv_cmd->parsed()) {
      const auto a = normalize(group(0));
      const auto b = normalize(group(1));
      const bool eq = a == b;
      if (o.json) {
        out << Json{{"equivalent", eq}, {"normal_forms", {render(a), render(b)}}}.dump(2)
            << "\n";
      } else {
        out << (eq ? "equivalent" : "not equivalent") << "\n";
      }
    } else if (inv_cmd->parsed()) {
      const SzmielewDescription d = group(0);
      const InvariantReport r = invariants(d);
      const DerivedSets ds = derived_sets(d);
      Table t;
      for (const auto& [p, inv] : r.primes) {
        const std::string ps = std::to_string(p);
        std::string u;
        for (const auto& [n, e] : inv.U) {
          u += " U(" + std::to_string(n) + ")=" +
               r.U(p, n).to_string();
        }
        if (inv.u_from) {
          u += " U(n>=" + std::to_string(inv.u_from->first) + ")=" +
               r.U(p, inv.u_from->first).to_string();
        }
        t.row("p=" + ps + " Ulm", u.empty() ? "all 1" : u.substr(1));
        t.row("p=" + ps + " D_lim", r.D_lim(p).to_string());
        t.row("p=" + ps + " Tf_lim", r.Tf_lim(p).to_string());
        t.row("p=" + ps + " A/pA infinite", yes_no(inv.quotient_pA_infinite));
        t.row("p=" + ps + " A[p] infinite", yes_no(inv.torsion_p_infinite));
      }
      if (d.prime_tail && !d.prime_tail->is_zero()) {
        const PrimeInvariants& other = r.other_primes;
        std::string u;
        for (const auto& [n, e] : other.U) {
          u += " U(" + std::to_string(n) + ")=P^" + e.to_string();
        }
        t.row("other primes Ulm", u.empty() ? "all 1" : u.substr(1));
        t.row("other primes D_lim", "P^" + other.D_lim.to_string());
        t.row("other primes Tf_lim", "P^" + other.Tf_lim.to_string());
      }
      t.row("bounded exponent", yes_no(r.bounded_exponent));
      t.row("finite group", yes_no(r.finite_group));
      t.row("Tf_inf", show(ds.Tf_inf));
      t.row("D_inf", show(ds.D_inf));
      t.row("U_inf", show(ds.U_inf));
      Json j = to_json(r);
      j["derived"] = to_json(ds);
      emit(j, t);
    } else if (rank_cmd->parsed()) {
      const SzmielewDescription d = group(0);
      const RankReport r = dp_rank(d);
      Table t;
      t.row("dp", r.dp.to_string());
      t.row("case", r.case_tag);
      t.row("Tf_inf", show(r.derived.Tf_inf));
      t.row("D_inf", show(r.derived.D_inf));
      t.row("U_inf", show(r.derived.U_inf));
      t.row("epsilons (U,Exp,Tf,D)",
            std::to_string(r.epsilons.U) + "," + std::to_string(r.epsilons.Exp) +
                "," + std::to_string(r.epsilons.Tf) + "," +
                std::to_string(r.epsilons.D));
      t.row("P1", show(r.partition.P1));
      t.row("P2", show(r.partition.P2));
      t.row("P3", show(r.partition.P3));
      t.row("witness", r.witness ? show(*r.witness) : "none");
      Json j = to_json(r);
      if (!o.vc.empty()) {
        const VcReport v = vc_report(d, o.vc);
        for (const auto& [m, value] : v.values) {
          t.row("vc(" + std::to_string(m) + ")", value.to_string());
        }
        j["vc"] = to_json(v);
      }
      emit(j, t);
    } else if (classify_cmd->parsed()) {
      const Classification c = classify(group(0));
      Table t;
      t.row("strong", yes_no(c.strong));
      t.row("finite dp", yes_no(c.finite_dp));
      t.row("dp-minimal", yes_no(c.dp_minimal));
      emit(to_json(c), t);
    } else if (eval_cmd->parsed()) {
      const SubgroupProfile h = eval_formula(group(0), formula(0));
      const ProfileStats s = profile_stats(h);
      Table t;
      t.row("cardinality", s.cardinality.to_string());
      t.row("exponent", s.exponent ? s.exponent->to_string() : "unbounded");
      Json j = to_json(s);
      if (o.profile) {
        j["profile"] = to_json(h);
        for (const auto& b : j["profile"]["blocks"]) {
          t.row(b["block"].get<std::string>() + "^" + b["mult"].dump(),
                b["local"].dump());
        }
      }
      emit(j, t);
    } else if (index_cmd->parsed()) {
      const SzmielewDescription d = group(0);
      const std::vector<PPFormula> fs{formula(0), formula(1)};
      const auto mat = materialize(d, fs);
      const IndexClass c = index_class(eval_formula(mat, fs[0]), eval_formula(mat, fs[1]));
      Table t;
      t.row("index", c.to_string());
      emit({{"index", to_json(c)}}, t);
    } else if (witness_cmd->parsed()) {
      const SzmielewDescription d = group(0);
      Json families = Json::array();
      Table t;
      for (const auto& w : seed_witnesses(d)) {
        const InpVerdict v = verify_inp(d, w.formulas);
        Json j = to_json(w);
        j["verdict"] = to_json(v);
        families.push_back(j);
        t.row(w.source, show(w.formulas) + " certifies " +
                            std::to_string(w.certifies) +
                            (v.valid ? " (valid)" : " (INVALID)"));
      }
      emit({{"families", families}}, t);
    } else if (breadth_cmd->parsed()) {
      const SzmielewDescription d = group(0);
      const std::uint64_t B = o.pool_bound ? o.pool_bound : default_pool_bound(d);
      const BreadthResult b = breadth_search(d, B, o.max_depth, {o.jobs});
      Table t;
      t.row("depth", std::to_string(b.depth));
      t.row("witness", show(b.witness));
      t.row("pool bound", std::to_string(b.pool_bound));
      t.row("pool size", std::to_string(b.pool_size));
      t.row("classes searched", std::to_string(b.search_size));
      t.row("exhausted", yes_no(b.exhausted));
      emit(to_json(b), t);
    } else if (shatter_cmd->parsed()) {
      const FinAbGroup g(o.orders);
      std::vector<PPFormula> fs;
      for (std::size_t i = 0; i < o.formulas.size(); ++i) fs.push_back(formula(i));
      const SetFamily s = coset_family(g, fs);
      Json rows = Json::array();
      std::ostringstream csv;
      csv << "n,pi,2^n\n";
      for (std::uint64_t n = 0; n <= o.n; ++n) {
        const std::uint64_t pi = shatter_function(s, n);
        rows.push_back({{"n", n}, {"pi", pi}, {"two_n", std::uint64_t{1} << n}});
        csv << n << "," << pi << "," << (std::uint64_t{1} << n) << "\n";
      }
      if (o.json) {
        out << Json{{"family_size", s.members.size()}, {"rows", rows}}.dump(2) << "\n";
      } else {
        out << csv.str();
      }
    } else if (fuzz_cmd->parsed()) {
      CorpusGenerator gen(o.seed);
      std::uint64_t disagreements = 0;
      Json failures = Json::array();
      for (std::uint64_t i = 0; i < o.count; ++i) {
        const SzmielewDescription d = gen.finite_dp();
        const RankReport r = dp_rank(d);
        const BreadthResult b =
            breadth_search(d, default_pool_bound(d), *r.dp.finite + 1, {o.jobs});
        if (b.depth != *r.dp.finite || !b.exhausted) {
          ++disagreements;
          failures.push_back({{"group", render(d)},
                              {"closed_form", *r.dp.finite},
                              {"oracle", b.depth}});
          err << "disagreement: " << render(d) << " closed form " << r.dp.to_string()
              << ", oracle " << b.depth << "\n";
        }
      }
      Table t;
      t.row("checked", std::to_string(o.count));
      t.row("disagreements", std::to_string(disagreements));
      emit({{"checked", o.count}, {"disagreements", disagreements}, {"failures", failures}},
           t);
      if (disagreements != 0) return kExitInternal;
    }
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const ParseError&) {
    return kExitInput;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}

}  // namespace szk
