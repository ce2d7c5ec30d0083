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

#include <bit>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "szk/error.hpp"
#include "szk/formula.hpp"
#include "szk/primes.hpp"

namespace szk {

inline constexpr std::uint64_t kDefaultCarrierCap = 1'000'000;
inline constexpr std::uint64_t kDefaultShatterCap = 6;
inline constexpr std::uint64_t kDefaultSubsetCap = 50'000'000;

// Fixed-size set of carrier elements.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t size)
      : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t universe() const { return size_; }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }

  std::size_t count() const {
    std::size_t c = 0;
    for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  friend ElementSet operator&(ElementSet a, const ElementSet& b) {
    for (std::size_t i = 0; i < a.words_.size(); ++i) a.words_[i] &= b.words_[i];
    return a;
  }

  friend bool operator==(const ElementSet&, const ElementSet&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

// The group Z(m_1) + ... + Z(m_k); elements are residue tuples numbered in
// mixed radix with the first coordinate varying fastest.
class FinAbGroup {
 public:
  explicit FinAbGroup(std::vector<std::uint64_t> orders,
                      std::uint64_t cap = kDefaultCarrierCap)
      : orders_(std::move(orders)) {
    for (std::uint64_t m : orders_) {
      if (m < 2) throw InputError("cyclic orders must be >= 2");
      if (size_ > cap / m) {
        throw CapExceeded("group order exceeds cap of " + std::to_string(cap));
      }
      size_ *= m;
    }
  }

  const std::vector<std::uint64_t>& orders() const { return orders_; }
  std::size_t size() const { return size_; }

  std::vector<std::uint64_t> element(std::size_t index) const {
    std::vector<std::uint64_t> x(orders_.size());
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      x[i] = index % orders_[i];
      index /= orders_[i];
    }
    return x;
  }

  std::size_t index_of(const std::vector<std::uint64_t>& x) const {
    std::size_t index = 0;
    for (std::size_t i = orders_.size(); i-- > 0;) {
      index = index * orders_[i] + x[i] % orders_[i];
    }
    return index;
  }

  // Index of k * x.
  std::size_t scale(std::size_t index, std::uint64_t k) const {
    std::vector<std::uint64_t> x = element(index);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = static_cast<std::uint64_t>(
          (static_cast<unsigned __int128>(k % orders_[i]) * x[i]) % orders_[i]);
    }
    return index_of(x);
  }

  std::size_t add(std::size_t a, std::size_t b) const {
    std::vector<std::uint64_t> x = element(a);
    const std::vector<std::uint64_t> y = element(b);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = (x[i] + y[i]) % orders_[i];
    return index_of(x);
  }

 private:
  std::vector<std::uint64_t> orders_;
  std::size_t size_ = 1;
};

// The subgroup defined by phi, by testing every element.
inline ElementSet subgroup(const FinAbGroup& g, const PPFormula& phi) {
  ElementSet out(g.size());
  for (std::size_t x = 0; x < g.size(); ++x) out.set(x);
  for (const Atom& a : phi.atoms) {
    ElementSet keep(g.size());
    if (const auto* t = std::get_if<Tor>(&a)) {
      for (std::size_t x = 0; x < g.size(); ++x) {
        if (g.scale(x, t->m) == 0) keep.set(x);
      }
    } else {
      const auto& d = std::get<Div>(a);
      ElementSet image(g.size());  // p^r G
      const std::uint64_t pr = checked_pow(d.p, d.r);
      for (std::size_t y = 0; y < g.size(); ++y) image.set(g.scale(y, pr));
      const std::uint64_t ps = checked_pow(d.p, d.s);
      for (std::size_t x = 0; x < g.size(); ++x) {
        if (image.test(g.scale(x, ps))) keep.set(x);
      }
    }
    out = out & keep;
  }
  return out;
}

struct SetFamily {
  std::size_t carrier = 0;
  std::vector<ElementSet> members;
};

// Every coset a + H for H defined by each formula, without repeats per H.
inline SetFamily coset_family(const FinAbGroup& g,
                              const std::vector<PPFormula>& subgroups) {
  SetFamily out{g.size(), {}};
  for (const auto& phi : subgroups) {
    const ElementSet h = subgroup(g, phi);
    std::vector<std::size_t> hs;
    for (std::size_t x = 0; x < g.size(); ++x) {
      if (h.test(x)) hs.push_back(x);
    }
    ElementSet covered(g.size());
    for (std::size_t a = 0; a < g.size(); ++a) {
      if (covered.test(a)) continue;
      ElementSet coset(g.size());
      for (std::size_t x : hs) {
        const std::size_t y = g.add(a, x);
        coset.set(y);
        covered.set(y);
      }
      out.members.push_back(std::move(coset));
    }
  }
  return out;
}

// max over n-element subsets A of the carrier of |{C & A : C in s}|.
inline std::uint64_t shatter_function(const SetFamily& s, std::uint64_t n,
                                      std::uint64_t max_n = kDefaultShatterCap,
                                      std::uint64_t max_subsets = kDefaultSubsetCap) {
  if (n > max_n) {
    throw CapExceeded("shatter size exceeds cap of " + std::to_string(max_n));
  }
  const std::size_t N = s.carrier;
  if (n > N) return 0;
  // Number of subsets, saturating at the cap.
  std::uint64_t subsets = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    subsets = subsets * (N - i) / (i + 1);
    if (subsets > max_subsets) {
      throw CapExceeded("more than " + std::to_string(max_subsets) +
                        " subsets to enumerate");
    }
  }
  const std::uint64_t full = std::uint64_t{1} << n;
  std::uint64_t best = 0;
  std::vector<std::size_t> pick(n);
  for (std::size_t i = 0; i < n; ++i) pick[i] = i;
  std::vector<bool> seen(full);
  while (true) {
    std::fill(seen.begin(), seen.end(), false);
    std::uint64_t distinct = 0;
    for (const ElementSet& c : s.members) {
      std::uint64_t trace = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (c.test(pick[i])) trace |= std::uint64_t{1} << i;
      }
      if (!seen[trace]) {
        seen[trace] = true;
        ++distinct;
      }
    }
    best = std::max(best, distinct);
    if (best == full) return best;
    // Next n-subset in lexicographic order.
    std::size_t i = n;
    while (i > 0 && pick[i - 1] == N - n + i - 1) --i;
    if (i == 0) return best;
    ++pick[i - 1];
    for (std::size_t j = i; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
}

// Largest n with shatter_function(s, n) = 2^n.
inline std::uint64_t vc_dim(const SetFamily& s,
                            std::uint64_t max_n = kDefaultShatterCap) {
  if (s.members.empty()) return 0;
  std::uint64_t d = 0;
  for (std::uint64_t n = 1; n <= s.carrier; ++n) {
    if (n > max_n) {
      throw CapExceeded("vc dimension not settled below cap of " +
                        std::to_string(max_n));
    }
    if (shatter_function(s, n, max_n) != (std::uint64_t{1} << n)) break;
    d = n;
  }
  return d;
}

}  // namespace szk
