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
#include <set>

#include "szk/error.hpp"

namespace szk {

constexpr bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

// Exponent of p in m (m >= 1).
constexpr std::uint64_t valuation(std::uint64_t m, std::uint64_t p) {
  std::uint64_t v = 0;
  while (m != 0 && m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

inline std::map<std::uint64_t, std::uint64_t> factorize(std::uint64_t m) {
  std::map<std::uint64_t, std::uint64_t> out;
  for (std::uint64_t d = 2; d <= m / d; ++d) {
    while (m % d == 0) {
      ++out[d];
      m /= d;
    }
  }
  if (m > 1) ++out[m];
  return out;
}

// Smallest prime not contained in `taken`.
inline std::uint64_t first_prime_not_in(const std::set<std::uint64_t>& taken) {
  for (std::uint64_t p = 2;; ++p) {
    if (is_prime(p) && !taken.contains(p)) return p;
  }
}

// p^e, throwing on overflow.
inline std::uint64_t checked_pow(std::uint64_t p, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (r > UINT64_MAX / p) throw InputError("integer overflow in power");
    r *= p;
  }
  return r;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (b != 0 && a > UINT64_MAX / b) throw InputError("integer overflow in product");
  return a * b;
}

}  // namespace szk
