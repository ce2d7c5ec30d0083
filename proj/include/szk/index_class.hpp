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
#include <string>
#include <utility>

#include "szk/error.hpp"
#include "szk/primes.hpp"

namespace szk {

// A natural number >= 1 kept as a prime-power factorization, so values such
// as 2^(10^12) stay exact.
class Factored {
 public:
  Factored() = default;

  static Factored prime_power(std::uint64_t p, std::uint64_t e) {
    Factored f;
    if (e != 0) f.exponents_[p] = e;
    return f;
  }

  static Factored of(std::uint64_t n) {
    if (n == 0) throw InputError("Factored values are >= 1");
    Factored f;
    f.exponents_ = factorize(n);
    return f;
  }

  bool is_one() const { return exponents_.empty(); }
  const std::map<std::uint64_t, std::uint64_t>& exponents() const {
    return exponents_;
  }
  std::uint64_t exponent_of(std::uint64_t p) const {
    auto it = exponents_.find(p);
    return it == exponents_.end() ? 0 : it->second;
  }

  // The value as a machine integer when it fits.
  std::optional<std::uint64_t> to_u64() const {
    std::uint64_t r = 1;
    for (auto [p, e] : exponents_) {
      for (std::uint64_t i = 0; i < e; ++i) {
        if (r > UINT64_MAX / p) return std::nullopt;
        r *= p;
      }
    }
    return r;
  }

  friend Factored operator*(Factored a, const Factored& b) {
    for (auto [p, e] : b.exponents_) {
      auto& slot = a.exponents_[p];
      if (slot > UINT64_MAX - e) throw InputError("exponent overflow");
      slot += e;
    }
    return a;
  }

  // Least common multiple: pointwise maximum of exponents.
  static Factored lcm(Factored a, const Factored& b) {
    for (auto [p, e] : b.exponents_) {
      auto& slot = a.exponents_[p];
      if (e > slot) slot = e;
    }
    return a;
  }

  friend bool operator==(const Factored&, const Factored&) = default;

  // Decimal when it fits in 64 bits, otherwise "p^e*q^f".
  std::string to_string() const {
    if (auto v = to_u64()) return std::to_string(*v);
    std::string s;
    for (auto [p, e] : exponents_) {
      if (!s.empty()) s += "*";
      s += std::to_string(p);
      if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
  }

 private:
  std::map<std::uint64_t, std::uint64_t> exponents_;
};

// The index of one subgroup in another: an exact finite value or infinite.
class IndexClass {
 public:
  IndexClass() = default;  // Finite(1)
  explicit IndexClass(Factored value) : value_(std::move(value)) {}

  static IndexClass finite(std::uint64_t n) {
    return IndexClass(Factored::of(n));
  }
  static IndexClass prime_power(std::uint64_t p, std::uint64_t e) {
    return IndexClass(Factored::prime_power(p, e));
  }
  static IndexClass infinite() {
    IndexClass c;
    c.value_.reset();
    return c;
  }

  bool is_infinite() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }
  bool is_one() const { return value_ && value_->is_one(); }
  // Precondition: is_finite().
  const Factored& value() const { return *value_; }

  friend IndexClass operator*(const IndexClass& a, const IndexClass& b) {
    if (a.is_infinite() || b.is_infinite()) return infinite();
    return IndexClass(a.value() * b.value());
  }
  IndexClass& operator*=(const IndexClass& b) { return *this = *this * b; }

  friend bool operator==(const IndexClass&, const IndexClass&) = default;

  std::string to_string() const {
    return is_infinite() ? std::string("inf") : value_->to_string();
  }

 private:
  std::optional<Factored> value_ = Factored{};
};

}  // namespace szk
