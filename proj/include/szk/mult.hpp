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

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "szk/error.hpp"

namespace szk {

// A multiplicity: a natural number or omega (countably infinite).
class Mult {
 public:
  constexpr Mult() = default;
  constexpr Mult(std::uint64_t n) : value_(n) {}  // NOLINT: implicit by design of the DSL

  static constexpr Mult omega() {
    Mult m;
    m.value_ = std::nullopt;
    return m;
  }

  constexpr bool is_omega() const { return !value_.has_value(); }
  constexpr bool is_finite() const { return value_.has_value(); }
  constexpr bool is_zero() const { return value_ && *value_ == 0; }
  // Precondition: is_finite().
  constexpr std::uint64_t value() const { return *value_; }

  friend constexpr Mult operator+(Mult a, Mult b) {
    if (a.is_omega() || b.is_omega()) return omega();
    if (a.value() > std::numeric_limits<std::uint64_t>::max() - b.value()) {
      throw InputError("multiplicity overflow");
    }
    return Mult(a.value() + b.value());
  }

  // a * b with 0 * omega = 0.
  friend constexpr Mult operator*(Mult a, Mult b) {
    if (a.is_zero() || b.is_zero()) return Mult(0);
    if (a.is_omega() || b.is_omega()) return omega();
    if (a.value() > std::numeric_limits<std::uint64_t>::max() / b.value()) {
      throw InputError("multiplicity overflow");
    }
    return Mult(a.value() * b.value());
  }

  friend constexpr bool operator==(const Mult& a, const Mult& b) = default;
  friend constexpr std::strong_ordering operator<=>(const Mult& a,
                                                    const Mult& b) {
    if (a.is_omega() || b.is_omega()) {
      return a.is_omega() <=> b.is_omega();
    }
    return a.value() <=> b.value();
  }

  std::string to_string() const {
    return is_omega() ? std::string("w") : std::to_string(*value_);
  }

 private:
  std::optional<std::uint64_t> value_ = std::uint64_t{0};
};

inline constexpr Mult kOmega = Mult::omega();

}  // namespace szk
