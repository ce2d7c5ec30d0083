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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace szk {

// Malformed input: bad DSL text, invalid descriptions, out-of-range flags.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Byte offsets [start, end) into a source text.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& message, SourceSpan span)
      : InputError(message + " at " + std::to_string(span.start) + ".." +
                   std::to_string(span.end)),
        message_(message),
        span_(span) {}

  const std::string& message() const { return message_; }
  SourceSpan span() const { return span_; }

 private:
  std::string message_;
  SourceSpan span_;
};

// A configured size cap was hit (pool size, carrier size, subset count).
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal consistency check failed. Indicates a bug, never bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace szk
