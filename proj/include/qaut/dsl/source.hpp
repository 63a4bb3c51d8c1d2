// Copyright 2026 The qaut Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

namespace qaut::dsl {

struct SourceDoc {
  std::string text;
  std::string name = "<memory>";
};

/// 1-based line and column.
struct Position {
  std::size_t line = 1;
  std::size_t column = 1;

  friend bool operator==(const Position&, const Position&) = default;
};

struct Diagnostic {
  Position pos;
  std::string message;
  std::string lexeme;  // the offending text, possibly empty
};

inline std::string format_diagnostic(const SourceDoc& doc, const Diagnostic& d) {
  std::string out = doc.name + ":" + std::to_string(d.pos.line) + ":" +
                    std::to_string(d.pos.column) + ": " + d.message;
  if (!d.lexeme.empty()) {
    out += " (near '" + d.lexeme + "')";
  }
  return out;
}

}  // namespace qaut::dsl
