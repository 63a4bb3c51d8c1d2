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

// Tokenizer for the .qaut format. '#' starts a line comment. A number
// immediately followed by 'i' lexes as one imaginary literal. Keywords are
// contextual; the lexer only knows identifiers.

#pragma once

#include <cctype>
#include <cstdlib>
#include <string>
#include <vector>

#include "qaut/dsl/source.hpp"

namespace qaut::dsl {

enum class TokenType {
  Ident,
  Number,
  Imag,  // e.g. 2i, 0.5i
  String,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  LParen,
  RParen,
  Comma,
  Colon,
  Equals,
  Arrow,
  Plus,
  Minus,
  EndOfFile,
};

struct Token {
  TokenType type = TokenType::EndOfFile;
  std::string text;    // lexeme; string content for String tokens
  double value = 0.0;  // for Number and Imag
  Position pos;
  std::size_t offset = 0;  // byte offset into the source
  std::size_t length = 0;
};

struct LexResult {
  std::vector<Token> tokens;  // terminated by an EndOfFile token
  std::vector<Diagnostic> diagnostics;
};

inline LexResult lex(const SourceDoc& doc) {
  LexResult result;
  const std::string& s = doc.text;
  std::size_t i = 0;
  Position pos;

  const auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (s[i] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else {
        ++pos.column;
      }
      ++i;
    }
  };
  const auto push = [&](TokenType type, std::size_t start, Position start_pos,
                        std::string text, double value = 0.0) {
    result.tokens.push_back({type, std::move(text), value, start_pos, start, i - start});
  };

  while (i < s.size()) {
    const char c = s[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }

    const std::size_t start = i;
    const Position start_pos = pos;

    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) ||
                              s[i] == '_')) {
        advance(1);
      }
      push(TokenType::Ident, start, start_pos, s.substr(start, i - start));
      continue;
    }

    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) advance(1);
      if (i + 1 < s.size() && s[i] == '.' &&
          std::isdigit(static_cast<unsigned char>(s[i + 1]))) {
        advance(1);
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) advance(1);
      }
      if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
        if (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
          advance(j - i);
          while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            advance(1);
          }
        }
      }
      const std::string digits = s.substr(start, i - start);
      const double value = std::strtod(digits.c_str(), nullptr);
      // an immediately following bare 'i' makes it an imaginary literal
      if (i < s.size() && s[i] == 'i' &&
          (i + 1 >= s.size() || (!std::isalnum(static_cast<unsigned char>(s[i + 1])) &&
                                 s[i + 1] != '_'))) {
        advance(1);
        push(TokenType::Imag, start, start_pos, s.substr(start, i - start), value);
      } else {
        push(TokenType::Number, start, start_pos, digits, value);
      }
      continue;
    }

    if (c == '"') {
      advance(1);
      const std::size_t content_start = i;
      while (i < s.size() && s[i] != '"' && s[i] != '\n') advance(1);
      if (i >= s.size() || s[i] != '"') {
        result.diagnostics.push_back({start_pos, "unterminated string literal", "\""});
        continue;
      }
      const std::string content = s.substr(content_start, i - content_start);
      advance(1);
      push(TokenType::String, start, start_pos, content);
      continue;
    }

    if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      advance(2);
      push(TokenType::Arrow, start, start_pos, "->");
      continue;
    }

    TokenType type;
    switch (c) {
      case '{': type = TokenType::LBrace; break;
      case '}': type = TokenType::RBrace; break;
      case '[': type = TokenType::LBracket; break;
      case ']': type = TokenType::RBracket; break;
      case '(': type = TokenType::LParen; break;
      case ')': type = TokenType::RParen; break;
      case ',': type = TokenType::Comma; break;
      case ':': type = TokenType::Colon; break;
      case '=': type = TokenType::Equals; break;
      case '+': type = TokenType::Plus; break;
      case '-': type = TokenType::Minus; break;
      default: {
        result.diagnostics.push_back(
            {start_pos, std::string("unexpected character '") + c + "'",
             std::string(1, c)});
        advance(1);
        continue;
      }
    }
    advance(1);
    push(type, start, start_pos, std::string(1, c));
  }

  result.tokens.push_back({TokenType::EndOfFile, "", 0.0, pos, i, 0});
  return result;
}

}  // namespace qaut::dsl
