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

// Recursive-descent parser for the .qaut format. On an error inside a
// declaration the parser records a positioned diagnostic and skips ahead to
// the next declaration keyword, so one pass reports multiple errors.

#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qaut/dsl/ast.hpp"
#include "qaut/dsl/lexer.hpp"
#include "qaut/dsl/source.hpp"

namespace qaut::dsl {

struct ParseResult {
  std::optional<SpecAst> ast;  // set iff diagnostics is empty
  std::vector<Diagnostic> diagnostics;
};

struct ExprParseResult {
  std::optional<MatrixExpr> expr;
  std::vector<Diagnostic> diagnostics;
};

/// Initial-state syntax for the command line: either a density-matrix
/// expression or pure(vector-expression).
struct InitialExpr {
  bool pure = false;
  MatrixExpr expr;
};

struct InitialParseResult {
  std::optional<InitialExpr> initial;
  std::vector<Diagnostic> diagnostics;
};

namespace detail {

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::vector<Diagnostic> lex_diags)
      : tokens_(std::move(tokens)), diags_(std::move(lex_diags)) {}

  ParseResult parse_model() {
    ParseResult result;
    SpecAst ast;
    try {
      const Token& head = expect(TokenType::Ident, "'automaton' or 'machine'");
      if (head.text == "automaton") {
        ast.kind = SpecAst::Kind::Automaton;
      } else if (head.text == "machine") {
        ast.kind = SpecAst::Kind::Machine;
      } else {
        fail(head, "expected 'automaton' or 'machine'");
      }
      ast.pos = head.pos;
      ast.name = expect(TokenType::Ident, "model name").text;
      expect(TokenType::LBrace, "'{'");
    } catch (const Bail&) {
      result.diagnostics = std::move(diags_);
      return result;
    }

    while (!at(TokenType::RBrace) && !at(TokenType::EndOfFile)) {
      try {
        parse_decl(ast);
      } catch (const Bail&) {
        recover();
      }
    }
    try {
      expect(TokenType::RBrace, "'}'");
      expect(TokenType::EndOfFile, "end of file");
    } catch (const Bail&) {
    }

    result.diagnostics = std::move(diags_);
    if (result.diagnostics.empty()) {
      result.ast = std::move(ast);
    }
    return result;
  }

  ExprParseResult parse_expression_only() {
    ExprParseResult result;
    try {
      MatrixExpr e = parse_expr();
      expect(TokenType::EndOfFile, "end of expression");
      result.expr = std::move(e);
    } catch (const Bail&) {
    }
    result.diagnostics = std::move(diags_);
    if (!result.diagnostics.empty()) result.expr.reset();
    return result;
  }

  InitialParseResult parse_initial_only() {
    InitialParseResult result;
    try {
      InitialExpr init;
      if (at(TokenType::Ident) && peek().text == "pure" &&
          tokens_[idx_ + 1].type == TokenType::LParen) {
        next();
        next();
        init.pure = true;
        init.expr = parse_expr();
        expect(TokenType::RParen, "')'");
      } else {
        init.expr = parse_expr();
      }
      expect(TokenType::EndOfFile, "end of expression");
      result.initial = std::move(init);
    } catch (const Bail&) {
    }
    result.diagnostics = std::move(diags_);
    if (!result.diagnostics.empty()) result.initial.reset();
    return result;
  }

 private:
  struct Bail {};

  const Token& peek() const { return tokens_[idx_]; }
  const Token& next() { return tokens_[idx_ < tokens_.size() - 1 ? idx_++ : idx_]; }
  bool at(TokenType t) const { return peek().type == t; }

  bool at_keyword(const std::string& kw) const {
    return at(TokenType::Ident) && peek().text == kw;
  }

  [[noreturn]] void fail(const Token& tok, const std::string& message) {
    diags_.push_back({tok.pos, message, tok.text});
    throw Bail{};
  }

  const Token& expect(TokenType t, const std::string& what) {
    if (!at(t)) {
      fail(peek(), "expected " + what);
    }
    return next();
  }

  /// Skip to the next declaration keyword or closing brace.
  void recover() {
    static const std::set<std::string> kStarters = {"dim",       "node", "arc", "op",
                                                    "snapshots", "prob", "map"};
    while (!at(TokenType::EndOfFile)) {
      if (at(TokenType::RBrace)) return;
      if (at(TokenType::Ident) && kStarters.count(peek().text)) return;
      next();
    }
  }

  void parse_decl(SpecAst& ast) {
    const Token& head = peek();
    if (head.type != TokenType::Ident) {
      fail(head, "expected a declaration");
    }
    const bool automaton = ast.kind == SpecAst::Kind::Automaton;
    if (head.text == "dim" && automaton) {
      parse_dim(ast);
    } else if (head.text == "node") {
      parse_node(ast);
    } else if (head.text == "arc") {
      parse_arc(ast);
    } else if (head.text == "op" && automaton) {
      parse_op(ast);
    } else if (head.text == "snapshots" && !automaton) {
      parse_snapshots(ast);
    } else if (head.text == "prob" && !automaton) {
      parse_prob(ast);
    } else if (head.text == "map" && !automaton) {
      parse_map(ast);
    } else {
      fail(head, automaton ? "expected dim, node, arc or op declaration"
                           : "expected snapshots, node, arc, prob or map declaration");
    }
  }

  void parse_dim(SpecAst& ast) {
    const Token& kw = next();
    expect(TokenType::Equals, "'='");
    const Token& n = expect(TokenType::Number, "dimension");
    if (ast.dim) {
      diags_.push_back({kw.pos, "duplicate dim declaration", "dim"});
      throw Bail{};
    }
    ast.dim = static_cast<long long>(n.value);
    ast.dim_pos = n.pos;
  }

  void parse_node(SpecAst& ast) {
    next();
    NodeDecl decl;
    const Token& name = expect(TokenType::Ident, "node name");
    decl.name = name.text;
    decl.pos = name.pos;
    while (at_keyword("initial") || at_keyword("terminal")) {
      if (next().text == "initial") {
        decl.initial = true;
      } else {
        decl.terminal = true;
      }
    }
    ast.nodes.push_back(std::move(decl));
  }

  /// Arc ids may be plain identifiers or digit strings like 00, 01.
  std::string parse_arc_id() {
    if (at(TokenType::Ident) || at(TokenType::Number)) {
      return next().text;
    }
    fail(peek(), "expected an arc id");
  }

  void parse_arc(SpecAst& ast) {
    next();
    ArcDecl decl;
    decl.pos = peek().pos;
    decl.id = parse_arc_id();
    expect(TokenType::Colon, "':'");
    decl.dom = expect(TokenType::Ident, "source node").text;
    expect(TokenType::Arrow, "'->'");
    decl.codom = expect(TokenType::Ident, "target node").text;
    ast.arcs.push_back(std::move(decl));
  }

  void parse_op(SpecAst& ast) {
    next();
    OpDecl decl;
    const Token& name = expect(TokenType::Ident, "node name");
    decl.node = name.text;
    decl.pos = name.pos;
    expect(TokenType::LBrace, "'{'");
    while (!at(TokenType::RBrace)) {
      KrausDecl k;
      const Token& kw = expect(TokenType::Ident, "'K'");
      if (kw.text != "K") {
        fail(kw, "expected 'K'");
      }
      k.pos = kw.pos;
      expect(TokenType::LParen, "'('");
      k.outcome = expect(TokenType::String, "outcome label string").text;
      expect(TokenType::RParen, "')'");
      expect(TokenType::Equals, "'='");
      k.expr = parse_expr();
      decl.kraus.push_back(std::move(k));
    }
    expect(TokenType::RBrace, "'}'");
    ast.ops.push_back(std::move(decl));
  }

  void parse_snapshots(SpecAst& ast) {
    const Token& kw = next();
    if (!ast.snapshots.empty()) {
      diags_.push_back({kw.pos, "duplicate snapshots declaration", "snapshots"});
      throw Bail{};
    }
    ast.snapshots_pos = kw.pos;
    expect(TokenType::LBrace, "'{'");
    ast.snapshots.push_back(expect(TokenType::Ident, "snapshot name").text);
    while (at(TokenType::Comma)) {
      next();
      ast.snapshots.push_back(expect(TokenType::Ident, "snapshot name").text);
    }
    expect(TokenType::RBrace, "'}'");
  }

  void parse_prob(SpecAst& ast) {
    const Token& kw = next();
    ProbDecl decl;
    decl.pos = kw.pos;
    expect(TokenType::LParen, "'('");
    decl.node = expect(TokenType::Ident, "node name").text;
    expect(TokenType::Comma, "','");
    decl.snapshot = expect(TokenType::Ident, "snapshot name").text;
    expect(TokenType::RParen, "')'");
    expect(TokenType::LBrace, "'{'");
    while (!at(TokenType::RBrace)) {
      ProbEntry entry;
      entry.pos = peek().pos;
      entry.arc = parse_arc_id();
      expect(TokenType::Colon, "':'");
      const Token& v = expect(TokenType::Number, "probability");
      entry.value = v.value;
      decl.entries.push_back(std::move(entry));
    }
    expect(TokenType::RBrace, "'}'");
    ast.probs.push_back(std::move(decl));
  }

  void parse_map(SpecAst& ast) {
    const Token& kw = next();
    MapDecl decl;
    decl.pos = kw.pos;
    expect(TokenType::LParen, "'('");
    decl.arc = parse_arc_id();
    expect(TokenType::RParen, "')'");
    expect(TokenType::LBrace, "'{'");
    while (!at(TokenType::RBrace)) {
      MapEntry entry;
      entry.pos = peek().pos;
      entry.from = expect(TokenType::Ident, "snapshot name").text;
      expect(TokenType::Arrow, "'->'");
      entry.to = expect(TokenType::Ident, "snapshot name").text;
      decl.entries.push_back(std::move(entry));
    }
    expect(TokenType::RBrace, "'}'");
    ast.maps.push_back(std::move(decl));
  }

  // --- matrix expressions ---

  MatrixExpr parse_expr() {
    const Token& head = peek();
    MatrixExpr e;
    e.pos = head.pos;

    if (at(TokenType::LBracket)) {
      return parse_matrix_literal();
    }
    if (head.type != TokenType::Ident) {
      fail(head, "expected a matrix expression");
    }
    const std::string name = head.text;
    if (name == "identity") {
      next();
      expect(TokenType::LParen, "'('");
      const Token& k = expect(TokenType::Number, "dimension");
      expect(TokenType::RParen, "')'");
      e.kind = MatrixExpr::Kind::Identity;
      e.identity_dim = static_cast<long long>(k.value);
      return e;
    }
    if (name == "kron" || name == "matmul") {
      next();
      expect(TokenType::LParen, "'('");
      e.kind = name == "kron" ? MatrixExpr::Kind::Kron : MatrixExpr::Kind::Matmul;
      e.args.push_back(parse_expr());
      expect(TokenType::Comma, "','");
      e.args.push_back(parse_expr());
      expect(TokenType::RParen, "')'");
      return e;
    }
    if (name == "adjoint") {
      next();
      expect(TokenType::LParen, "'('");
      e.kind = MatrixExpr::Kind::Adjoint;
      e.args.push_back(parse_expr());
      expect(TokenType::RParen, "')'");
      return e;
    }
    if (name == "scale") {
      next();
      expect(TokenType::LParen, "'('");
      e.kind = MatrixExpr::Kind::Scale;
      e.scale_factor = parse_complex();
      expect(TokenType::Comma, "','");
      e.args.push_back(parse_expr());
      expect(TokenType::RParen, "')'");
      return e;
    }
    if (name == "H" || name == "X" || name == "Y" || name == "Z" || name == "CNOT") {
      next();
      e.kind = MatrixExpr::Kind::Constant;
      e.constant_name = name;
      return e;
    }
    fail(head, "unknown matrix expression '" + name + "'");
  }

  MatrixExpr parse_matrix_literal() {
    MatrixExpr e;
    e.kind = MatrixExpr::Kind::Literal;
    e.pos = peek().pos;
    expect(TokenType::LBracket, "'['");
    e.literal_rows.push_back(parse_row());
    while (at(TokenType::Comma)) {
      next();
      e.literal_rows.push_back(parse_row());
    }
    expect(TokenType::RBracket, "']'");
    return e;
  }

  std::vector<std::complex<double>> parse_row() {
    std::vector<std::complex<double>> row;
    expect(TokenType::LBracket, "'['");
    row.push_back(parse_complex());
    while (at(TokenType::Comma)) {
      next();
      row.push_back(parse_complex());
    }
    expect(TokenType::RBracket, "']'");
    return row;
  }

  /// Forms: a, bi, i, a+bi, a-bi, each part optionally signed.
  std::complex<double> parse_complex() {
    double sign = 1.0;
    if (at(TokenType::Minus) || at(TokenType::Plus)) {
      if (next().type == TokenType::Minus) sign = -1.0;
    }
    if (at(TokenType::Imag)) {
      return {0.0, sign * next().value};
    }
    if (at_keyword("i")) {
      next();
      return {0.0, sign};
    }
    const Token& re = expect(TokenType::Number, "a number");
    const double real_part = sign * re.value;
    if (at(TokenType::Plus) || at(TokenType::Minus)) {
      const double imag_sign = next().type == TokenType::Minus ? -1.0 : 1.0;
      if (at(TokenType::Imag)) {
        return {real_part, imag_sign * next().value};
      }
      if (at_keyword("i")) {
        next();
        return {real_part, imag_sign};
      }
      fail(peek(), "expected an imaginary part");
    }
    return {real_part, 0.0};
  }

  std::vector<Token> tokens_;
  std::vector<Diagnostic> diags_;
  std::size_t idx_ = 0;
};

}  // namespace detail

/// Parses one model. Returns an AST exactly when there are no diagnostics.
inline ParseResult parse(const SourceDoc& doc) {
  LexResult lexed = lex(doc);
  return detail::Parser(std::move(lexed.tokens), std::move(lexed.diagnostics))
      .parse_model();
}

/// Parses a standalone matrix expression (used by the command line).
inline ExprParseResult parse_matrix_expression(const SourceDoc& doc) {
  LexResult lexed = lex(doc);
  return detail::Parser(std::move(lexed.tokens), std::move(lexed.diagnostics))
      .parse_expression_only();
}

/// Parses an initial-state expression: expr or pure(expr).
inline InitialParseResult parse_initial_expression(const SourceDoc& doc) {
  LexResult lexed = lex(doc);
  return detail::Parser(std::move(lexed.tokens), std::move(lexed.diagnostics))
      .parse_initial_only();
}

}  // namespace qaut::dsl
