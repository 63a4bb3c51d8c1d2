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

// Bottom-up, dimension-checked evaluation of matrix expressions.

#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "qaut/dsl/ast.hpp"
#include "qaut/dsl/source.hpp"
#include "qaut/linalg.hpp"

namespace qaut::dsl {

inline const ComplexMatrix& named_constant(const std::string& name) {
  static const ComplexMatrix h = [] {
    const double s = 1.0 / std::sqrt(2.0);
    return ComplexMatrix{{s, s}, {s, -s}};
  }();
  static const ComplexMatrix x{{0.0, 1.0}, {1.0, 0.0}};
  static const ComplexMatrix y{{0.0, Complex{0.0, -1.0}}, {Complex{0.0, 1.0}, 0.0}};
  static const ComplexMatrix z{{1.0, 0.0}, {0.0, -1.0}};
  // control on the first (slow) qubit
  static const ComplexMatrix cnot{{1.0, 0.0, 0.0, 0.0},
                                  {0.0, 1.0, 0.0, 0.0},
                                  {0.0, 0.0, 0.0, 1.0},
                                  {0.0, 0.0, 1.0, 0.0}};
  if (name == "H") return h;
  if (name == "X") return x;
  if (name == "Y") return y;
  if (name == "Z") return z;
  if (name == "CNOT") return cnot;
  throw ShapeError("unknown constant '" + name + "'");
}

/// Evaluates an expression; on failure appends a positioned diagnostic and
/// returns nothing.
inline std::optional<ComplexMatrix> evaluate(const MatrixExpr& expr,
                                             std::vector<Diagnostic>& diags) {
  switch (expr.kind) {
    case MatrixExpr::Kind::Literal: {
      if (expr.literal_rows.empty() || expr.literal_rows.front().empty()) {
        diags.push_back({expr.pos, "empty matrix literal", ""});
        return std::nullopt;
      }
      const std::size_t cols = expr.literal_rows.front().size();
      std::vector<Complex> entries;
      for (const auto& row : expr.literal_rows) {
        if (row.size() != cols) {
          diags.push_back({expr.pos, "ragged matrix literal: row with " +
                                         std::to_string(row.size()) + " entries, expected " +
                                         std::to_string(cols),
                           ""});
          return std::nullopt;
        }
        entries.insert(entries.end(), row.begin(), row.end());
      }
      return ComplexMatrix(expr.literal_rows.size(), cols, std::move(entries));
    }
    case MatrixExpr::Kind::Identity: {
      if (expr.identity_dim < 1 || expr.identity_dim > 256) {
        diags.push_back({expr.pos, "identity dimension must be in [1, 256], got " +
                                       std::to_string(expr.identity_dim),
                         ""});
        return std::nullopt;
      }
      return ComplexMatrix::identity(static_cast<std::size_t>(expr.identity_dim));
    }
    case MatrixExpr::Kind::Kron: {
      const auto a = evaluate(expr.args[0], diags);
      const auto b = evaluate(expr.args[1], diags);
      if (!a || !b) return std::nullopt;
      return kron(*a, *b);
    }
    case MatrixExpr::Kind::Matmul: {
      const auto a = evaluate(expr.args[0], diags);
      const auto b = evaluate(expr.args[1], diags);
      if (!a || !b) return std::nullopt;
      if (a->cols() != b->rows()) {
        diags.push_back({expr.pos, "matmul shape mismatch: " + std::to_string(a->rows()) +
                                       "x" + std::to_string(a->cols()) + " * " +
                                       std::to_string(b->rows()) + "x" +
                                       std::to_string(b->cols()),
                         ""});
        return std::nullopt;
      }
      return matmul(*a, *b);
    }
    case MatrixExpr::Kind::Adjoint: {
      const auto a = evaluate(expr.args[0], diags);
      if (!a) return std::nullopt;
      return adjoint(*a);
    }
    case MatrixExpr::Kind::Scale: {
      const auto a = evaluate(expr.args[0], diags);
      if (!a) return std::nullopt;
      return expr.scale_factor * *a;
    }
    case MatrixExpr::Kind::Constant:
      return named_constant(expr.constant_name);
  }
  return std::nullopt;
}

}  // namespace qaut::dsl
