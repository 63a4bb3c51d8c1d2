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

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "qaut/dsl/source.hpp"

namespace qaut::dsl {

/// Matrix expression tree. Every node keeps its source position so the
/// evaluator can report dimension errors where they were written.
struct MatrixExpr {
  enum class Kind { Literal, Identity, Kron, Matmul, Adjoint, Scale, Constant };

  Kind kind = Kind::Literal;
  Position pos;

  std::vector<std::vector<std::complex<double>>> literal_rows;  // Literal
  long long identity_dim = 0;                                   // Identity
  std::vector<MatrixExpr> args;                // Kron, Matmul, Adjoint, Scale
  std::complex<double> scale_factor{0.0, 0.0};                  // Scale
  std::string constant_name;                                    // Constant
};

struct NodeDecl {
  std::string name;
  bool initial = false;
  bool terminal = false;
  Position pos;
};

struct ArcDecl {
  std::string id;
  std::string dom;
  std::string codom;
  Position pos;
};

struct KrausDecl {
  std::string outcome;
  MatrixExpr expr;
  Position pos;
};

struct OpDecl {
  std::string node;
  std::vector<KrausDecl> kraus;
  Position pos;
};

struct ProbEntry {
  std::string arc;
  double value = 0.0;
  Position pos;
};

struct ProbDecl {
  std::string node;
  std::string snapshot;
  std::vector<ProbEntry> entries;
  Position pos;
};

struct MapEntry {
  std::string from;
  std::string to;
  Position pos;
};

struct MapDecl {
  std::string arc;
  std::vector<MapEntry> entries;
  Position pos;
};

struct SpecAst {
  enum class Kind { Automaton, Machine };

  Kind kind = Kind::Automaton;
  std::string name;
  Position pos;

  std::optional<long long> dim;  // automaton only
  Position dim_pos;

  std::vector<std::string> snapshots;  // machine only
  Position snapshots_pos;

  std::vector<NodeDecl> nodes;
  std::vector<ArcDecl> arcs;
  std::vector<OpDecl> ops;
  std::vector<ProbDecl> probs;
  std::vector<MapDecl> maps;
};

}  // namespace qaut::dsl
