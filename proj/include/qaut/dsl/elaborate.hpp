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

// Turns a parsed AST into a validated automaton or machine. Every semantic
// failure, including graph and completeness violations, becomes a
// diagnostic pointing at the declaration that caused it.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qaut/automaton.hpp"
#include "qaut/classical.hpp"
#include "qaut/control_graph.hpp"
#include "qaut/dsl/ast.hpp"
#include "qaut/dsl/eval.hpp"
#include "qaut/dsl/parser.hpp"
#include "qaut/dsl/source.hpp"
#include "qaut/quantum.hpp"

namespace qaut::dsl {

struct ElaboratedModel {
  std::string name;
  std::variant<AbstractQuantumAutomaton, StochasticASM> model;

  bool is_automaton() const {
    return std::holds_alternative<AbstractQuantumAutomaton>(model);
  }
  const AbstractQuantumAutomaton& automaton() const {
    return std::get<AbstractQuantumAutomaton>(model);
  }
  const StochasticASM& machine() const { return std::get<StochasticASM>(model); }
};

struct ElaborationResult {
  std::optional<ElaboratedModel> model;  // set iff diagnostics is empty
  std::vector<Diagnostic> diagnostics;
};

namespace detail {

class Elaborator {
 public:
  Elaborator(const SpecAst& ast, double tol) : ast_(ast), tol_(tol) {}

  ElaborationResult run() {
    ElaborationResult result;
    build_graph();
    if (ast_.kind == SpecAst::Kind::Automaton) {
      AbstractQuantumAutomaton a = build_automaton();
      if (diags_.empty()) {
        for (const Violation& v : validate_automaton(a)) {
          diags_.push_back({position_of(v.subject), v.message, v.subject});
        }
      }
      result.diagnostics = std::move(diags_);
      if (result.diagnostics.empty()) {
        result.model = ElaboratedModel{ast_.name, std::move(a)};
      }
    } else {
      StochasticASM m = build_machine();
      if (diags_.empty()) {
        for (const Violation& v : validate_asm(m, tol_)) {
          diags_.push_back({position_of(v.subject), v.message, v.subject});
        }
      }
      result.diagnostics = std::move(diags_);
      if (result.diagnostics.empty()) {
        result.model = ElaboratedModel{ast_.name, std::move(m)};
      }
    }
    return result;
  }

 private:
  void diag(Position pos, const std::string& message, const std::string& lexeme = "") {
    diags_.push_back({pos, message, lexeme});
  }

  /// Best-effort mapping from a violation subject back to a declaration.
  Position position_of(const std::string& subject) const {
    for (const NodeDecl& n : ast_.nodes) {
      if (n.name == subject) return n.pos;
    }
    for (const ArcDecl& a : ast_.arcs) {
      if (a.id == subject) return a.pos;
    }
    return ast_.pos;
  }

  void build_graph() {
    std::set<std::string> seen;
    std::size_t initial_count = 0;
    for (const NodeDecl& n : ast_.nodes) {
      if (!seen.insert(n.name).second) {
        diag(n.pos, "node '" + n.name + "' declared twice", n.name);
        continue;
      }
      graph_.nodes.push_back(n.name);
      if (n.initial) {
        ++initial_count;
        if (initial_count > 1) {
          diag(n.pos, "more than one initial node", n.name);
        }
        graph_.initial = n.name;
      }
      if (n.terminal) graph_.terminals.push_back(n.name);
    }
    if (initial_count == 0) {
      diag(ast_.pos, "no initial node declared", ast_.name);
    }
    if (graph_.terminals.empty()) {
      diag(ast_.pos, "no terminal node declared", ast_.name);
    }

    std::set<std::string> arc_ids;
    for (const ArcDecl& a : ast_.arcs) {
      if (!arc_ids.insert(a.id).second) {
        diag(a.pos, "arc '" + a.id + "' declared twice", a.id);
        continue;
      }
      if (!seen.count(a.dom)) {
        diag(a.pos, "arc '" + a.id + "' starts at undeclared node '" + a.dom + "'",
             a.dom);
        continue;
      }
      if (!seen.count(a.codom)) {
        diag(a.pos, "arc '" + a.id + "' ends at undeclared node '" + a.codom + "'",
             a.codom);
        continue;
      }
      graph_.arcs.push_back({a.id, a.dom, a.codom});
    }
  }

  AbstractQuantumAutomaton build_automaton() {
    AbstractQuantumAutomaton a;
    a.graph = graph_;

    if (!ast_.dim) {
      diag(ast_.pos, "automaton needs a dim declaration", ast_.name);
      return a;
    }
    if (*ast_.dim < 2) {
      diag(ast_.dim_pos, "dimension must be at least 2, got " +
                             std::to_string(*ast_.dim));
      return a;
    }
    a.dim = static_cast<std::size_t>(*ast_.dim);

    if (!ast_.snapshots.empty()) {
      diag(ast_.snapshots_pos, "snapshots block is only valid in a machine");
    }

    std::set<std::string> op_nodes;
    for (const OpDecl& op : ast_.ops) {
      if (!op_nodes.insert(op.node).second) {
        diag(op.pos, "duplicate op block for node '" + op.node + "'", op.node);
        continue;
      }
      if (!graph_.has_node(op.node)) {
        diag(op.pos, "op block for undeclared node '" + op.node + "'", op.node);
        continue;
      }
      if (graph_.is_terminal(op.node)) {
        diag(op.pos, "terminal node '" + op.node + "' must not carry an op block",
             op.node);
        continue;
      }

      const std::vector<std::string> outgoing = out_arcs(graph_, op.node);
      std::map<std::string, ComplexMatrix> blocks;
      bool ok = true;
      for (const KrausDecl& k : op.kraus) {
        if (blocks.count(k.outcome)) {
          diag(k.pos, "duplicate Kraus block for outcome '" + k.outcome + "'",
               k.outcome);
          ok = false;
          continue;
        }
        if (std::find(outgoing.begin(), outgoing.end(), k.outcome) == outgoing.end()) {
          diag(k.pos, "outcome '" + k.outcome + "' is not an arc leaving node '" +
                          op.node + "'",
               k.outcome);
          ok = false;
          continue;
        }
        auto m = evaluate(k.expr, diags_);
        if (!m) {
          ok = false;
          continue;
        }
        if (m->rows() != a.dim || m->cols() != a.dim) {
          diag(k.expr.pos, "operator is " + std::to_string(m->rows()) + "x" +
                               std::to_string(m->cols()) + " but the automaton dimension is " +
                               std::to_string(a.dim));
          ok = false;
          continue;
        }
        blocks.emplace(k.outcome, std::move(*m));
      }
      for (const std::string& arc : outgoing) {
        if (!blocks.count(arc)) {
          diag(op.pos, "node '" + op.node + "' lacks a Kraus block for arc '" + arc + "'",
               op.node);
          ok = false;
        }
      }
      if (!ok) continue;

      std::vector<ComplexMatrix> ordered;
      ordered.reserve(outgoing.size());
      for (const std::string& arc : outgoing) ordered.push_back(blocks.at(arc));
      try {
        a.ops.emplace(op.node, QuantumOperation(
                                   KrausFamily(OutcomeSet(outgoing), std::move(ordered),
                                               tol_)));
      } catch (const OperationError& e) {
        diag(op.pos, std::string(e.what()) + " at node '" + op.node + "'", op.node);
      }
    }

    for (const std::string& node : graph_.nodes) {
      if (!graph_.is_terminal(node) && !op_nodes.count(node)) {
        diag(position_of(node), "non-terminal node '" + node + "' has no op block",
             node);
      }
    }
    return a;
  }

  StochasticASM build_machine() {
    StochasticASM m;
    m.graph = graph_;

    if (ast_.dim) {
      diag(ast_.dim_pos, "dim declaration is only valid in an automaton");
    }
    if (ast_.snapshots.empty()) {
      diag(ast_.pos, "machine needs a snapshots declaration", ast_.name);
      return m;
    }
    {
      std::set<std::string> seen;
      for (const std::string& s : ast_.snapshots) {
        if (!seen.insert(s).second) {
          diag(ast_.snapshots_pos, "snapshot '" + s + "' declared twice", s);
          return m;
        }
      }
    }
    m.snapshots = SnapshotSet(ast_.snapshots);

    std::set<std::pair<std::string, std::string>> prob_keys;
    for (const ProbDecl& p : ast_.probs) {
      if (!graph_.has_node(p.node)) {
        diag(p.pos, "prob block for undeclared node '" + p.node + "'", p.node);
        continue;
      }
      if (graph_.is_terminal(p.node)) {
        diag(p.pos, "terminal node '" + p.node + "' must not carry a prob block",
             p.node);
        continue;
      }
      if (!m.snapshots.contains(p.snapshot)) {
        diag(p.pos, "prob block for unknown snapshot '" + p.snapshot + "'", p.snapshot);
        continue;
      }
      if (!prob_keys.insert({p.node, p.snapshot}).second) {
        diag(p.pos, "duplicate prob block for ('" + p.node + "', '" + p.snapshot + "')");
        continue;
      }
      std::map<std::string, double> probs;
      for (const ProbEntry& e : p.entries) {
        if (!graph_.find_arc(e.arc)) {
          diag(e.pos, "probability for undeclared arc '" + e.arc + "'", e.arc);
          continue;
        }
        if (probs.count(e.arc)) {
          diag(e.pos, "duplicate probability for arc '" + e.arc + "'", e.arc);
          continue;
        }
        probs[e.arc] = e.value;
      }
      m.dist[{p.node, p.snapshot}] = std::move(probs);
    }

    std::set<std::string> map_arcs;
    for (const MapDecl& md : ast_.maps) {
      if (!graph_.find_arc(md.arc)) {
        diag(md.pos, "map block for undeclared arc '" + md.arc + "'", md.arc);
        continue;
      }
      if (!map_arcs.insert(md.arc).second) {
        diag(md.pos, "duplicate map block for arc '" + md.arc + "'", md.arc);
        continue;
      }
      std::map<std::string, std::string> table;
      for (const MapEntry& e : md.entries) {
        if (!m.snapshots.contains(e.from)) {
          diag(e.pos, "map entry for unknown snapshot '" + e.from + "'", e.from);
          continue;
        }
        if (!m.snapshots.contains(e.to)) {
          diag(e.pos, "map entry targets unknown snapshot '" + e.to + "'", e.to);
          continue;
        }
        if (table.count(e.from)) {
          diag(e.pos, "duplicate map entry for snapshot '" + e.from + "'", e.from);
          continue;
        }
        table[e.from] = e.to;
      }
      for (const std::string& s : m.snapshots.labels()) {
        if (!table.count(s)) {
          diag(md.pos, "map for arc '" + md.arc + "' misses snapshot '" + s + "'",
               md.arc);
        }
      }
      m.transforms[md.arc] = std::move(table);
    }
    for (const ControlGraph::Arc& arc : graph_.arcs) {
      if (!map_arcs.count(arc.id)) {
        diag(position_of(arc.id), "arc '" + arc.id + "' has no map block", arc.id);
      }
    }
    return m;
  }

  const SpecAst& ast_;
  double tol_;
  ControlGraph graph_;
  std::vector<Diagnostic> diags_;
};

}  // namespace detail

/// Elaborates a parsed AST into a validated model.
inline ElaborationResult elaborate(const SpecAst& ast, double tol = kDefaultTol) {
  return detail::Elaborator(ast, tol).run();
}

/// parse + elaborate in one step.
inline ElaborationResult load_model(const SourceDoc& doc, double tol = kDefaultTol) {
  ParseResult parsed = parse(doc);
  if (!parsed.ast) {
    return ElaborationResult{std::nullopt, std::move(parsed.diagnostics)};
  }
  return elaborate(*parsed.ast, tol);
}

}  // namespace qaut::dsl
