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

// Canonical text form of a model: declarations in declaration order,
// matrices as literals with 17-significant-digit components, so parsing the
// output reproduces the model bit for bit.

#pragma once

#include <cstdio>
#include <string>

#include "qaut/automaton.hpp"
#include "qaut/classical.hpp"
#include "qaut/dsl/elaborate.hpp"
#include "qaut/dsl/source.hpp"
#include "qaut/linalg.hpp"

namespace qaut::dsl {

/// %.17g, with negative zero normalized to zero. Round-trips any finite
/// double exactly.
inline std::string format_real(double v) {
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string format_complex(Complex z) {
  const double re = z.real() == 0.0 ? 0.0 : z.real();
  const double im = z.imag() == 0.0 ? 0.0 : z.imag();
  if (im == 0.0) return format_real(re);
  if (re == 0.0) return format_real(im) + "i";
  if (im < 0.0) return format_real(re) + "-" + format_real(-im) + "i";
  return format_real(re) + "+" + format_real(im) + "i";
}

inline std::string format_matrix_literal(const ComplexMatrix& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i > 0) out += ", ";
    out += "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ", ";
      out += format_complex(m(i, j));
    }
    out += "]";
  }
  out += "]";
  return out;
}

namespace detail {

inline void serialize_graph(const ControlGraph& g, std::string& out) {
  for (const std::string& n : g.nodes) {
    out += "  node " + n;
    if (n == g.initial) out += " initial";
    if (g.is_terminal(n)) out += " terminal";
    out += "\n";
  }
  for (const ControlGraph::Arc& a : g.arcs) {
    out += "  arc " + a.id + ": " + a.dom + " -> " + a.codom + "\n";
  }
}

}  // namespace detail

inline SourceDoc serialize_automaton(const AbstractQuantumAutomaton& a,
                                     const std::string& name) {
  std::string out = "automaton " + name + " {\n";
  out += "  dim = " + std::to_string(a.dim) + "\n";
  detail::serialize_graph(a.graph, out);
  for (const std::string& node : a.graph.nodes) {
    if (a.graph.is_terminal(node)) continue;
    const QuantumOperation& op = a.ops.at(node);
    out += "  op " + node + " {\n";
    for (const std::string& arc : out_arcs(a.graph, node)) {
      out += "    K(\"" + arc + "\") = " + format_matrix_literal(op.kraus().block(arc)) +
             "\n";
    }
    out += "  }\n";
  }
  out += "}\n";
  return SourceDoc{std::move(out), name + ".qaut"};
}

inline SourceDoc serialize_machine(const StochasticASM& m, const std::string& name) {
  std::string out = "machine " + name + " {\n";
  out += "  snapshots { ";
  for (std::size_t i = 0; i < m.snapshots.size(); ++i) {
    if (i > 0) out += ", ";
    out += m.snapshots.labels()[i];
  }
  out += " }\n";
  detail::serialize_graph(m.graph, out);
  for (const std::string& node : m.graph.nodes) {
    if (m.graph.is_terminal(node)) continue;
    for (const std::string& snapshot : m.snapshots.labels()) {
      out += "  prob(" + node + ", " + snapshot + ") {\n";
      for (const std::string& arc : out_arcs(m.graph, node)) {
        out += "    " + arc + ": " + format_real(m.probability(node, snapshot, arc)) +
               "\n";
      }
      out += "  }\n";
    }
  }
  for (const ControlGraph::Arc& arc : m.graph.arcs) {
    out += "  map(" + arc.id + ") {\n";
    for (const std::string& snapshot : m.snapshots.labels()) {
      out += "    " + snapshot + " -> " + m.transform(arc.id, snapshot) + "\n";
    }
    out += "  }\n";
  }
  out += "}\n";
  return SourceDoc{std::move(out), name + ".qaut"};
}

inline SourceDoc serialize(const ElaboratedModel& model) {
  if (model.is_automaton()) {
    return serialize_automaton(model.automaton(), model.name);
  }
  return serialize_machine(model.machine(), model.name);
}

}  // namespace qaut::dsl
