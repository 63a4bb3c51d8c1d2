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

// Directed multigraphs with a distinguished initial node and terminal set.
// A valid control graph satisfies three conditions: the initial node is not
// terminal, no arc leaves a terminal node, and every node lies on some walk
// from the initial node to a terminal one.

#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qaut/errors.hpp"

namespace qaut {

/// One violated invariant, named by a stable code plus the offending
/// node or arc.
struct Violation {
  std::string code;
  std::string subject;
  std::string message;
};

struct ControlGraph {
  struct Arc {
    std::string id;
    std::string dom;
    std::string codom;
  };

  std::vector<std::string> nodes;  // declaration order
  std::vector<Arc> arcs;           // declaration order; parallel arcs allowed
  std::string initial;
  std::vector<std::string> terminals;

  bool has_node(const std::string& n) const {
    return std::find(nodes.begin(), nodes.end(), n) != nodes.end();
  }

  bool is_terminal(const std::string& n) const {
    return std::find(terminals.begin(), terminals.end(), n) != terminals.end();
  }

  const Arc* find_arc(const std::string& id) const {
    for (const Arc& a : arcs) {
      if (a.id == id) return &a;
    }
    return nullptr;
  }
};

/// Arcs leaving n, in declaration order. Non-empty for every non-terminal
/// node of a valid graph.
inline std::vector<std::string> out_arcs(const ControlGraph& g, const std::string& n) {
  if (!g.has_node(n)) {
    throw ShapeError("unknown node '" + n + "'");
  }
  std::vector<std::string> out;
  for (const ControlGraph::Arc& a : g.arcs) {
    if (a.dom == n) out.push_back(a.id);
  }
  return out;
}

/// Checks structural well-formedness plus the three control-graph
/// conditions. Returns an empty list iff the graph is valid.
inline std::vector<Violation> validate(const ControlGraph& g) {
  std::vector<Violation> out;

  std::set<std::string> node_set;
  for (const std::string& n : g.nodes) {
    if (!node_set.insert(n).second) {
      out.push_back({"duplicate-node", n, "node '" + n + "' declared twice"});
    }
  }
  std::set<std::string> arc_set;
  for (const ControlGraph::Arc& a : g.arcs) {
    if (!arc_set.insert(a.id).second) {
      out.push_back({"duplicate-arc", a.id, "arc '" + a.id + "' declared twice"});
    }
    if (!node_set.count(a.dom)) {
      out.push_back({"unknown-node", a.id,
                     "arc '" + a.id + "' starts at unknown node '" + a.dom + "'"});
    }
    if (!node_set.count(a.codom)) {
      out.push_back({"unknown-node", a.id,
                     "arc '" + a.id + "' ends at unknown node '" + a.codom + "'"});
    }
  }
  if (!node_set.count(g.initial)) {
    out.push_back({"unknown-node", g.initial,
                   "initial node '" + g.initial + "' is not declared"});
    return out;
  }
  for (const std::string& t : g.terminals) {
    if (!node_set.count(t)) {
      out.push_back({"unknown-node", t, "terminal node '" + t + "' is not declared"});
      return out;
    }
  }

  // (i) the initial node is not terminal
  if (g.is_terminal(g.initial)) {
    out.push_back({"initial-terminal", g.initial,
                   "initial node '" + g.initial + "' is in the terminal set"});
  }

  // (ii) no arc leaves a terminal node
  for (const ControlGraph::Arc& a : g.arcs) {
    if (g.is_terminal(a.dom)) {
      out.push_back({"arc-from-terminal", a.id,
                     "arc '" + a.id + "' leaves terminal node '" + a.dom + "'"});
    }
  }

  // (iii) every node is on some walk from the initial node to a terminal
  // one: reachable from the initial node and co-reachable to the terminal
  // set.
  std::set<std::string> forward;
  {
    std::vector<std::string> frontier{g.initial};
    forward.insert(g.initial);
    while (!frontier.empty()) {
      const std::string n = frontier.back();
      frontier.pop_back();
      for (const ControlGraph::Arc& a : g.arcs) {
        if (a.dom == n && forward.insert(a.codom).second) {
          frontier.push_back(a.codom);
        }
      }
    }
  }
  std::set<std::string> backward(g.terminals.begin(), g.terminals.end());
  {
    std::vector<std::string> frontier(g.terminals.begin(), g.terminals.end());
    while (!frontier.empty()) {
      const std::string n = frontier.back();
      frontier.pop_back();
      for (const ControlGraph::Arc& a : g.arcs) {
        if (a.codom == n && backward.insert(a.dom).second) {
          frontier.push_back(a.dom);
        }
      }
    }
  }
  for (const std::string& n : g.nodes) {
    if (!forward.count(n)) {
      out.push_back({"unreachable", n,
                     "node '" + n + "' is not reachable from the initial node"});
    } else if (!backward.count(n)) {
      out.push_back({"no-walk-to-terminal", n,
                     "no walk from node '" + n + "' reaches a terminal node"});
    }
  }

  return out;
}

}  // namespace qaut
