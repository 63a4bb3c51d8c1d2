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

// Abstract state machines with stochastic behaviour: a control graph, a
// finite snapshot set, one snapshot transformation per arc, and one
// distribution over out-arcs per (non-terminal node, snapshot). Besides
// being a model in its own right, every machine embeds into a quantum
// automaton over the snapshot basis, which the tests use to cross-validate
// the two run engines against each other.

#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qaut/automaton.hpp"
#include "qaut/control_graph.hpp"
#include "qaut/errors.hpp"
#include "qaut/quantum.hpp"
#include "qaut/random.hpp"

namespace qaut {

/// Ordered, distinct memory-snapshot labels.
class SnapshotSet {
 public:
  SnapshotSet() = default;

  explicit SnapshotSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) {
      throw ShapeError("snapshot set must not be empty");
    }
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (!index_.emplace(labels_[i], i).second) {
        throw ShapeError("duplicate snapshot label '" + labels_[i] + "'");
      }
    }
  }

  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }
  bool contains(const std::string& s) const { return index_.count(s) != 0; }

  std::size_t index(const std::string& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) {
      throw ShapeError("unknown snapshot '" + s + "'");
    }
    return it->second;
  }

  friend bool operator==(const SnapshotSet& a, const SnapshotSet& b) {
    return a.labels_ == b.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::map<std::string, std::size_t> index_;
};

struct StochasticASM {
  ControlGraph graph;
  SnapshotSet snapshots;
  // arc id -> (snapshot -> snapshot); total on the snapshot set
  std::map<std::string, std::map<std::string, std::string>> transforms;
  // (node, snapshot) -> (arc -> probability); one entry per non-terminal node
  std::map<std::pair<std::string, std::string>, std::map<std::string, double>> dist;

  double probability(const std::string& node, const std::string& snapshot,
                     const std::string& arc) const {
    auto it = dist.find({node, snapshot});
    if (it == dist.end()) return 0.0;
    auto jt = it->second.find(arc);
    return jt == it->second.end() ? 0.0 : jt->second;
  }

  const std::string& transform(const std::string& arc, const std::string& snapshot) const {
    auto it = transforms.find(arc);
    if (it == transforms.end()) {
      throw ShapeError("no transform for arc '" + arc + "'");
    }
    auto jt = it->second.find(snapshot);
    if (jt == it->second.end()) {
      throw ShapeError("transform for arc '" + arc + "' misses snapshot '" + snapshot +
                       "'");
    }
    return jt->second;
  }
};

/// Checks all machine invariants: valid graph, total transforms, and at
/// every (non-terminal node, snapshot) a distribution over exactly the
/// out-arcs that sums to 1 within tol.
inline std::vector<Violation> validate_asm(const StochasticASM& m,
                                           double tol = kDefaultTol) {
  std::vector<Violation> out = validate(m.graph);
  if (m.snapshots.size() == 0) {
    out.push_back({"no-snapshots", "", "snapshot set is empty"});
    return out;
  }

  for (const ControlGraph::Arc& a : m.graph.arcs) {
    auto it = m.transforms.find(a.id);
    if (it == m.transforms.end()) {
      out.push_back({"missing-transform", a.id, "arc '" + a.id + "' has no transform"});
      continue;
    }
    for (const std::string& s : m.snapshots.labels()) {
      auto jt = it->second.find(s);
      if (jt == it->second.end()) {
        out.push_back({"partial-transform", a.id,
                       "transform for arc '" + a.id + "' misses snapshot '" + s + "'"});
      } else if (!m.snapshots.contains(jt->second)) {
        out.push_back({"unknown-snapshot", a.id,
                       "transform for arc '" + a.id + "' maps '" + s +
                           "' to unknown snapshot '" + jt->second + "'"});
      }
    }
  }
  for (const auto& [arc, table] : m.transforms) {
    if (!m.graph.find_arc(arc)) {
      out.push_back({"unknown-arc", arc, "transform for unknown arc '" + arc + "'"});
    }
    for (const auto& [from, to] : table) {
      if (!m.snapshots.contains(from)) {
        out.push_back({"unknown-snapshot", arc,
                       "transform for arc '" + arc + "' keyed by unknown snapshot '" +
                           from + "'"});
      }
      (void)to;
    }
  }

  for (const auto& [key, arcprobs] : m.dist) {
    const auto& [node, snapshot] = key;
    if (!m.graph.has_node(node)) {
      out.push_back({"unknown-node", node, "distribution at unknown node '" + node + "'"});
      continue;
    }
    if (m.graph.is_terminal(node)) {
      out.push_back({"dist-on-terminal", node,
                     "terminal node '" + node + "' must not carry a distribution"});
      continue;
    }
    if (!m.snapshots.contains(snapshot)) {
      out.push_back({"unknown-snapshot", node,
                     "distribution at node '" + node + "' keyed by unknown snapshot '" +
                         snapshot + "'"});
      continue;
    }
    const std::vector<std::string> outgoing = out_arcs(m.graph, node);
    for (const auto& [arc, p] : arcprobs) {
      if (p < 0.0 || p > 1.0) {
        out.push_back({"bad-probability", arc,
                       "Pr(" + arc + "|" + snapshot + "," + node + ") = " +
                           std::to_string(p) + " outside [0,1]"});
      }
      if (p > 0.0 &&
          std::find(outgoing.begin(), outgoing.end(), arc) == outgoing.end()) {
        out.push_back({"prob-on-foreign-arc", arc,
                       "Pr(" + arc + "|" + snapshot + "," + node +
                           ") > 0 but the arc does not leave '" + node + "'"});
      }
    }
  }
  for (const std::string& node : m.graph.nodes) {
    if (m.graph.is_terminal(node)) continue;
    const std::vector<std::string> outgoing = out_arcs(m.graph, node);
    for (const std::string& snapshot : m.snapshots.labels()) {
      auto it = m.dist.find({node, snapshot});
      if (it == m.dist.end()) {
        out.push_back({"missing-dist", node,
                       "no distribution at node '" + node + "' for snapshot '" +
                           snapshot + "'"});
        continue;
      }
      double sum = 0.0;
      for (const std::string& arc : outgoing) {
        auto jt = it->second.find(arc);
        if (jt != it->second.end()) sum += jt->second;
      }
      if (std::abs(sum - 1.0) > tol) {
        out.push_back({"dist-not-normalized", node,
                       "distribution at ('" + node + "','" + snapshot + "') sums to " +
                           std::to_string(sum)});
      }
    }
  }
  return out;
}

struct ClassicalRunTrace {
  struct Step {
    std::string node;
    std::string snapshot;
    std::optional<std::string> arc;  // absent on the last entry
  };
  enum class Status { Converged, StepLimitExhausted };

  std::vector<Step> steps;
  Status status = Status::StepLimitExhausted;

  const Step& final_step() const { return steps.back(); }
};

/// Samples one run from (initial node, s0). Arcs are drawn by inverse CDF
/// in declaration order from a seeded generator, so identical inputs yield
/// identical traces.
inline ClassicalRunTrace sample_classical_run(const StochasticASM& m,
                                              const std::string& s0, std::uint64_t seed,
                                              std::size_t max_steps) {
  if (max_steps == 0) {
    throw std::invalid_argument("max_steps must be positive");
  }
  if (!m.snapshots.contains(s0)) {
    throw ShapeError("unknown initial snapshot '" + s0 + "'");
  }
  std::mt19937_64 rng(seed);
  ClassicalRunTrace trace;
  std::string node = m.graph.initial;
  std::string snapshot = s0;
  for (std::size_t t = 0; t < max_steps; ++t) {
    if (m.graph.is_terminal(node)) break;
    const std::vector<std::string> outgoing = out_arcs(m.graph, node);
    const double u = detail::uniform01(rng);
    double cum = 0.0;
    std::string chosen;
    for (const std::string& arc : outgoing) {
      const double p = m.probability(node, snapshot, arc);
      if (p <= 0.0) continue;
      cum += p;
      chosen = arc;
      if (u < cum) break;
    }
    if (chosen.empty()) {
      throw NumericError("no positive-probability arc at node '" + node + "'");
    }
    trace.steps.push_back({node, snapshot, chosen});
    snapshot = m.transform(chosen, snapshot);
    node = m.graph.find_arc(chosen)->codom;
  }
  trace.steps.push_back({node, snapshot, std::nullopt});
  trace.status = m.graph.is_terminal(node) ? ClassicalRunTrace::Status::Converged
                                           : ClassicalRunTrace::Status::StepLimitExhausted;
  return trace;
}

struct ClassicalEnumeration {
  // (terminal node, snapshot) -> probability of converging there
  std::map<std::pair<std::string, std::string>, double> terminal_mass;
  double residual_mass = 0.0;  // still alive at max_steps, plus pruned mass
};

/// Exact distribution over terminal configurations reachable within
/// max_steps transitions. Mass is merged per (node, snapshot) at each
/// depth, so loops cost nothing; cells whose merged mass is at or below
/// prune_eps are dropped into the residual.
inline ClassicalEnumeration enumerate_classical(const StochasticASM& m,
                                                const std::string& s0,
                                                std::size_t max_steps,
                                                double prune_eps = 0.0) {
  if (!m.snapshots.contains(s0)) {
    throw ShapeError("unknown initial snapshot '" + s0 + "'");
  }
  ClassicalEnumeration result;
  std::map<std::pair<std::string, std::string>, double> alive;
  alive[{m.graph.initial, s0}] = 1.0;

  for (std::size_t t = 0; t <= max_steps; ++t) {
    for (auto it = alive.begin(); it != alive.end();) {
      if (m.graph.is_terminal(it->first.first)) {
        result.terminal_mass[it->first] += it->second;
        it = alive.erase(it);
      } else {
        ++it;
      }
    }
    if (t == max_steps) break;

    std::map<std::pair<std::string, std::string>, double> next;
    for (const auto& [key, mass] : alive) {
      const auto& [node, snapshot] = key;
      if (mass <= prune_eps) {
        result.residual_mass += mass;
        continue;
      }
      for (const std::string& arc : out_arcs(m.graph, node)) {
        const double p = m.probability(node, snapshot, arc);
        if (p <= 0.0) continue;
        next[{m.graph.find_arc(arc)->codom, m.transform(arc, snapshot)}] += mass * p;
      }
    }
    alive = std::move(next);
  }
  for (const auto& [key, mass] : alive) {
    (void)key;
    result.residual_mass += mass;
  }
  return result;
}

/// Embeds a machine as a quantum automaton over the snapshot basis: at node
/// n the Kraus block of arc a maps |S> to sqrt(Pr(a|S,n)) |g_a(S)>.
/// Completeness additionally requires each transform to be injective on the
/// support of its arc's probabilities; two snapshots collapsing onto one
/// basis vector would leave off-diagonal mass in sum K*K. Machines that
/// violate this (or any machine invariant, or that have fewer than two
/// snapshots) are rejected.
inline AbstractQuantumAutomaton embed_as_quantum(const StochasticASM& m,
                                                 double tol = kDefaultTol) {
  const std::vector<Violation> violations = validate_asm(m, tol);
  if (!violations.empty()) {
    throw OperationError("machine is invalid: " + violations.front().message);
  }
  const std::size_t dim = m.snapshots.size();
  if (dim < 2) {
    throw OperationError("embedding needs at least two snapshots, got " +
                         std::to_string(dim));
  }

  for (const ControlGraph::Arc& a : m.graph.arcs) {
    std::map<std::string, std::string> image;  // g_a(S) -> S over the support
    for (const std::string& s : m.snapshots.labels()) {
      if (m.probability(a.dom, s, a.id) <= 0.0) continue;
      const std::string& target = m.transform(a.id, s);
      auto [it, inserted] = image.emplace(target, s);
      if (!inserted) {
        throw OperationError("transform for arc '" + a.id +
                             "' is not injective on its support: snapshots '" +
                             it->second + "' and '" + s + "' both map to '" + target +
                             "'");
      }
    }
  }

  AbstractQuantumAutomaton automaton;
  automaton.dim = dim;
  automaton.graph = m.graph;
  for (const std::string& node : m.graph.nodes) {
    if (m.graph.is_terminal(node)) continue;
    const std::vector<std::string> outgoing = out_arcs(m.graph, node);
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(outgoing.size());
    for (const std::string& arc : outgoing) {
      ComplexMatrix k(dim, dim);
      for (const std::string& s : m.snapshots.labels()) {
        const double p = m.probability(node, s, arc);
        if (p <= 0.0) continue;
        k(m.snapshots.index(m.transform(arc, s)), m.snapshots.index(s)) =
            Complex{std::sqrt(p), 0.0};
      }
      blocks.push_back(std::move(k));
    }
    automaton.ops.emplace(node,
                          QuantumOperation(KrausFamily(OutcomeSet(outgoing),
                                                       std::move(blocks), tol)));
  }
  return automaton;
}

}  // namespace qaut
