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

// Abstract quantum automata: control-graph machines whose non-terminal
// nodes carry quantum operations whose outcome set is the node's out-arc
// set. A run starts at the initial node, repeatedly samples an outcome of
// the current node's operation, applies the corresponding post-measurement
// effect, and follows the arc named by the outcome; it converges when it
// reaches a terminal node.
//
// Two run semantics are provided: seeded sampling of one trace, and
// exhaustive expansion of every positive-probability branch into a
// probability-weighted tree.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qaut/control_graph.hpp"
#include "qaut/errors.hpp"
#include "qaut/linalg.hpp"
#include "qaut/quantum.hpp"
#include "qaut/random.hpp"

namespace qaut {

struct AbstractQuantumAutomaton {
  std::size_t dim = 0;  // dimension of the carried quantum system, > 1
  ControlGraph graph;
  std::map<std::string, QuantumOperation> ops;  // one per non-terminal node
};

struct Configuration {
  std::string node;
  DensityOperator state;
};

/// Checks every automaton invariant: valid graph, dimension > 1, exactly
/// the non-terminal nodes carry operations, each operation has the
/// automaton's dimension and its outcome labels are exactly the arcs
/// leaving its node.
inline std::vector<Violation> validate_automaton(const AbstractQuantumAutomaton& a) {
  std::vector<Violation> out = validate(a.graph);
  if (a.dim < 2) {
    out.push_back({"bad-dimension", "",
                   "automaton dimension must be at least 2, got " + std::to_string(a.dim)});
  }
  for (const auto& [node, op] : a.ops) {
    if (!a.graph.has_node(node)) {
      out.push_back({"unknown-node", node,
                     "operation attached to unknown node '" + node + "'"});
      continue;
    }
    if (a.graph.is_terminal(node)) {
      out.push_back({"op-on-terminal", node,
                     "terminal node '" + node + "' must not carry an operation"});
      continue;
    }
    if (op.dim() != a.dim) {
      out.push_back({"op-dimension", node,
                     "operation at node '" + node + "' has dimension " +
                         std::to_string(op.dim()) + ", automaton has " +
                         std::to_string(a.dim)});
    }
    std::set<std::string> want;
    for (const std::string& arc : out_arcs(a.graph, node)) want.insert(arc);
    std::set<std::string> have(op.outcomes().labels().begin(),
                               op.outcomes().labels().end());
    for (const std::string& arc : want) {
      if (!have.count(arc)) {
        out.push_back({"missing-outcome", node,
                       "operation at node '" + node + "' lacks outcome for arc '" +
                           arc + "'"});
      }
    }
    for (const std::string& label : have) {
      if (!want.count(label)) {
        out.push_back({"extra-outcome", node,
                       "operation at node '" + node + "' has outcome '" + label +
                           "' that is no out-arc"});
      }
    }
  }
  for (const std::string& n : a.graph.nodes) {
    if (!a.graph.is_terminal(n) && !a.ops.count(n)) {
      out.push_back({"missing-op", n,
                     "non-terminal node '" + n + "' carries no operation"});
    }
  }
  return out;
}

struct StepBranch {
  std::string arc;
  double probability;
  Configuration next;
};

/// Expands one configuration: one branch per out-arc whose outcome
/// probability exceeds prob_floor, carrying the normalized post-measurement
/// state and the arc's target node. The probabilities over all out-arcs
/// (including suppressed ones) must sum to 1 within tolerance.
inline std::vector<StepBranch> step(const AbstractQuantumAutomaton& a,
                                    const Configuration& c,
                                    double prob_floor = kDefaultProbFloor) {
  if (a.graph.is_terminal(c.node)) {
    throw ShapeError("node '" + c.node + "' is terminal; nothing follows it");
  }
  auto it = a.ops.find(c.node);
  if (it == a.ops.end()) {
    throw ShapeError("node '" + c.node + "' carries no operation");
  }
  const QuantumOperation& op = it->second;
  if (op.dim() != c.state.dim()) {
    throw ShapeError("state dimension does not match the automaton");
  }

  double total = 0.0;
  std::vector<StepBranch> branches;
  for (const std::string& arc : out_arcs(a.graph, c.node)) {
    const double p = outcome_probability(op, arc, c.state);
    total += p;
    if (p > prob_floor) {
      branches.push_back(
          {arc, p, Configuration{a.graph.find_arc(arc)->codom,
                                 apply_effect(op, arc, c.state, prob_floor)}});
    }
  }
  if (std::abs(total - 1.0) > kDefaultTol) {
    throw NumericError("outcome distribution at node '" + c.node + "' sums to " +
                       std::to_string(total));
  }
  if (branches.empty()) {
    throw NumericError("no outcome above the probability floor at node '" + c.node + "'");
  }
  return branches;
}

struct QuantumRunTrace {
  struct Step {
    Configuration config;
    std::optional<std::string> arc;  // absent on the last entry
    double probability = 0.0;        // of the chosen arc; 0 when arc is absent
  };
  enum class Status { Converged, StepLimitExhausted };

  std::vector<Step> steps;
  Status status = Status::StepLimitExhausted;

  const Configuration& final_config() const { return steps.back().config; }
};

/// Samples one run. Transitions are drawn by inverse CDF over the step
/// distribution in arc declaration order, so a (seed, automaton, initial
/// state) triple always reproduces the same trace. The run converges when
/// it reaches a terminal node within max_steps transitions.
inline QuantumRunTrace sample_run(const AbstractQuantumAutomaton& a,
                                  const DensityOperator& rho0, std::uint64_t seed,
                                  std::size_t max_steps,
                                  double prob_floor = kDefaultProbFloor) {
  if (max_steps == 0) {
    throw std::invalid_argument("max_steps must be positive");
  }
  if (rho0.dim() != a.dim) {
    throw ShapeError("initial state dimension " + std::to_string(rho0.dim()) +
                     " does not match automaton dimension " + std::to_string(a.dim));
  }
  std::mt19937_64 rng(seed);
  QuantumRunTrace trace;
  Configuration current{a.graph.initial, rho0};
  for (std::size_t t = 0; t < max_steps; ++t) {
    if (a.graph.is_terminal(current.node)) break;
    std::vector<StepBranch> branches = step(a, current, prob_floor);
    const double u = detail::uniform01(rng);
    double cum = 0.0;
    std::size_t pick = branches.size() - 1;
    for (std::size_t i = 0; i < branches.size(); ++i) {
      cum += branches[i].probability;
      if (u < cum) {
        pick = i;
        break;
      }
    }
    trace.steps.push_back({current, branches[pick].arc, branches[pick].probability});
    current = branches[pick].next;
  }
  trace.steps.push_back({current, std::nullopt, 0.0});
  trace.status = a.graph.is_terminal(current.node) ? QuantumRunTrace::Status::Converged
                                                   : QuantumRunTrace::Status::StepLimitExhausted;
  return trace;
}

enum class BranchKind { Internal, Terminal, StepLimit, Pruned };

struct BranchNode {
  Configuration config;
  std::optional<std::string> arc_from_parent;  // absent at the root
  double step_probability = 1.0;
  double cumulative = 1.0;
  BranchKind kind = BranchKind::Internal;
  std::vector<BranchNode> children;

  bool is_leaf() const { return kind != BranchKind::Internal; }
};

/// The full probability-weighted tree of runs up to a depth bound.
/// Terminal leaves carry converged configurations; step-limit and pruned
/// leaves carry the mass that did not converge, summed in residual_mass.
struct BranchTree {
  BranchNode root;
  double residual_mass = 0.0;

  std::vector<const BranchNode*> leaves() const {
    std::vector<const BranchNode*> out;
    collect(root, out);
    return out;
  }

 private:
  static void collect(const BranchNode& n, std::vector<const BranchNode*>& out) {
    if (n.is_leaf()) {
      out.push_back(&n);
      return;
    }
    for (const BranchNode& c : n.children) collect(c, out);
  }
};

namespace detail {

inline void expand_branch(const AbstractQuantumAutomaton& a, BranchNode& node,
                          std::size_t depth, std::size_t max_steps, double prune_eps,
                          double prob_floor, double& residual) {
  if (a.graph.is_terminal(node.config.node)) {
    node.kind = BranchKind::Terminal;
    return;
  }
  if (node.arc_from_parent && node.cumulative <= prune_eps) {
    node.kind = BranchKind::Pruned;
    residual += node.cumulative;
    return;
  }
  if (depth == max_steps) {
    node.kind = BranchKind::StepLimit;
    residual += node.cumulative;
    return;
  }
  node.kind = BranchKind::Internal;
  for (StepBranch& b : step(a, node.config, prob_floor)) {
    BranchNode child{std::move(b.next), b.arc, b.probability,
                     node.cumulative * b.probability, BranchKind::Internal, {}};
    expand_branch(a, child, depth + 1, max_steps, prune_eps, prob_floor, residual);
    node.children.push_back(std::move(child));
  }
}

}  // namespace detail

/// Depth-first expansion of every branch with probability above prob_floor
/// at each step, up to max_steps transitions. Branches whose cumulative
/// probability drops to prune_eps or below become pruned leaves. The
/// default prune_eps of 0 enumerates exactly.
inline BranchTree enumerate(const AbstractQuantumAutomaton& a, const DensityOperator& rho0,
                            std::size_t max_steps, double prune_eps = 0.0,
                            double prob_floor = kDefaultProbFloor) {
  if (rho0.dim() != a.dim) {
    throw ShapeError("initial state dimension " + std::to_string(rho0.dim()) +
                     " does not match automaton dimension " + std::to_string(a.dim));
  }
  BranchTree tree{BranchNode{Configuration{a.graph.initial, rho0},
                             std::nullopt, 1.0, 1.0, BranchKind::Internal, {}},
                  0.0};
  detail::expand_branch(a, tree.root, 0, max_steps, prune_eps, prob_floor,
                        tree.residual_mass);
  return tree;
}

struct TerminalMixture {
  double mass = 0.0;
  DensityOperator state;
};

/// Aggregates a fully converged tree: per terminal node, the total mass
/// that converged there and the mass-weighted average of the leaf states.
/// Refuses trees whose residual (non-converged) mass exceeds tol.
inline std::map<std::string, TerminalMixture> final_mixture(const BranchTree& t,
                                                            double tol = kDefaultTol) {
  if (t.residual_mass > tol) {
    throw Error("tree has residual mass " + std::to_string(t.residual_mass) +
                "; runs did not all converge");
  }
  struct Accum {
    double mass = 0.0;
    std::optional<ComplexMatrix> sum;
  };
  std::map<std::string, Accum> acc;
  for (const BranchNode* leaf : t.leaves()) {
    if (leaf->kind != BranchKind::Terminal) continue;
    Accum& a = acc[leaf->config.node];
    a.mass += leaf->cumulative;
    const ComplexMatrix weighted =
        Complex{leaf->cumulative, 0.0} * leaf->config.state.matrix();
    a.sum = a.sum ? *a.sum + weighted : weighted;
  }
  std::map<std::string, TerminalMixture> out;
  for (auto& [node, a] : acc) {
    if (a.mass <= 0.0) continue;
    out.emplace(node, TerminalMixture{a.mass,
                                      make_density(Complex{1.0 / a.mass, 0.0} * *a.sum)});
  }
  return out;
}

/// Reduced state over the kept tensor factors. dims gives the dimension of
/// each factor (slow index first, matching kron), keep the strictly
/// ascending indices of the factors to retain.
inline DensityOperator partial_trace(const DensityOperator& rho,
                                     const std::vector<std::size_t>& dims,
                                     const std::vector<std::size_t>& keep) {
  std::size_t prod = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw ShapeError("factor dimensions must be positive");
    prod *= d;
  }
  if (prod != rho.dim()) {
    throw ShapeError("factor dimensions multiply to " + std::to_string(prod) +
                     ", state has dimension " + std::to_string(rho.dim()));
  }
  if (keep.empty()) {
    throw ShapeError("must keep at least one factor");
  }
  for (std::size_t k = 0; k < keep.size(); ++k) {
    if (keep[k] >= dims.size()) {
      throw ShapeError("kept factor index " + std::to_string(keep[k]) + " out of range");
    }
    if (k > 0 && keep[k] <= keep[k - 1]) {
      throw ShapeError("kept factor indices must be strictly ascending");
    }
  }

  std::size_t kept_dim = 1;
  for (std::size_t k : keep) kept_dim *= dims[k];

  const auto decompose = [&](std::size_t index, std::size_t& kept, std::size_t& traced) {
    kept = 0;
    traced = 0;
    for (std::size_t f = 0; f < dims.size(); ++f) {
      std::size_t radix = 1;
      for (std::size_t g = f + 1; g < dims.size(); ++g) radix *= dims[g];
      const std::size_t digit = (index / radix) % dims[f];
      if (std::find(keep.begin(), keep.end(), f) != keep.end()) {
        kept = kept * dims[f] + digit;
      } else {
        traced = traced * dims[f] + digit;
      }
    }
  };

  ComplexMatrix out(kept_dim, kept_dim);
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    std::size_t ik, it;
    decompose(i, ik, it);
    for (std::size_t j = 0; j < rho.dim(); ++j) {
      std::size_t jk, jt;
      decompose(j, jk, jt);
      if (it == jt) {
        out(ik, jk) += rho.matrix()(i, j);
      }
    }
  }
  return make_density(out);
}

}  // namespace qaut
